#pragma once

#include <Eigen/Dense>
#include <vector>

#include "floq/model.hpp"
#include "floq/propagate.hpp"

namespace floq {

// Quasienergy spacing below which two Floquet branches are reported as
// numerically degenerate.
inline constexpr double degenerate_gap_eV = 1e-10;

struct QuasienergyPoint {
  double photon_energy_eV = 0.0;
  // Quasienergies in eV, folded to [-w/2, +w/2), in eigensolver order.
  std::vector<double> quasienergies_eV;
  // Floquet modes at t = 0 (columns, normalized).
  Eigen::MatrixXcd modes_t0;
  // overlaps(j, k) = |<level j | mode k>|^2.
  Eigen::MatrixXd overlaps;
  // branch_labels[k]: index of the branch mode k belongs to after tracking
  // across a scan (scan order) or by dominant bare level (single points).
  std::vector<int> branch_labels;
  bool near_degenerate = false;
};

// One-period propagator U(T, 0), T = 2*pi/photon_energy.
Eigen::MatrixXcd monodromy(const LadderSystem& system, const DriveSpec& drive,
                           const PropagationSettings& settings = {});

// Eigendecomposition of a monodromy matrix: lambda_k = exp(-i eps_k T) gives
// eps_k = -arg(lambda_k)/T folded to [-w/2, +w/2).  Eigenvector columns are
// polished to an orthonormal set when the solver leaves a defect above 1e-9.
QuasienergyPoint quasienergies(const Eigen::MatrixXcd& monodromy_matrix,
                               double photon_energy_eV);

// Fold an energy to the first Floquet zone [-w/2, +w/2).
double fold_quasienergy(double energy_eV, double photon_energy_eV);

// Distance between two quasienergies on the fold circle of size w.
double quasienergy_gap(double eps_a_eV, double eps_b_eV, double photon_energy_eV);

struct AveragedTransition {
  double value = 0.0;
  bool near_degenerate = false;
  // Per-mode pieces of the average: value = sum_k weight_k * time_average_k.
  std::vector<double> mode_weights;        // |<mode_k(0)|from>|^2
  std::vector<double> mode_time_averages;  // (1/T) int |<to|mode_k(t)>|^2 dt
  std::vector<double> quasienergies_eV;
};

// Time-averaged probability of finding the system in |to> when prepared in
// |from>, from the Floquet decomposition:
//   Pbar = sum_k |<mode_k(t0)|from>|^2 * (1/T) int_0^T |<to|mode_k(t)>|^2 dt,
// with the period integral sampled at `samples_per_period` points
// (trapezoidal; exact periodicity makes this the mean over one period).
// The mode reference time t0 is the carrier node -phase/w (t0 = 0 for the
// default sine carrier), i.e. the state is prepared when the field crosses
// zero.  This makes Pbar invariant under carrier-phase changes; preparing at
// a fixed absolute time instead would tie the result to the bookkeeping
// convention for the phase (the startup transient differs between preparing
// at a field node and at a crest).
AveragedTransition averaged_transition_probability_detail(
    const LadderSystem& system, const DriveSpec& drive, int from, int to,
    int samples_per_period = 200, const PropagationSettings& settings = {});

double averaged_transition_probability(const LadderSystem& system,
                                       const DriveSpec& drive, int from, int to,
                                       int samples_per_period = 200,
                                       const PropagationSettings& settings = {});

// Quasienergies on a grid of photon energies with branch tracking by maximal
// overlap against the previous grid point (ties below 1e-9 broken by
// ascending quasienergy).  Branch j starts at the branch dominated by bare
// level j at the first grid point.
std::vector<QuasienergyPoint> quasienergy_scan(const LadderSystem& system,
                                               double amplitude_scale,
                                               const std::vector<double>& grid_eV,
                                               int threads = 0,
                                               const PropagationSettings& settings = {});

struct Resonance {
  double center_eV = 0.0;
  double height = 0.0;   // |convolved - local background| at the center
  double fwhm_eV = 0.0;  // full width at half height of the same residual
  int order = 0;         // round(omega_0 / center)
};

struct SpectrumResult {
  std::vector<double> photon_energies_eV;
  std::vector<double> raw;        // Pbar(g -> 1) per grid point
  std::vector<double> convolved;  // Gaussian-convolved (set equal to raw when fwhm = 0)
  std::vector<Resonance> resonances;
};

// Pbar(g -> 1) over a photon-energy grid plus Gaussian convolution
// (instrument response) of the given FWHM and resonance detection.
// Grid must be sorted, strictly increasing, nonempty.
SpectrumResult spectrum_scan(const LadderSystem& system, double amplitude_scale,
                             const std::vector<double>& grid_eV,
                             double convolution_fwhm_eV, int threads = 0,
                             const PropagationSettings& settings = {});

// Gaussian convolution on a (possibly non-uniform) sorted grid: kernel
// truncated at +-4 sigma and renormalized per point, trapezoidal weights.
std::vector<double> gaussian_convolve(const std::vector<double>& x,
                                      const std::vector<double>& y,
                                      double fwhm);

// Feature detection on a baseline-dominated curve.  Two passes: a rough
// windowed median (weighted by covered grid length, so locally refined grid
// regions do not dominate) flags candidate features, then the background is
// re-estimated per point as a weighted least-squares line through the
// neighbors with candidate neighborhoods excluded.  Local maxima of the
// residual magnitude above max(abs_floor, rel_floor * max residual) survive
// non-maximum suppression within 0.75 * feature_width, get quadratic vertex
// refinement, and FWHM from half-height crossings.  Suppressed even-photon
// features appear as dips; detection on the magnitude catches both signs.
std::vector<Resonance> detect_resonances(const std::vector<double>& x,
                                         const std::vector<double>& y,
                                         double feature_width_eV,
                                         double transition_energy_eV,
                                         double rel_floor = 0.03,
                                         double abs_floor = 1e-8);

struct GapMinimum {
  double photon_energy_eV = 0.0;
  double gap_eV = 0.0;
};

// Golden-section minimization of the branch gap between the branches
// dominated by bare levels a and b over [lo, hi]; locates avoided-crossing
// centers (and symmetry-protected exact crossings, where the gap reaches
// zero within tolerance).
GapMinimum locate_gap_minimum(const LadderSystem& system, double amplitude_scale,
                              int level_a, int level_b, double lo_eV, double hi_eV,
                              double xtol_eV = 1e-7,
                              const PropagationSettings& settings = {});

// Scan grid builder: uniform coarse grid plus staggered fine windows around
// every branch-gap minimum below gap_window_threshold_eV, so that narrow
// multi-photon features are resolved well enough for convolution to preserve
// their area.
std::vector<double> make_scan_grid(const LadderSystem& system, double amplitude_scale,
                                   double start_eV, double stop_eV, double coarse_step_eV,
                                   const PropagationSettings& settings = {});

} // namespace floq
