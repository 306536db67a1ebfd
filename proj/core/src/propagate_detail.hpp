#pragma once

// Internal helpers shared between the monochromatic propagator and the
// Floquet layer.  Not installed; include only from core sources.

#include <Eigen/Dense>
#include <vector>

#include "floq/model.hpp"
#include "floq/propagate.hpp"

namespace floq::detail {

// Monochromatic H(t) writer in the spectrally centered frame
// H_c(t) = H(t) - center * I.  Centering shrinks the spectral radius seen by
// the integrator (less phase accumulation error per step); the dropped
// global phase exp(-i*center*(t-t0)) is restored exactly by the callers.
struct MonoHamiltonian {
  Eigen::VectorXd diag_centered_eV;
  std::vector<double> off_eV;  // 2 * b_k * scale
  double omega_eV = 0.0;
  double phase_rad = 0.0;
  double center_eV = 0.0;

  static MonoHamiltonian make(const LadderSystem& system, const DriveSpec& drive);

  void write(double t, Eigen::MatrixXcd& h) const;
};

// Step count for [t0, t1] honoring the caps and the drift budget; the count
// is rounded up to a multiple of `multiple_of` (>= 1).
long step_count(const LadderSystem& system, const DriveSpec& drive,
                double t0, double t1, const PropagationSettings& settings,
                long multiple_of);

// Full propagators at n_samples+1 uniformly spaced times spanning [t0, t1]
// (both endpoints included), each phase-restored to the lab frame.  The
// final propagator is checked for unitarity against settings.norm_tolerance.
std::vector<Eigen::MatrixXcd> sampled_propagators(const LadderSystem& system,
                                                  const DriveSpec& drive,
                                                  double t0, double t1,
                                                  int n_samples,
                                                  const PropagationSettings& settings);

} // namespace floq::detail
