#pragma once

#include <Eigen/Dense>
#include <vector>

namespace floq {

enum class Parity { Even, Odd };

// Few-level ladder with nearest-neighbor couplings driven by a classical
// field.  Level k couples only to k+-1; the coupling enters the Hamiltonian
// as the off-diagonal energy 2*b_k*hbar*sin(w t).  Parity labels must
// alternate along the ladder; this is what suppresses even-photon
// transitions between levels of opposite parity.
struct LadderSystem {
  std::vector<double> level_energies_eV;  // strictly increasing
  std::vector<Parity> parities;           // alternating, size N
  std::vector<double> couplings_rad_s;    // nearest-neighbor b_k, size N-1

  int level_count() const { return static_cast<int>(level_energies_eV.size()); }

  // Coupling b_k expressed as an energy (eV).
  double coupling_energy_eV(int k) const;

  // Energy of the first excitation, E_1 - E_0 (the "omega_0" of the ladder).
  double transition_energy_eV() const;

  // Upper bound on the infinity norm of H(t) (eV) over a full drive cycle at
  // the given amplitude scale; used for integrator step caps.
  double hamiltonian_norm_bound_eV(double amplitude_scale) const;

  // Midpoint of the level spectrum; propagators are computed in a frame
  // shifted by this energy to reduce phase-accumulation error, and the
  // global phase is restored exactly afterwards.
  double spectral_center_eV() const;

  // Bound on the spectral radius of the shifted Hamiltonian (eV).
  double centered_norm_bound_eV(double amplitude_scale) const;

  // Throws std::invalid_argument / std::domain_error on structural problems.
  void validate() const;
};

enum class DriveKind { Monochromatic, GaussianPulse };

struct DriveSpec {
  DriveKind kind = DriveKind::Monochromatic;
  double photon_energy_eV = 0.0;
  double amplitude_scale = 1.0;   // monochromatic drives
  double duration_fwhm_s = 0.0;   // pulses: intensity-envelope FWHM
  double peak_scale = 1.0;        // pulses
  double carrier_phase_rad = 0.0;

  // Carrier period 2*pi/photon_energy in internal time units.
  double period_internal() const;

  void validate() const;
};

// H(t) for a monochromatic drive, in eV with hbar = 1 and t in internal time
// units.  Diagonal: level energies.  Off-diagonals (k, k+1):
// 2 * b_k * scale * sin(photon_energy * t + carrier_phase).
// Throws std::invalid_argument for pulse drives; pulses are handled by the
// pulsed module, which owns the envelope.
Eigen::MatrixXcd hamiltonian_at(const LadderSystem& system, const DriveSpec& drive,
                                double t_internal);

// Bundled canonical three-level parameter set (quantum-dot-like ladder):
// E = {0, 2.61, 2.68} eV, parities even/odd/even, b = 8.4e13 rad/s,
// b'/b = 0.44.
LadderSystem canonical_system();

} // namespace floq
