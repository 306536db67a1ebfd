#include "floq/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "floq/constants.hpp"

namespace floq {

double LadderSystem::coupling_energy_eV(int k) const {
  return units::coupling_rad_s_to_eV(couplings_rad_s.at(static_cast<std::size_t>(k)));
}

double LadderSystem::transition_energy_eV() const {
  return level_energies_eV.at(1) - level_energies_eV.at(0);
}

double LadderSystem::hamiltonian_norm_bound_eV(double amplitude_scale) const {
  // Row-sum (infinity-norm) bound with |sin| <= 1.
  const int n = level_count();
  double bound = 0.0;
  for (int k = 0; k < n; ++k) {
    double row = std::abs(level_energies_eV[static_cast<std::size_t>(k)]);
    if (k > 0) row += 2.0 * amplitude_scale * coupling_energy_eV(k - 1);
    if (k + 1 < n) row += 2.0 * amplitude_scale * coupling_energy_eV(k);
    bound = std::max(bound, row);
  }
  return bound;
}

double LadderSystem::spectral_center_eV() const {
  return 0.5 * (level_energies_eV.front() + level_energies_eV.back());
}

double LadderSystem::centered_norm_bound_eV(double amplitude_scale) const {
  const int n = level_count();
  const double center = spectral_center_eV();
  double bound = 0.0;
  for (int k = 0; k < n; ++k) {
    double row = std::abs(level_energies_eV[static_cast<std::size_t>(k)] - center);
    if (k > 0) row += 2.0 * amplitude_scale * coupling_energy_eV(k - 1);
    if (k + 1 < n) row += 2.0 * amplitude_scale * coupling_energy_eV(k);
    bound = std::max(bound, row);
  }
  return bound;
}

void LadderSystem::validate() const {
  const std::size_t n = level_energies_eV.size();
  if (n < 2) {
    throw std::invalid_argument("LadderSystem needs at least 2 levels");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(level_energies_eV[k])) {
      throw std::invalid_argument("LadderSystem level energy " + std::to_string(k) +
                                  " is not finite");
    }
    if (k > 0 && !(level_energies_eV[k] > level_energies_eV[k - 1])) {
      throw std::invalid_argument("LadderSystem level energies must be strictly increasing");
    }
  }
  if (parities.size() != n) {
    throw std::invalid_argument("LadderSystem parity list must match level count");
  }
  for (std::size_t k = 1; k < n; ++k) {
    if (parities[k] == parities[k - 1]) {
      throw std::invalid_argument(
          "LadderSystem parities must alternate (dipole coupling connects "
          "opposite parities only)");
    }
  }
  if (couplings_rad_s.size() != n - 1) {
    throw std::invalid_argument("LadderSystem needs exactly one coupling per "
                                "adjacent level pair");
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (!(couplings_rad_s[k] >= 0.0) || !std::isfinite(couplings_rad_s[k])) {
      throw std::invalid_argument("LadderSystem coupling " + std::to_string(k) +
                                  " must be nonnegative and finite");
    }
  }
}

double DriveSpec::period_internal() const {
  return 2.0 * constants::pi / photon_energy_eV;
}

void DriveSpec::validate() const {
  if (!(photon_energy_eV > 0.0) || !std::isfinite(photon_energy_eV)) {
    throw std::invalid_argument("DriveSpec photon_energy_eV must be positive and finite");
  }
  if (!(amplitude_scale >= 0.0) || !std::isfinite(amplitude_scale)) {
    throw std::invalid_argument("DriveSpec amplitude_scale must be nonnegative and finite");
  }
  if (!std::isfinite(carrier_phase_rad)) {
    throw std::invalid_argument("DriveSpec carrier_phase_rad must be finite");
  }
  if (kind == DriveKind::GaussianPulse) {
    if (!(duration_fwhm_s > 0.0) || !std::isfinite(duration_fwhm_s)) {
      throw std::invalid_argument("DriveSpec duration_fwhm_s must be positive for pulses");
    }
    if (!(peak_scale >= 0.0) || !std::isfinite(peak_scale)) {
      throw std::invalid_argument("DriveSpec peak_scale must be nonnegative and finite");
    }
  }
}

Eigen::MatrixXcd hamiltonian_at(const LadderSystem& system, const DriveSpec& drive,
                                double t_internal) {
  system.validate();
  drive.validate();
  if (drive.kind != DriveKind::Monochromatic) {
    throw std::invalid_argument(
        "hamiltonian_at handles monochromatic drives only; pulse envelopes "
        "are owned by the pulsed module");
  }
  if (!std::isfinite(t_internal)) {
    throw std::invalid_argument("hamiltonian_at requires finite time");
  }
  const int n = system.level_count();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  const double carrier =
      std::sin(drive.photon_energy_eV * t_internal + drive.carrier_phase_rad);
  for (int k = 0; k < n; ++k) {
    h(k, k) = system.level_energies_eV[static_cast<std::size_t>(k)];
    if (k + 1 < n) {
      const double off =
          2.0 * system.coupling_energy_eV(k) * drive.amplitude_scale * carrier;
      h(k, k + 1) = off;
      h(k + 1, k) = off;
    }
  }
  return h;
}

LadderSystem canonical_system() {
  LadderSystem system;
  system.level_energies_eV = {0.0, 2.61, 2.68};
  system.parities = {Parity::Even, Parity::Odd, Parity::Even};
  const double b = 8.4e13;
  system.couplings_rad_s = {b, 0.44 * b};
  return system;
}

} // namespace floq
