#include "floq/params.hpp"

#include <cmath>
#include <stdexcept>

#include "floq/constants.hpp"

namespace floq::params {

namespace {

constexpr double e_nm_to_C_m(double m_e_nm) {
  return m_e_nm * constants::elementary_charge_C * 1e-9;
}

constexpr double C_m_to_e_nm(double m_C_m) {
  return m_C_m / (constants::elementary_charge_C * 1e-9);
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::domain_error(std::string(name) + " must be positive and finite");
  }
}

// Shared core of the lifetime <-> dipole relation:
//   |M|^2 * tau = 3 eps0 c^3 hbar / (8 pi^2 nu0^3 n)   (SI, M in C*m)
// with nu0 = E / h the ordinary transition frequency.
double dipole_sq_times_lifetime_SI(double transition_energy_eV,
                                   double refractive_index) {
  const double nu0 = units::energy_eV_to_ordinary_frequency_Hz(transition_energy_eV);
  const double c = constants::speed_of_light_m_s;
  const double numerator = 3.0 * constants::vacuum_permittivity_F_m * c * c * c *
                           constants::hbar_J_s;
  const double denominator = 8.0 * constants::pi * constants::pi * nu0 * nu0 * nu0 *
                             refractive_index;
  return numerator / denominator;
}

} // namespace

double dipole_from_lifetime_e_nm(double lifetime_s, double transition_energy_eV,
                                 double refractive_index) {
  require_positive(lifetime_s, "lifetime_s");
  require_positive(transition_energy_eV, "transition_energy_eV");
  if (!(refractive_index >= 1.0) || !std::isfinite(refractive_index)) {
    throw std::domain_error("refractive_index must be >= 1 and finite");
  }
  const double m_sq = dipole_sq_times_lifetime_SI(transition_energy_eV,
                                                  refractive_index) /
                      lifetime_s;
  return C_m_to_e_nm(std::sqrt(m_sq));
}

double lifetime_from_dipole_s(double dipole_e_nm, double transition_energy_eV,
                              double refractive_index) {
  require_positive(dipole_e_nm, "dipole_e_nm");
  require_positive(transition_energy_eV, "transition_energy_eV");
  if (!(refractive_index >= 1.0) || !std::isfinite(refractive_index)) {
    throw std::domain_error("refractive_index must be >= 1 and finite");
  }
  const double m = e_nm_to_C_m(dipole_e_nm);
  return dipole_sq_times_lifetime_SI(transition_energy_eV, refractive_index) /
         (m * m);
}

double field_from_avg_intensity_V_m(double avg_intensity_W_m2, double rep_rate_Hz,
                                    double duration_s) {
  if (avg_intensity_W_m2 < 0.0 || !std::isfinite(avg_intensity_W_m2)) {
    throw std::domain_error("avg_intensity_W_m2 must be nonnegative and finite");
  }
  require_positive(rep_rate_Hz, "rep_rate_Hz");
  require_positive(duration_s, "duration_s");
  if (avg_intensity_W_m2 == 0.0) return 0.0;
  const double duty_power = constants::speed_of_light_m_s *
                            constants::vacuum_permittivity_F_m * rep_rate_Hz *
                            duration_s;
  return std::sqrt(2.0 * avg_intensity_W_m2 / duty_power);
}

double rabi_coupling_rad_s(double dipole_e_nm, double field_V_m) {
  if (dipole_e_nm < 0.0 || !std::isfinite(dipole_e_nm)) {
    throw std::domain_error("dipole_e_nm must be nonnegative and finite");
  }
  if (field_V_m < 0.0 || !std::isfinite(field_V_m)) {
    throw std::domain_error("field_V_m must be nonnegative and finite");
  }
  return e_nm_to_C_m(dipole_e_nm) * field_V_m / (2.0 * constants::hbar_J_s);
}

double classical_polarization_ratio(double chi2_m_V, double chi3_m2_V2,
                                    double field_V_m) {
  require_positive(chi2_m_V, "chi2_m_V");
  require_positive(chi3_m2_V2, "chi3_m2_V2");
  require_positive(field_V_m, "field_V_m");
  return chi2_m_V / (chi3_m2_V2 * field_V_m);
}

} // namespace floq::params
