#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "floq/constants.hpp"
#include "floq/params.hpp"

// Reference values in this file were frozen from an independent 50-digit
// arbitrary-precision evaluation of the same closed-form expressions
// (docs/oracles/closed_form_reference.py), not from the implementation.

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

} // namespace

TEST_SUITE("units") {

using namespace floq;

TEST_CASE("physical constants match their exact defined values") {
  // SI defining constants (2019 redefinition): exact by definition.
  CHECK(constants::elementary_charge_C == 1.602176634e-19);
  CHECK(constants::planck_J_s == 6.62607015e-34);
  CHECK(constants::speed_of_light_m_s == 299792458.0);
  CHECK(constants::vacuum_permittivity_F_m == 8.8541878128e-12);
  CHECK(rel_err(constants::pi, 3.14159265358979323846) < 1e-15);
}

TEST_CASE("derived hbar values agree with high-precision reference") {
  CHECK(rel_err(constants::hbar_eV_s, 6.5821195695090657e-16) < 1e-15);
  CHECK(rel_err(constants::hbar_J_s,
                constants::planck_J_s / (2.0 * constants::pi)) < 1e-15);
  // One internal time unit is hbar / (1 eV) seconds.
  CHECK(constants::seconds_per_internal_time == constants::hbar_eV_s);
}

TEST_CASE("energy/frequency conversions match reference and invert exactly") {
  CHECK(rel_err(units::energy_eV_to_angular_frequency_rad_s(1.0),
                1.5192674478786262e15) < 1e-15);
  // nu = E / h in ordinary frequency.
  CHECK(rel_err(units::energy_eV_to_ordinary_frequency_Hz(2.61),
                2.61 * constants::elementary_charge_C / constants::planck_J_s) <
        1e-15);

  for (double e : {1e-6, 0.87, 2.61, 1000.0}) {
    CHECK(rel_err(units::angular_frequency_rad_s_to_energy_eV(
                      units::energy_eV_to_angular_frequency_rad_s(e)),
                  e) < 1e-14);
    CHECK(rel_err(units::ordinary_frequency_Hz_to_energy_eV(
                      units::energy_eV_to_ordinary_frequency_Hz(e)),
                  e) < 1e-14);
    CHECK(rel_err(units::coupling_eV_to_rad_s(units::coupling_rad_s_to_eV(e)),
                  e) < 1e-14);
  }
  for (double t : {1e-15, 1e-13, 2.5e-10}) {
    CHECK(rel_err(units::internal_time_to_seconds(units::seconds_to_internal_time(t)),
                  t) < 1e-14);
  }
}

TEST_CASE("coupling conversion is consistent with angular-frequency conversion") {
  // A coupling quoted in rad/s is an angular frequency; in hbar = 1 units its
  // energy is b * hbar.
  const double b = 8.4e13;
  CHECK(rel_err(units::coupling_rad_s_to_eV(b), b * constants::hbar_eV_s) < 1e-15);
  CHECK(rel_err(units::coupling_rad_s_to_eV(b),
                units::angular_frequency_rad_s_to_energy_eV(b)) < 1e-15);
}

TEST_CASE("dimensionless phases agree between SI and internal units") {
  // The accumulated phase b * t is dimensionless, so computing it from SI
  // inputs or from internal-unit inputs must give the same number.
  const double b_rad_s = 8.4e13;
  const double t_s = 1.0e-13;
  const double phase_si = b_rad_s * t_s;
  const double phase_internal =
      units::coupling_rad_s_to_eV(b_rad_s) * units::seconds_to_internal_time(t_s);
  CHECK(rel_err(phase_internal, phase_si) < 1e-10);

  // Same for a free-evolution phase E * t / hbar.
  const double energy_eV = 2.61;
  const double phase_si2 = units::energy_eV_to_angular_frequency_rad_s(energy_eV) * t_s;
  const double phase_internal2 = energy_eV * units::seconds_to_internal_time(t_s);
  CHECK(rel_err(phase_internal2, phase_si2) < 1e-10);
}

TEST_CASE("dipole from lifetime matches reference values") {
  CHECK(rel_err(params::dipole_from_lifetime_e_nm(250e-12, 2.61, 2.4),
                0.49691365899952198) < 1e-12);
  CHECK(rel_err(params::dipole_from_lifetime_e_nm(440e-12, 2.61, 2.4),
                0.37456276366000551) < 1e-12);
}

TEST_CASE("lifetime from dipole matches reference and round-trips") {
  CHECK(rel_err(params::lifetime_from_dipole_s(0.5, 2.61, 2.4),
                2.4692318450029321e-10) < 1e-12);

  for (double tau : {100e-12, 250e-12, 440e-12}) {
    const double m = params::dipole_from_lifetime_e_nm(tau, 2.61, 2.4);
    CHECK(rel_err(params::lifetime_from_dipole_s(m, 2.61, 2.4), tau) < 1e-9);
  }
  for (double m : {0.1, 0.5, 2.0}) {
    const double tau = params::lifetime_from_dipole_s(m, 2.68, 1.7);
    CHECK(rel_err(params::dipole_from_lifetime_e_nm(tau, 2.68, 1.7), m) < 1e-9);
  }
}

TEST_CASE("dipole/lifetime scaling relations") {
  // |M| ~ 1/sqrt(tau): quartering the lifetime doubles the dipole.
  const double m1 = params::dipole_from_lifetime_e_nm(400e-12, 2.61, 2.4);
  const double m2 = params::dipole_from_lifetime_e_nm(100e-12, 2.61, 2.4);
  CHECK(rel_err(m2, 2.0 * m1) < 1e-12);
  // |M| ~ E^{-3/2} at fixed lifetime.
  const double ma = params::dipole_from_lifetime_e_nm(250e-12, 1.0, 2.4);
  const double mb = params::dipole_from_lifetime_e_nm(250e-12, 4.0, 2.4);
  CHECK(rel_err(ma / mb, 8.0) < 1e-12);
}

TEST_CASE("peak field from averaged intensity matches reference") {
  CHECK(rel_err(params::field_from_avg_intensity_V_m(2.83e9, 80e6, 100e-15),
                516271921.49032319) < 1e-12);
  CHECK(params::field_from_avg_intensity_V_m(0.0, 80e6, 100e-15) == 0.0);
  // E0 ~ sqrt(I_avg).
  const double f1 = params::field_from_avg_intensity_V_m(1e9, 80e6, 100e-15);
  const double f4 = params::field_from_avg_intensity_V_m(4e9, 80e6, 100e-15);
  CHECK(rel_err(f4, 2.0 * f1) < 1e-12);
}

TEST_CASE("drive coupling from dipole and field matches reference") {
  CHECK(rel_err(params::rabi_coupling_rad_s(0.5, 2.2e8), 83559709633324.441) <
        1e-12);
  CHECK(params::rabi_coupling_rad_s(0.0, 2.2e8) == 0.0);
  // Bilinear in both arguments.
  CHECK(rel_err(params::rabi_coupling_rad_s(1.0, 2.2e8),
                2.0 * params::rabi_coupling_rad_s(0.5, 2.2e8)) < 1e-14);
  CHECK(rel_err(params::rabi_coupling_rad_s(0.5, 4.4e8),
                2.0 * params::rabi_coupling_rad_s(0.5, 2.2e8)) < 1e-14);
}

TEST_CASE("classical polarization ratio matches reference") {
  CHECK(rel_err(params::classical_polarization_ratio(1.3e-11, 5.3e-19, 2.2e8),
                0.11149228130360206) < 1e-12);
}

TEST_CASE("parameter derivations reject non-physical input") {
  using params::classical_polarization_ratio;
  using params::dipole_from_lifetime_e_nm;
  using params::field_from_avg_intensity_V_m;
  using params::lifetime_from_dipole_s;
  using params::rabi_coupling_rad_s;

  CHECK_THROWS_AS(dipole_from_lifetime_e_nm(0.0, 2.61, 2.4), std::domain_error);
  CHECK_THROWS_AS(dipole_from_lifetime_e_nm(-1e-12, 2.61, 2.4), std::domain_error);
  CHECK_THROWS_AS(dipole_from_lifetime_e_nm(250e-12, 0.0, 2.4), std::domain_error);
  CHECK_THROWS_AS(dipole_from_lifetime_e_nm(250e-12, 2.61, 0.5), std::domain_error);
  CHECK_THROWS_AS(lifetime_from_dipole_s(0.0, 2.61, 2.4), std::domain_error);
  CHECK_THROWS_AS(field_from_avg_intensity_V_m(-1.0, 80e6, 1e-13), std::domain_error);
  CHECK_THROWS_AS(field_from_avg_intensity_V_m(1e9, 0.0, 1e-13), std::domain_error);
  CHECK_THROWS_AS(field_from_avg_intensity_V_m(1e9, 80e6, 0.0), std::domain_error);
  CHECK_THROWS_AS(rabi_coupling_rad_s(-0.5, 2.2e8), std::domain_error);
  CHECK_THROWS_AS(rabi_coupling_rad_s(0.5, -1.0), std::domain_error);
  CHECK_THROWS_AS(classical_polarization_ratio(0.0, 5.3e-19, 2.2e8),
                  std::domain_error);
  CHECK_THROWS_AS(classical_polarization_ratio(1.3e-11, 5.3e-19, 0.0),
                  std::domain_error);
}

} // TEST_SUITE
