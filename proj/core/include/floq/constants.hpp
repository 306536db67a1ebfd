#pragma once

// Physical constants and unit conversions.
//
// Internal unit system everywhere in this library: hbar = 1, energies in eV,
// time in units of hbar/eV (one internal time unit = 6.582...e-16 s).  In
// these units an energy E in eV doubles as an angular frequency: a drive with
// photon energy E has period 2*pi/E internal time units.

namespace floq::constants {

// SI defining constants (2019 redefinition, exact).
inline constexpr double elementary_charge_C = 1.602176634e-19;
inline constexpr double planck_J_s = 6.62607015e-34;
inline constexpr double speed_of_light_m_s = 299792458.0;

// CODATA 2018.
inline constexpr double vacuum_permittivity_F_m = 8.8541878128e-12;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// Derived, exact in terms of the defining constants.
inline constexpr double planck_eV_s = planck_J_s / elementary_charge_C;           // 4.1356676969e-15
inline constexpr double hbar_J_s = planck_J_s / (2.0 * pi);                       // 1.0545718176e-34
inline constexpr double hbar_eV_s = planck_J_s / (2.0 * pi * elementary_charge_C); // 6.5821195695e-16

// One internal time unit expressed in seconds.
inline constexpr double seconds_per_internal_time = hbar_eV_s;

} // namespace floq::constants

namespace floq::units {

inline constexpr double energy_eV_to_angular_frequency_rad_s(double energy_eV) {
  return energy_eV / constants::hbar_eV_s;
}

inline constexpr double angular_frequency_rad_s_to_energy_eV(double omega_rad_s) {
  return omega_rad_s * constants::hbar_eV_s;
}

inline constexpr double energy_eV_to_ordinary_frequency_Hz(double energy_eV) {
  return energy_eV / constants::planck_eV_s;
}

inline constexpr double ordinary_frequency_Hz_to_energy_eV(double nu_Hz) {
  return nu_Hz * constants::planck_eV_s;
}

inline constexpr double seconds_to_internal_time(double t_s) {
  return t_s / constants::seconds_per_internal_time;
}

inline constexpr double internal_time_to_seconds(double t_internal) {
  return t_internal * constants::seconds_per_internal_time;
}

// A coupling quoted as an angular frequency b (rad/s) enters the Hamiltonian
// as the energy b*hbar (eV).
inline constexpr double coupling_rad_s_to_eV(double b_rad_s) {
  return b_rad_s * constants::hbar_eV_s;
}

inline constexpr double coupling_eV_to_rad_s(double b_eV) {
  return b_eV / constants::hbar_eV_s;
}

} // namespace floq::units
