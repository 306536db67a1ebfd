#pragma once

// Derivations of model parameters from measurable quantities.
// All functions validate their domains and throw std::domain_error on
// non-physical input.

namespace floq::params {

// Transition dipole moment (in e*nm) from a radiative lifetime tau (s), the
// transition energy (eV), and the refractive index of the host medium:
//   |M| = sqrt(3 eps0 c^3 hbar / (tau * 8 pi^2 * nu0^3 * n)),
// with nu0 = E/h the ordinary (not angular) transition frequency.
double dipole_from_lifetime_e_nm(double lifetime_s, double transition_energy_eV,
                                 double refractive_index);

// Inverse of dipole_from_lifetime_e_nm: radiative lifetime (s) implied by a
// dipole moment (e*nm) at the given transition energy and refractive index.
double lifetime_from_dipole_s(double dipole_e_nm, double transition_energy_eV,
                              double refractive_index);

// Peak electric field amplitude (V/m) of a pulse train from the time-averaged
// intensity (W/m^2), repetition rate (Hz), and pulse duration (s):
//   E0 = sqrt(2 I_avg / (c eps0 * rep_rate * duration)).
// Zero average intensity is allowed and yields zero field.
double field_from_avg_intensity_V_m(double avg_intensity_W_m2, double rep_rate_Hz,
                                    double duration_s);

// Drive coupling b (rad/s) from a dipole moment (e*nm) and a field amplitude
// (V/m): b = M * E0 / (2 hbar).
double rabi_coupling_rad_s(double dipole_e_nm, double field_V_m);

// Dimensionless ratio chi2 / (chi3 * E) comparing second- and third-order
// classical polarization responses at field amplitude E (V/m).
double classical_polarization_ratio(double chi2_m_V, double chi3_m2_V2,
                                    double field_V_m);

} // namespace floq::params
