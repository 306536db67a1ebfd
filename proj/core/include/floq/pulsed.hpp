#pragma once

#include <vector>

#include "floq/model.hpp"
#include "floq/propagate.hpp"

namespace floq {

// Minimum half-window, in units of the intensity FWHM, for which the field
// envelope has fallen below 1e-6 at the window edge:
//   exp(-2 ln2 m^2) <= 1e-6  =>  m >= sqrt(6 ln10 / (2 ln2)) = 3.1565...
inline constexpr double min_pulse_window_fwhm_multiple = 3.157;

struct PulseResult {
  double photon_energy_eV = 0.0;
  double peak_scale = 0.0;
  double intensity_proxy = 0.0;              // peak_scale^2
  double fluence_proxy = 0.0;                // integral of the squared field envelope (internal time)
  std::vector<double> final_populations;     // |<k|psi(t_end)>|^2
  double norm_drift = 0.0;
};

// Propagate the ground state through one Gaussian pulse (intensity FWHM
// `duration_fwhm_s`, peak amplitude scale `peak_scale`) over the window
// t in [-m, +m] * FWHM and report final level populations.
PulseResult pulse_excitation(const LadderSystem& system, double photon_energy_eV,
                             double peak_scale, double duration_fwhm_s,
                             double window_fwhm_multiple = 4.0,
                             const PropagationSettings& settings = {});

struct PulseScanPoint {
  double photon_energy_eV = 0.0;
  double excited_population = 0.0;  // population of the target level after the pulse
};

// Final target-level population versus photon energy at fixed pulse shape.
std::vector<PulseScanPoint> pulse_scan(const LadderSystem& system,
                                       const std::vector<double>& grid_eV,
                                       int target_level, double peak_scale,
                                       double duration_fwhm_s,
                                       double window_fwhm_multiple = 4.0,
                                       int threads = 0,
                                       const PropagationSettings& settings = {});

struct PowerScanPoint {
  double peak_scale = 0.0;
  double intensity_proxy = 0.0;      // peak_scale^2
  double excited_population = 0.0;
};

struct PowerLawEstimate {
  double slope = 0.0;      // d log(population) / d log(intensity_proxy)
  double intercept = 0.0;  // log-log intercept
};

// Final target-level population versus peak amplitude scale at fixed photon
// energy; the N-photon resonance shows population ~ intensity^N, i.e. a
// log-log slope of N at weak drive.
std::vector<PowerScanPoint> power_scan(const LadderSystem& system,
                                       double photon_energy_eV, int target_level,
                                       const std::vector<double>& peak_scales,
                                       double duration_fwhm_s,
                                       double window_fwhm_multiple = 4.0,
                                       int threads = 0,
                                       const PropagationSettings& settings = {});

// Least-squares straight line through (log intensity_proxy, log population).
// Points with population <= 0 are rejected (throws NumericError).
PowerLawEstimate fit_power_law_loglog(const std::vector<PowerScanPoint>& points);

} // namespace floq
