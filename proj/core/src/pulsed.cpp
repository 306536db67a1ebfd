#include "floq/pulsed.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "floq/constants.hpp"
#include "floq/errors.hpp"
#include "floq/parallel.hpp"
#include "rk4.hpp"

namespace floq {

namespace {

// Gaussian FIELD envelope with intensity FWHM equal to `duration`:
// g(t) = exp(-2 ln2 t^2 / duration^2), so g^2 has FWHM = duration.
double field_envelope(double t, double duration) {
  const double u = t / duration;
  return std::exp(-2.0 * std::log(2.0) * u * u);
}

struct PulseContext {
  Eigen::VectorXd diag_centered_eV;
  std::vector<double> off_eV;  // 2 * b_k * peak_scale
  double omega_eV = 0.0;
  double phase_rad = 0.0;
  double center_eV = 0.0;
  double duration_internal = 0.0;

  void write(double t, Eigen::MatrixXcd& h) const {
    const double field = field_envelope(t, duration_internal) *
                         std::sin(omega_eV * t + phase_rad);
    const int n = static_cast<int>(diag_centered_eV.size());
    h.setZero();
    for (int k = 0; k < n; ++k) {
      h(k, k) = diag_centered_eV[k];
      if (k + 1 < n) {
        const double off = off_eV[static_cast<std::size_t>(k)] * field;
        h(k, k + 1) = off;
        h(k + 1, k) = off;
      }
    }
  }
};

} // namespace

PulseResult pulse_excitation(const LadderSystem& system, double photon_energy_eV,
                             double peak_scale, double duration_fwhm_s,
                             double window_fwhm_multiple,
                             const PropagationSettings& settings) {
  system.validate();
  DriveSpec drive;
  drive.kind = DriveKind::GaussianPulse;
  drive.photon_energy_eV = photon_energy_eV;
  drive.duration_fwhm_s = duration_fwhm_s;
  drive.peak_scale = peak_scale;
  drive.validate();
  if (window_fwhm_multiple < min_pulse_window_fwhm_multiple) {
    std::ostringstream msg;
    msg << "pulse window of +-" << window_fwhm_multiple
        << " FWHM leaves envelope above 1e-6 at the boundary; need >= "
        << min_pulse_window_fwhm_multiple;
    throw std::invalid_argument(msg.str());
  }

  const int n = system.level_count();
  PulseContext ctx;
  ctx.center_eV = system.spectral_center_eV();
  ctx.diag_centered_eV.resize(n);
  for (int k = 0; k < n; ++k) {
    ctx.diag_centered_eV[k] =
        system.level_energies_eV[static_cast<std::size_t>(k)] - ctx.center_eV;
  }
  ctx.off_eV.resize(static_cast<std::size_t>(n - 1));
  for (int k = 0; k + 1 < n; ++k) {
    ctx.off_eV[static_cast<std::size_t>(k)] =
        2.0 * system.coupling_energy_eV(k) * peak_scale;
  }
  ctx.omega_eV = photon_energy_eV;
  ctx.phase_rad = drive.carrier_phase_rad;
  ctx.duration_internal = units::seconds_to_internal_time(duration_fwhm_s);

  const double t0 = -window_fwhm_multiple * ctx.duration_internal;
  const double t1 = +window_fwhm_multiple * ctx.duration_internal;
  const double span = t1 - t0;

  double dt = suggested_time_step(system, drive, span, settings.drift_target);
  if (settings.dt_internal > 0.0) {
    const double dt_cap =
        std::min(drive.period_internal() / 200.0,
                 0.02 / system.hamiltonian_norm_bound_eV(peak_scale));
    if (settings.dt_internal > dt_cap * (1.0 + 1e-12)) {
      throw std::invalid_argument("explicit time step exceeds the step cap");
    }
    dt = settings.dt_internal;
  }
  long n_steps = static_cast<long>(std::ceil(span / dt - 1e-9));
  if (n_steps < 1) n_steps = 1;
  dt = span / static_cast<double>(n_steps);

  Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(n, 1);
  psi(0, 0) = 1.0;
  double max_drift = 0.0;
  detail::rk4_integrate(
      n, 1, [&ctx](double t, Eigen::MatrixXcd& h) { ctx.write(t, h); }, t0, dt,
      n_steps, psi, [&](long step, double t, const Eigen::MatrixXcd& cur) {
        const double norm = cur.col(0).norm();
        if (!std::isfinite(norm)) {
          std::ostringstream msg;
          msg << "pulse state became non-finite at t = " << t;
          throw NumericError(msg.str());
        }
        const double drift = std::abs(norm - 1.0);
        max_drift = std::max(max_drift, drift);
        if (drift > settings.norm_tolerance) {
          std::ostringstream msg;
          msg << "pulse norm drift " << drift << " exceeds tolerance "
              << settings.norm_tolerance << " at t = " << t << " (step "
              << step << " of " << n_steps << ", dt = " << dt << ")";
          throw NumericError(msg.str());
        }
      });

  PulseResult result;
  result.photon_energy_eV = photon_energy_eV;
  result.peak_scale = peak_scale;
  result.intensity_proxy = peak_scale * peak_scale;
  // integral of (peak_scale * g(t))^2 dt = peak_scale^2 * d * sqrt(pi/(4 ln2)).
  result.fluence_proxy = peak_scale * peak_scale * ctx.duration_internal *
                         std::sqrt(constants::pi / (4.0 * std::log(2.0)));
  result.final_populations.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    result.final_populations[static_cast<std::size_t>(k)] = std::norm(psi(k, 0));
  }
  result.norm_drift = max_drift;
  return result;
}

std::vector<PulseScanPoint> pulse_scan(const LadderSystem& system,
                                       const std::vector<double>& grid_eV,
                                       int target_level, double peak_scale,
                                       double duration_fwhm_s,
                                       double window_fwhm_multiple, int threads,
                                       const PropagationSettings& settings) {
  system.validate();
  if (grid_eV.empty()) throw std::invalid_argument("pulse scan grid is empty");
  if (target_level < 0 || target_level >= system.level_count()) {
    throw std::invalid_argument("target level out of range");
  }
  for (std::size_t i = 0; i < grid_eV.size(); ++i) {
    if (!(grid_eV[i] > 0.0)) {
      throw std::invalid_argument("pulse scan photon energies must be positive");
    }
    if (i > 0 && !(grid_eV[i] > grid_eV[i - 1])) {
      throw std::invalid_argument("pulse scan grid must be strictly increasing");
    }
  }

  std::vector<PulseScanPoint> points(grid_eV.size());
  parallel_for(static_cast<int>(grid_eV.size()), threads, [&](int i) {
    const PulseResult pulse = pulse_excitation(
        system, grid_eV[static_cast<std::size_t>(i)], peak_scale,
        duration_fwhm_s, window_fwhm_multiple, settings);
    points[static_cast<std::size_t>(i)] = PulseScanPoint{
        pulse.photon_energy_eV,
        pulse.final_populations[static_cast<std::size_t>(target_level)]};
  });
  return points;
}

std::vector<PowerScanPoint> power_scan(const LadderSystem& system,
                                       double photon_energy_eV, int target_level,
                                       const std::vector<double>& peak_scales,
                                       double duration_fwhm_s,
                                       double window_fwhm_multiple, int threads,
                                       const PropagationSettings& settings) {
  system.validate();
  if (peak_scales.empty()) throw std::invalid_argument("power scan scale list is empty");
  if (target_level < 0 || target_level >= system.level_count()) {
    throw std::invalid_argument("target level out of range");
  }
  for (double s : peak_scales) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw std::invalid_argument("power scan scales must be nonnegative and finite");
    }
  }

  std::vector<PowerScanPoint> points(peak_scales.size());
  parallel_for(static_cast<int>(peak_scales.size()), threads, [&](int i) {
    const PulseResult pulse = pulse_excitation(
        system, photon_energy_eV, peak_scales[static_cast<std::size_t>(i)],
        duration_fwhm_s, window_fwhm_multiple, settings);
    points[static_cast<std::size_t>(i)] = PowerScanPoint{
        pulse.peak_scale, pulse.intensity_proxy,
        pulse.final_populations[static_cast<std::size_t>(target_level)]};
  });
  return points;
}

PowerLawEstimate fit_power_law_loglog(const std::vector<PowerScanPoint>& points) {
  if (points.size() < 2) {
    throw std::invalid_argument("power-law estimate needs at least 2 points");
  }
  double sx = 0.0, sy = 0.0;
  for (const PowerScanPoint& p : points) {
    if (!(p.intensity_proxy > 0.0) || !(p.excited_population > 0.0)) {
      throw NumericError(
          "power-law estimate needs positive intensities and populations");
    }
    sx += std::log(p.intensity_proxy);
    sy += std::log(p.excited_population);
  }
  const double n = static_cast<double>(points.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const PowerScanPoint& p : points) {
    const double dx = std::log(p.intensity_proxy) - mx;
    const double dy = std::log(p.excited_population) - my;
    sxx += dx * dx;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0)) {
    throw NumericError("power-law estimate needs at least two distinct intensities");
  }
  PowerLawEstimate estimate;
  estimate.slope = sxy / sxx;
  estimate.intercept = my - estimate.slope * mx;
  return estimate;
}

} // namespace floq
