#include "floq/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <Eigen/Dense>

#include "floq/constants.hpp"
#include "floq/errors.hpp"
#include "floq/fitkit.hpp"
#include "floq/floquet.hpp"
#include "floq/io.hpp"
#include "floq/model.hpp"
#include "floq/parallel.hpp"
#include "floq/params.hpp"
#include "floq/propagate.hpp"
#include "floq/pulsed.hpp"
#include "floq/synth.hpp"

namespace floq {

namespace {

class Timer {
public:
  double lap() {
    const auto now = clock::now();
    const double s = std::chrono::duration<double>(now - t0_).count();
    t0_ = now;
    return s;
  }

private:
  using clock = std::chrono::steady_clock;
  clock::time_point t0_ = clock::now();
};

std::string json_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size() + 8);
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

DriveSpec mono_drive(double photon_energy_eV, double amplitude_scale) {
  DriveSpec drive;
  drive.kind = DriveKind::Monochromatic;
  drive.photon_energy_eV = photon_energy_eV;
  drive.amplitude_scale = amplitude_scale;
  return drive;
}

std::string format_brief(double value) {
  std::ostringstream out;
  out.precision(6);
  out << value;
  return out.str();
}

double unitarity_defect(const Eigen::MatrixXcd& u) {
  const Eigen::MatrixXcd defect =
      u.adjoint() * u -
      Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return defect.cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Deterministic artifact set.  Everything here must be reproducible bit for
// bit: fixed grids, fixed seeds, index-slotted parallel loops, %.16e output.
// ---------------------------------------------------------------------------

const std::vector<std::string>& artifact_files() {
  static const std::vector<std::string> files = {
      "spectrum.csv",
      "resonances.json",
      "quasienergies.csv",
      "power_scan.csv",
      "synth_lifetime_tau260.csv",
      "fit_lifetime_tau260.json",
      "synth_lifetime_tau440.csv",
      "fit_lifetime_tau440.json",
      "synth_malus_dolp087.csv",
      "fit_malus_dolp087.json",
      "synth_malus_dolp074.csv",
      "fit_malus_dolp074.json",
      "synth_power_cubic.csv",
      "fit_power_cubic.json",
  };
  return files;
}

struct ArtifactTimings {
  double spectrum_s = 0.0;
  double quasienergy_s = 0.0;
  double power_s = 0.0;
  double synth_s = 0.0;
};

struct Artifacts {
  SpectrumResult spectrum;
  std::vector<QuasienergyPoint> quasienergy_points;
  std::vector<PowerScanPoint> power_points;
  FitResult fit_life260, fit_life440;
  FitResult fit_malus87, fit_malus74;
  PowerLawFit fit_power;
  ArtifactTimings timings;
};

FitResult fit_lifetime_dataset(const SynthDataset& data) {
  FitData fit_data;
  fit_data.x = data.x;
  fit_data.y = data.y;
  fit_data.weights = poisson_weights(data.y);
  return fit_emg(fit_data);
}

FitResult fit_malus_dataset(const SynthDataset& data) {
  FitData fit_data;
  fit_data.x = data.x;
  fit_data.y = data.y;
  return fit_malus(fit_data);
}

void write_malus_fit(const std::string& path, const FitResult& fit) {
  std::vector<std::pair<std::string, double>> derived;
  if (fit.parameters.size() == 3 && fit.covariance.size() == 9) {
    const double dolp =
        degree_of_linear_polarization(fit.parameters[0], fit.parameters[2]);
    const double dolp_err = degree_of_linear_polarization_stderr(
        fit.parameters[0], fit.parameters[2], fit.covariance[0], fit.covariance[8],
        fit.covariance[2]);
    derived.push_back({"dolp", dolp});
    derived.push_back({"dolp_stderr", dolp_err});
  }
  write_fit_json(path, "malus", {"amplitude", "theta0_deg", "baseline"}, fit,
                 derived);
}

Artifacts generate_artifacts(const std::string& dir, int threads) {
  ensure_directory(dir);
  const LadderSystem system = canonical_system();
  Artifacts art;
  Timer timer;

  // Convolved excitation spectrum at full drive scale across the window that
  // contains the two- and three-photon features.
  const std::vector<double> grid = make_scan_grid(system, 1.0, 0.80, 1.45, 5e-4);
  art.spectrum = spectrum_scan(system, 1.0, grid, 0.020, threads);
  write_spectrum_csv(dir + "/spectrum.csv", art.spectrum);
  write_resonances_json(dir + "/resonances.json", art.spectrum.resonances);
  art.timings.spectrum_s = timer.lap();

  // Branch-tracked quasienergies on a uniform 200-point grid.
  std::vector<double> quasi_grid(200);
  for (std::size_t i = 0; i < quasi_grid.size(); ++i) {
    quasi_grid[i] = 0.80 + static_cast<double>(i) * (0.65 / 199.0);
  }
  art.quasienergy_points = quasienergy_scan(system, 1.0, quasi_grid, threads);
  write_quasienergy_csv(dir + "/quasienergies.csv", art.quasienergy_points);
  art.timings.quasienergy_s = timer.lap();

  // Pulsed power scan on the three-photon resonance (located from the branch
  // gap minimum, not hard-coded).
  const GapMinimum three_photon =
      locate_gap_minimum(system, 1.0, 0, 1, 0.860, 0.885);
  std::vector<double> scales(8);
  const double log_lo = std::log(0.15), log_hi = std::log(0.5);
  for (std::size_t i = 0; i < scales.size(); ++i) {
    scales[i] = std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) / 7.0);
  }
  art.power_points = power_scan(system, three_photon.photon_energy_eV, 1, scales,
                                1.0e-13, 4.0, threads);
  write_power_scan_csv(dir + "/power_scan.csv", art.power_points);
  art.timings.power_s = timer.lap();

  // Synthetic experimental datasets plus their fits.
  {
    SynthLifetimeSpec spec;
    spec.tau_ps = 260.0;
    spec.seed = 101;
    const SynthDataset data = synth_lifetime(spec);
    write_xy_csv(dir + "/synth_lifetime_tau260.csv", "time_ps", "counts", data.x,
                 data.y);
    art.fit_life260 = fit_lifetime_dataset(data);
    write_fit_json(dir + "/fit_lifetime_tau260.json", "emg",
                   {"amplitude", "mu_ps", "sigma_ps", "tau_ps", "baseline"},
                   art.fit_life260);
  }
  {
    SynthLifetimeSpec spec;
    spec.tau_ps = 440.0;
    spec.seed = 102;
    const SynthDataset data = synth_lifetime(spec);
    write_xy_csv(dir + "/synth_lifetime_tau440.csv", "time_ps", "counts", data.x,
                 data.y);
    art.fit_life440 = fit_lifetime_dataset(data);
    write_fit_json(dir + "/fit_lifetime_tau440.json", "emg",
                   {"amplitude", "mu_ps", "sigma_ps", "tau_ps", "baseline"},
                   art.fit_life440);
  }
  {
    SynthMalusSpec spec;
    spec.dolp = 0.87;
    spec.seed = 201;
    const SynthDataset data = synth_malus(spec);
    write_xy_csv(dir + "/synth_malus_dolp087.csv", "angle_deg", "counts", data.x,
                 data.y);
    art.fit_malus87 = fit_malus_dataset(data);
    write_malus_fit(dir + "/fit_malus_dolp087.json", art.fit_malus87);
  }
  {
    SynthMalusSpec spec;
    spec.dolp = 0.74;
    spec.seed = 202;
    const SynthDataset data = synth_malus(spec);
    write_xy_csv(dir + "/synth_malus_dolp074.csv", "angle_deg", "counts", data.x,
                 data.y);
    art.fit_malus74 = fit_malus_dataset(data);
    write_malus_fit(dir + "/fit_malus_dolp074.json", art.fit_malus74);
  }
  {
    SynthPowerSpec spec;
    spec.seed = 301;
    const SynthDataset data = synth_power(spec);
    write_xy_csv(dir + "/synth_power_cubic.csv", "intensity", "signal", data.x,
                 data.y);
    art.fit_power = fit_power_law(data.x, data.y);
    FitResult as_result;
    as_result.converged = true;
    as_result.iterations = 0;
    as_result.parameters = {art.fit_power.exponent, art.fit_power.log_prefactor};
    as_result.standard_errors = {art.fit_power.exponent_stderr, 0.0};
    as_result.degrees_of_freedom = static_cast<int>(data.x.size()) - 2;
    double chi2 = 0.0;
    for (std::size_t i = 0; i < data.x.size(); ++i) {
      const double r = std::log(data.y[i]) - art.fit_power.log_prefactor -
                       art.fit_power.exponent * std::log(data.x[i]);
      chi2 += r * r;
    }
    as_result.chi2 = chi2;
    as_result.message = "closed-form straight line through (log x, log y)";
    write_fit_json(dir + "/fit_power_cubic.json", "power",
                   {"exponent", "log_prefactor"}, as_result);
  }
  art.timings.synth_s = timer.lap();
  return art;
}

std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Background-subtracted area of the raw averaged-transition feature at an
// avoided crossing.  The feature is Lorentzian-like with a full width of
// about 2*gap/order in photon energy; sampling to +-10 widths with a
// straight baseline through the window edges captures the same fixed
// fraction of the area for every feature, so ratios of these areas are
// shape-independent.
double resonance_area(const LadderSystem& system, double amplitude_scale,
                      int photon_order, const GapMinimum& minimum, int threads,
                      const PropagationSettings& settings = {}) {
  const double width =
      std::max(2.0 * minimum.gap_eV / photon_order, 1e-9);
  const double center = minimum.photon_energy_eV;
  std::vector<double> xs;
  const auto add_tier = [&](double half, double step) {
    const long k_max = std::lround(std::floor(half / step));
    for (long k = -k_max; k <= k_max; ++k) {
      xs.push_back(center + static_cast<double>(k) * step);
    }
  };
  add_tier(10.0 * width, width / 2.0);
  add_tier(3.0 * width, width / 6.0);
  std::sort(xs.begin(), xs.end());
  std::vector<double> unique_xs;
  for (double x : xs) {
    if (unique_xs.empty() || x - unique_xs.back() > width * 1e-3) {
      unique_xs.push_back(x);
    }
  }

  std::vector<double> ys(unique_xs.size());
  parallel_for(static_cast<int>(unique_xs.size()), threads, [&](int i) {
    const std::size_t idx = static_cast<std::size_t>(i);
    ys[idx] = averaged_transition_probability(
        system, mono_drive(unique_xs[idx], amplitude_scale), 0, 1, 200, settings);
  });

  const double x0 = unique_xs.front(), x1 = unique_xs.back();
  const double y0 = ys.front(), y1 = ys.back();
  const auto baseline = [&](double x) {
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
  };
  double area = 0.0;
  for (std::size_t i = 1; i < unique_xs.size(); ++i) {
    const double fa = ys[i - 1] - baseline(unique_xs[i - 1]);
    const double fb = ys[i] - baseline(unique_xs[i]);
    area += 0.5 * (fa + fb) * (unique_xs[i] - unique_xs[i - 1]);
  }
  return std::abs(area);
}

// Strength ratio of the three-photon resonance to the two-photon feature at
// one drive scale, measured as raw feature areas.
double three_to_two_photon_ratio(const LadderSystem& system, double amplitude_scale,
                                 int threads) {
  const GapMinimum three =
      locate_gap_minimum(system, amplitude_scale, 0, 1, 0.860, 0.885);
  const GapMinimum two =
      locate_gap_minimum(system, amplitude_scale, 0, 2, 1.330, 1.355);
  const double area3 = resonance_area(system, amplitude_scale, 3, three, threads);
  const double area2 = resonance_area(system, amplitude_scale, 2, two, threads);
  if (!(area2 > 0.0)) throw NumericError("two-photon feature area vanished");
  return area3 / area2;
}

const Resonance* tallest_of_order(const std::vector<Resonance>& resonances,
                                  int order) {
  const Resonance* best = nullptr;
  for (const Resonance& res : resonances) {
    if (res.order != order) continue;
    if (best == nullptr || res.height > best->height) best = &res;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Individual cases.
// ---------------------------------------------------------------------------

ValidationCaseResult case_rwa_two_level_rabi() {
  Timer timer;
  ValidationCaseResult result;
  result.name = "rwa_two_level_rabi";
  result.claim =
      "A two-level ladder driven on resonance at a 1% coupling-to-gap ratio "
      "Rabi-oscillates as P1(t) = sin^2(b t); corrections beyond the "
      "rotating-wave approximation stay below 0.02.";

  LadderSystem two_level;
  two_level.level_energies_eV = {0.0, 2.61};
  two_level.parities = {Parity::Even, Parity::Odd};
  const double b_eV = 0.01 * 2.61;
  two_level.couplings_rad_s = {units::coupling_eV_to_rad_s(b_eV)};
  const DriveSpec drive = mono_drive(2.61, 1.0);

  Eigen::VectorXcd ground = Eigen::VectorXcd::Zero(2);
  ground(0) = 1.0;
  const double rabi_period = constants::pi / two_level.coupling_energy_eV(0);
  const Trajectory trajectory =
      propagate(two_level, drive, ground, 0.0, rabi_period);

  double max_deviation = 0.0;
  for (std::size_t i = 0; i < trajectory.states.size(); ++i) {
    const double p1 = std::norm(trajectory.states[i](1));
    const double s = std::sin(two_level.coupling_energy_eV(0) *
                              trajectory.times_internal[i]);
    max_deviation = std::max(max_deviation, std::abs(p1 - s * s));
  }
  result.passed = max_deviation < 0.02;
  result.measured = "max |P1 - sin^2(bt)| = " + format_brief(max_deviation) +
                    " over one Rabi period (limit 0.02)";
  result.runtime_seconds = timer.lap();
  return result;
}

ValidationCaseResult case_rk4_unitarity_and_order() {
  Timer timer;
  ValidationCaseResult result;
  result.name = "rk4_unitarity_and_order";
  result.claim =
      "Every propagator stays unitary to 1e-8 in the max norm, and the "
      "integrator's measured convergence order is at least 3.8.";

  const LadderSystem system = canonical_system();
  double worst_defect = 0.0;
  {
    const Eigen::MatrixXcd u1 = monodromy(system, mono_drive(0.8718, 1.0));
    const Eigen::MatrixXcd u2 = monodromy(system, mono_drive(1.3416, 1.0));
    const DriveSpec drive = mono_drive(0.8718, 1.0);
    const double period = drive.period_internal();
    const Eigen::MatrixXcd u20 =
        propagator_over(system, drive, 0.0, 20.0 * period);
    worst_defect = std::max({unitarity_defect(u1), unitarity_defect(u2),
                             unitarity_defect(u20)});
  }

  // Self-convergence order on one period: halving the step should cut the
  // error by about 2^4.
  const DriveSpec drive = mono_drive(0.8718, 1.0);
  const double period = drive.period_internal();
  const auto propagator_with_steps = [&](long steps) {
    PropagationSettings settings;
    settings.dt_internal = period / static_cast<double>(steps);
    return propagator_over(system, drive, 0.0, period, settings);
  };
  const Eigen::MatrixXcd coarse = propagator_with_steps(1200);
  const Eigen::MatrixXcd half = propagator_with_steps(2400);
  const Eigen::MatrixXcd reference = propagator_with_steps(19200);
  const double err_coarse = (coarse - reference).cwiseAbs().maxCoeff();
  const double err_half = (half - reference).cwiseAbs().maxCoeff();
  const double order = std::log2(err_coarse / err_half);

  result.passed = worst_defect <= 1e-8 && order >= 3.8;
  result.measured = "max ||U^H U - I|| = " + format_brief(worst_defect) +
                    " (limit 1e-8); convergence order = " + format_brief(order) +
                    " (limit >= 3.8)";
  result.runtime_seconds = timer.lap();
  return result;
}

ValidationCaseResult case_quasienergy_sum_rule(const Artifacts& artifacts) {
  Timer timer;
  ValidationCaseResult result;
  result.name = "quasienergy_sum_rule";
  result.claim =
      "The quasienergies of the driven ladder sum to the sum of the static "
      "level energies modulo the photon energy (a determinant identity of "
      "the one-period propagator), within 1e-7 eV at 200 grid points.";

  const LadderSystem system = canonical_system();
  double energy_sum = 0.0;
  for (double e : system.level_energies_eV) energy_sum += e;

  double worst = 0.0;
  for (const QuasienergyPoint& point : artifacts.quasienergy_points) {
    double eps_sum = 0.0;
    for (double eps : point.quasienergies_eV) eps_sum += eps;
    const double residual =
        fold_quasienergy(eps_sum - energy_sum, point.photon_energy_eV);
    worst = std::max(worst, std::abs(residual));
  }
  result.passed =
      worst <= 1e-7 && artifacts.quasienergy_points.size() == 200;
  result.measured = "max folded |sum(eps) - sum(E)| = " + format_brief(worst) +
                    " eV over " +
                    std::to_string(artifacts.quasienergy_points.size()) +
                    " points (limit 1e-7)";
  result.runtime_seconds = timer.lap() + artifacts.timings.quasienergy_s;
  return result;
}

ValidationCaseResult case_floquet_vs_time_domain() {
  Timer timer;
  ValidationCaseResult result;
  result.name = "floquet_vs_time_domain";
  result.claim =
      "The Floquet-mode expression for the time-averaged excited population "
      "matches a direct 400-period integration within 1e-3 wherever the "
      "neglected cross terms are provably below tolerance.";

  const LadderSystem system = canonical_system();
  Eigen::VectorXcd ground = Eigen::VectorXcd::Zero(system.level_count());
  ground(0) = 1.0;
  constexpr int periods = 400;
  constexpr int wanted = 20;
  constexpr double cross_term_budget = 2e-4;

  DeterministicRng rng(20260817);
  int draws = 0;
  int kept = 0;
  double max_diff = 0.0;
  while (kept < wanted && draws < 500) {
    ++draws;
    const double photon = rng.uniform(0.80, 1.45);
    const DriveSpec drive = mono_drive(photon, 1.0);
    const AveragedTransition floquet_avg =
        averaged_transition_probability_detail(system, drive, 0, 1, 200);
    if (floquet_avg.near_degenerate) continue;

    // Bound on the finite-horizon error: each mode pair contributes a cross
    // term whose M-period average is damped by the geometric sum factor
    // min(1, 1 / (M |sin(d_eps T / 2)|)).
    const double period = drive.period_internal();
    double bound = 0.0;
    const std::size_t n = floquet_avg.mode_weights.size();
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const double beat = std::abs(std::sin(
            0.5 * (floquet_avg.quasienergies_eV[j] - floquet_avg.quasienergies_eV[k]) *
            period));
        const double damping =
            std::min(1.0, 1.0 / (static_cast<double>(periods) *
                                 std::max(beat, 1e-300)));
        bound += 2.0 *
                 std::sqrt(floquet_avg.mode_weights[j] * floquet_avg.mode_weights[k] *
                           floquet_avg.mode_time_averages[j] *
                           floquet_avg.mode_time_averages[k]) *
                 damping;
      }
    }
    if (bound > cross_term_budget) continue;

    const double time_avg = time_averaged_population(
        system, drive, ground, 1, 0.0, static_cast<double>(periods) * period);
    max_diff = std::max(max_diff, std::abs(floquet_avg.value - time_avg));
    ++kept;
  }

  result.passed = kept == wanted && max_diff <= 1e-3;
  result.measured = "max |Floquet - 400-period average| = " +
                    format_brief(max_diff) + " over " + std::to_string(kept) +
                    " samples from " + std::to_string(draws) +
                    " draws (limit 1e-3)";
  result.runtime_seconds = timer.lap();
  return result;
}

ValidationCaseResult case_spectrum_three_vs_two_photon(const Artifacts& artifacts) {
  Timer timer;
  ValidationCaseResult result;
  result.name = "spectrum_three_vs_two_photon";
  result.claim =
      "With a 20 meV instrument response, the excitation spectrum shows a "
      "three-photon resonance at 0.870 +- 0.005 eV that is about 12 times "
      "(within a factor of 2) stronger than the allowed two-photon feature "
      "of the second excited level, with a convolved FWHM of 20 meV +- 20%.";

  // The observable even-photon feature belongs to the allowed two-photon
  // crossing of the second excited level (the half-transition-energy
  // crossing of the opposite-parity level is symmetry-dark and leaves no
  // feature).  Two checks anchor it to the predicted crossing position:
  // the raw-curve dip bottom must sit within 5 meV of the prediction
  // (sharp, instrument-free), and the detected order-2 feature of the
  // convolved curve must lie within half the 20 meV instrument response
  // (the convolution genuinely shifts the apparent minimum of this
  // asymmetric dip by a few meV).
  const LadderSystem system = canonical_system();
  const double half_e2 = 0.5 * (system.level_energies_eV[2] - system.level_energies_eV[0]);
  const double two_photon_expected =
      locate_gap_minimum(system, 1.0, 0, 2, half_e2 - 0.015, half_e2 + 0.015)
          .photon_energy_eV;

  double raw_dip_eV = 0.0;
  double raw_dip_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < artifacts.spectrum.photon_energies_eV.size(); ++i) {
    const double w = artifacts.spectrum.photon_energies_eV[i];
    if (std::abs(w - two_photon_expected) > 0.010) continue;
    if (artifacts.spectrum.raw[i] < raw_dip_value) {
      raw_dip_value = artifacts.spectrum.raw[i];
      raw_dip_eV = w;
    }
  }

  const Resonance* three = tallest_of_order(artifacts.spectrum.resonances, 3);
  const Resonance* two = tallest_of_order(artifacts.spectrum.resonances, 2);

  bool ok = three != nullptr && two != nullptr;
  std::ostringstream measured;
  if (!ok) {
    measured << "missing feature: order-3 " << (three ? "found" : "absent")
             << ", order-2 " << (two ? "found" : "absent");
  } else {
    const double ratio = three->height / two->height;
    const bool center3_ok = std::abs(three->center_eV - 0.870) <= 0.005;
    const bool dip_ok = std::abs(raw_dip_eV - two_photon_expected) <= 0.005;
    const bool center2_ok = std::abs(two->center_eV - two_photon_expected) <= 0.010;
    const bool ratio_ok = ratio >= 6.0 && ratio <= 24.0;
    const bool width_ok = three->fwhm_eV >= 0.016 && three->fwhm_eV <= 0.024;
    ok = center3_ok && dip_ok && center2_ok && ratio_ok && width_ok;
    measured << "3-photon center = " << format_brief(three->center_eV)
             << " eV (0.870 +- 0.005), 2-photon raw dip = "
             << format_brief(raw_dip_eV) << " eV / detected feature = "
             << format_brief(two->center_eV) << " eV (crossing "
             << format_brief(two_photon_expected)
             << " +- 0.005 raw, +- 0.010 convolved), height ratio = "
             << format_brief(ratio) << " (6..24), 3-photon FWHM = "
             << format_brief(three->fwhm_eV) << " eV (0.016..0.024)";
  }
  result.passed = ok;
  result.measured = measured.str();
  result.runtime_seconds = timer.lap() + artifacts.timings.spectrum_s;
  return result;
}

ValidationCaseResult case_even_photon_suppression_trend(int threads) {
  Timer timer;
  ValidationCaseResult result;
  result.name = "even_photon_suppression_trend";
  result.claim =
      "Even-photon excitation of the opposite-parity level is "
      "parity-suppressed: the three-to-two-photon strength ratio grows "
      "monotonically as the drive scale falls through 1.0, 0.5, 0.25.";

  const LadderSystem system = canonical_system();
  const double r_full = three_to_two_photon_ratio(system, 1.0, threads);
  const double r_half = three_to_two_photon_ratio(system, 0.5, threads);
  const double r_quarter = three_to_two_photon_ratio(system, 0.25, threads);

  result.passed = r_half > r_full && r_quarter > r_half;
  result.measured = "area ratio 3PA/2PA = " + format_brief(r_full) + " (s=1.0), " +
                    format_brief(r_half) + " (s=0.5), " + format_brief(r_quarter) +
                    " (s=0.25); must increase";
  result.runtime_seconds = timer.lap();
  return result;
}

ValidationCaseResult case_pulsed_power_law_slope(const Artifacts& artifacts) {
  Timer timer;
  ValidationCaseResult result;
  result.name = "pulsed_power_law_slope";
  result.claim =
      "Below saturation, the excited population left by a resonant "
      "three-photon pulse scales as the cube of the pulse intensity "
      "(log-log slope 3.0 +- 0.15).";

  const PowerLawEstimate estimate = fit_power_law_loglog(artifacts.power_points);
  double max_population = 0.0;
  for (const PowerScanPoint& point : artifacts.power_points) {
    max_population = std::max(max_population, point.excited_population);
  }
  result.passed = std::abs(estimate.slope - 3.0) <= 0.15;
  result.measured = "log-log slope = " + format_brief(estimate.slope) +
                    " (3.0 +- 0.15), max population = " +
                    format_brief(max_population);
  result.runtime_seconds = timer.lap() + artifacts.timings.power_s;
  return result;
}

ValidationCaseResult case_parameter_derivation_sanity() {
  Timer timer;
  ValidationCaseResult result;
  result.name = "parameter_derivation_sanity";
  result.claim =
      "A 250 ps radiative lifetime at 2.61 eV in a medium of index 2.4 "
      "implies a transition dipole of 0.50 +- 0.01 e nm, and that dipole in "
      "a 2.2 MV/cm peak field gives a Rabi coupling of 84 +- 1 Trad/s.";

  const double dipole = params::dipole_from_lifetime_e_nm(250e-12, 2.61, 2.4);
  const double rabi = params::rabi_coupling_rad_s(0.5, 2.2e8);
  const double rabi_Trad_s = rabi * 1e-12;
  const double lifetime_back = params::lifetime_from_dipole_s(dipole, 2.61, 2.4);
  const bool roundtrip_ok = std::abs(lifetime_back - 250e-12) <= 1e-9 * 250e-12;

  result.passed = std::abs(dipole - 0.50) <= 0.01 &&
                  std::abs(rabi_Trad_s - 84.0) <= 1.0 && roundtrip_ok;
  result.measured = "dipole = " + format_brief(dipole) +
                    " e nm (0.50 +- 0.01), coupling = " + format_brief(rabi_Trad_s) +
                    " Trad/s (84 +- 1), lifetime roundtrip relative error = " +
                    format_brief(std::abs(lifetime_back - 250e-12) / 250e-12);
  result.runtime_seconds = timer.lap();
  return result;
}

ValidationCaseResult case_fit_recovery(const Artifacts& artifacts) {
  Timer timer;
  ValidationCaseResult result;
  result.name = "fit_recovery";
  result.claim =
      "The fit kit recovers known synthetic truths: decay times 260 and 440 "
      "ps within +-20 ps under Poisson noise, DOLP 0.87 and 0.74 within "
      "+-0.02 at 3% noise, and a cubic power-law exponent within +-0.15 at "
      "5% noise.";

  const double tau260 = artifacts.fit_life260.parameters.size() == 5
                            ? artifacts.fit_life260.parameters[3]
                            : 0.0;
  const double tau440 = artifacts.fit_life440.parameters.size() == 5
                            ? artifacts.fit_life440.parameters[3]
                            : 0.0;
  const double dolp87 =
      artifacts.fit_malus87.parameters.size() == 3
          ? degree_of_linear_polarization(artifacts.fit_malus87.parameters[0],
                                          artifacts.fit_malus87.parameters[2])
          : 0.0;
  const double dolp74 =
      artifacts.fit_malus74.parameters.size() == 3
          ? degree_of_linear_polarization(artifacts.fit_malus74.parameters[0],
                                          artifacts.fit_malus74.parameters[2])
          : 0.0;
  const double exponent = artifacts.fit_power.exponent;

  const bool converged =
      artifacts.fit_life260.converged && artifacts.fit_life440.converged &&
      artifacts.fit_malus87.converged && artifacts.fit_malus74.converged;
  result.passed = converged && std::abs(tau260 - 260.0) <= 20.0 &&
                  std::abs(tau440 - 440.0) <= 20.0 &&
                  std::abs(dolp87 - 0.87) <= 0.02 &&
                  std::abs(dolp74 - 0.74) <= 0.02 &&
                  std::abs(exponent - 3.0) <= 0.15;
  result.measured = "tau = " + format_brief(tau260) + "/" + format_brief(tau440) +
                    " ps (260/440 +- 20), DOLP = " + format_brief(dolp87) + "/" +
                    format_brief(dolp74) +
                    " (0.87/0.74 +- 0.02), exponent = " + format_brief(exponent) +
                    " (3.0 +- 0.15)" + (converged ? "" : "; a fit failed to converge");
  result.runtime_seconds = timer.lap() + artifacts.timings.synth_s;
  return result;
}

ValidationCaseResult case_determinism(const std::string& artifact_dir, int threads) {
  Timer timer;
  ValidationCaseResult result;
  result.name = "determinism";
  result.claim =
      "Re-running the full artifact generation produces byte-identical "
      "CSV/JSON data files.";

  const std::string repeat_dir = artifact_dir + "_repeat";
  generate_artifacts(repeat_dir, threads);

  int identical = 0;
  std::vector<std::string> mismatched;
  for (const std::string& name : artifact_files()) {
    const std::string a = read_file_bytes(artifact_dir + "/" + name);
    const std::string b = read_file_bytes(repeat_dir + "/" + name);
    if (a == b) {
      ++identical;
    } else {
      mismatched.push_back(name);
    }
  }
  result.passed = mismatched.empty();
  std::ostringstream measured;
  measured << identical << "/" << artifact_files().size()
           << " artifacts byte-identical";
  if (!mismatched.empty()) {
    measured << "; mismatches:";
    for (const std::string& name : mismatched) measured << " " << name;
  }
  result.measured = measured.str();
  result.runtime_seconds = timer.lap();
  return result;
}

} // namespace

bool ValidationReport::all_passed() const {
  return std::all_of(cases.begin(), cases.end(),
                     [](const ValidationCaseResult& c) { return c.passed; });
}

std::vector<std::string> validation_case_names() {
  return {"rwa_two_level_rabi",
          "rk4_unitarity_and_order",
          "quasienergy_sum_rule",
          "floquet_vs_time_domain",
          "spectrum_three_vs_two_photon",
          "even_photon_suppression_trend",
          "pulsed_power_law_slope",
          "parameter_derivation_sanity",
          "fit_recovery",
          "determinism"};
}

ValidationReport run_validation(const std::string& artifact_dir, int threads) {
  return run_validation(artifact_dir, threads, validation_case_names());
}

ValidationReport run_validation(const std::string& artifact_dir, int threads,
                                const std::vector<std::string>& only) {
  const std::vector<std::string> known = validation_case_names();
  for (const std::string& name : only) {
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      std::string message = "unknown validation case \"" + name + "\"; known cases:";
      for (const std::string& k : known) message += " " + k;
      throw ConfigError(message);
    }
  }
  const auto selected = [&only](const char* name) {
    return std::find(only.begin(), only.end(), name) != only.end();
  };

  // The shared artifact set is expensive; generate it only when a selected
  // case consumes it.
  const bool needs_artifacts =
      selected("quasienergy_sum_rule") || selected("spectrum_three_vs_two_photon") ||
      selected("pulsed_power_law_slope") || selected("fit_recovery") ||
      selected("determinism");
  std::optional<Artifacts> artifacts;
  if (needs_artifacts) artifacts.emplace(generate_artifacts(artifact_dir, threads));

  // Cases run in the canonical order above regardless of the order (or
  // multiplicity) of the selection, so reports stay deterministic.
  ValidationReport report;
  if (selected("rwa_two_level_rabi")) report.cases.push_back(case_rwa_two_level_rabi());
  if (selected("rk4_unitarity_and_order")) {
    report.cases.push_back(case_rk4_unitarity_and_order());
  }
  if (selected("quasienergy_sum_rule")) {
    report.cases.push_back(case_quasienergy_sum_rule(*artifacts));
  }
  if (selected("floquet_vs_time_domain")) {
    report.cases.push_back(case_floquet_vs_time_domain());
  }
  if (selected("spectrum_three_vs_two_photon")) {
    report.cases.push_back(case_spectrum_three_vs_two_photon(*artifacts));
  }
  if (selected("even_photon_suppression_trend")) {
    report.cases.push_back(case_even_photon_suppression_trend(threads));
  }
  if (selected("pulsed_power_law_slope")) {
    report.cases.push_back(case_pulsed_power_law_slope(*artifacts));
  }
  if (selected("parameter_derivation_sanity")) {
    report.cases.push_back(case_parameter_derivation_sanity());
  }
  if (selected("fit_recovery")) report.cases.push_back(case_fit_recovery(*artifacts));
  if (selected("determinism")) {
    report.cases.push_back(case_determinism(artifact_dir, threads));
  }
  return report;
}

void write_validation_report(const std::string& path, const ValidationReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << "{\n";
  out << "  \"all_passed\": " << (report.all_passed() ? "true" : "false") << ",\n";
  if (report.cases.empty()) {
    out << "  \"warning\": \"no validation cases selected; the pass verdict is "
           "vacuous\",\n";
  }
  out << "  \"cases\": [\n";
  for (std::size_t i = 0; i < report.cases.size(); ++i) {
    const ValidationCaseResult& c = report.cases[i];
    out << "    {\n";
    out << "      \"name\": \"" << json_escape(c.name) << "\",\n";
    out << "      \"passed\": " << (c.passed ? "true" : "false") << ",\n";
    out << "      \"measured\": \"" << json_escape(c.measured) << "\",\n";
    out << "      \"claim\": \"" << json_escape(c.claim) << "\",\n";
    out << "      \"runtime_seconds\": " << format_float(c.runtime_seconds) << "\n";
    out << "    }" << (i + 1 < report.cases.size() ? "," : "") << '\n';
  }
  out << "  ]\n";
  out << "}\n";
  if (!out) throw ConfigError("failed writing " + path);
}

} // namespace floq
