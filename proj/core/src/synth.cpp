#include "floq/synth.hpp"

#include <cmath>
#include <stdexcept>

#include "floq/constants.hpp"
#include "floq/fitkit.hpp"

namespace floq {

DeterministicRng::DeterministicRng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t DeterministicRng::next_u64() { return engine_(); }

double DeterministicRng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double DeterministicRng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

double DeterministicRng::normal() {
  if (have_cached_normal_) {
    have_cached_normal_ = false;
    return cached_normal_;
  }
  // Box-Muller; u1 in (0, 1] so the log is finite.
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * constants::pi * u2;
  cached_normal_ = radius * std::sin(angle);
  have_cached_normal_ = true;
  return radius * std::cos(angle);
}

double DeterministicRng::normal(double mean, double stddev) {
  return mean + stddev * normal();
}

long DeterministicRng::poisson(double mean) {
  if (!(mean >= 0.0)) throw std::domain_error("poisson mean must be nonnegative");
  if (mean == 0.0) return 0;
  if (mean < 30.0) {
    const double limit = std::exp(-mean);
    long k = 0;
    double product = 1.0;
    do {
      ++k;
      product *= uniform01();
    } while (product > limit);
    return k - 1;
  }
  const double approx = mean + std::sqrt(mean) * normal();
  return approx <= 0.0 ? 0 : std::lround(approx);
}

SynthDataset synth_lifetime(const SynthLifetimeSpec& spec) {
  if (spec.bins < 2) throw std::invalid_argument("lifetime synth needs >= 2 bins");
  if (!(spec.t_stop_ps > spec.t_start_ps)) {
    throw std::invalid_argument("lifetime synth needs t_stop > t_start");
  }
  if (!(spec.sigma_ps > 0.0) || !(spec.tau_ps > 0.0)) {
    throw std::invalid_argument("lifetime synth needs positive sigma and tau");
  }
  if (!(spec.peak_counts > 0.0) || spec.baseline < 0.0) {
    throw std::invalid_argument("lifetime synth needs positive peak counts and nonnegative baseline");
  }

  DeterministicRng rng(spec.seed);
  SynthDataset out;
  const int n = spec.bins;
  out.x.resize(static_cast<std::size_t>(n));
  out.y.resize(static_cast<std::size_t>(n));
  const double width = (spec.t_stop_ps - spec.t_start_ps) / static_cast<double>(n);
  // Scale the density so the noiseless curve peaks at peak_counts.
  double density_max = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = spec.t_start_ps + (static_cast<double>(i) + 0.5) * width;
    out.x[static_cast<std::size_t>(i)] = t;
    density_max = std::max(
        density_max, emg_density(t, spec.mu_ps, spec.sigma_ps, spec.tau_ps));
  }
  const double amplitude = (spec.peak_counts - spec.baseline) / density_max;
  for (int i = 0; i < n; ++i) {
    const double mean = emg_model(out.x[static_cast<std::size_t>(i)], amplitude,
                                  spec.mu_ps, spec.sigma_ps, spec.tau_ps,
                                  spec.baseline);
    out.y[static_cast<std::size_t>(i)] = static_cast<double>(rng.poisson(mean));
  }
  return out;
}

SynthDataset synth_malus(const SynthMalusSpec& spec) {
  if (spec.points < 5) throw std::invalid_argument("polarization synth needs >= 5 points");
  if (!(spec.amplitude > 0.0)) {
    throw std::invalid_argument("polarization synth needs positive amplitude");
  }
  if (!(spec.dolp > 0.0) || spec.dolp > 1.0) {
    throw std::invalid_argument("polarization synth needs dolp in (0, 1]");
  }
  if (!(spec.theta_stop_deg > spec.theta_start_deg)) {
    throw std::invalid_argument("polarization synth needs theta_stop > theta_start");
  }
  if (spec.relative_noise < 0.0) {
    throw std::invalid_argument("polarization synth needs nonnegative noise");
  }

  // DOLP = A / (A + 2B)  =>  B = A (1 - DOLP) / (2 DOLP).
  const double baseline = spec.amplitude * (1.0 - spec.dolp) / (2.0 * spec.dolp);

  DeterministicRng rng(spec.seed);
  SynthDataset out;
  const int n = spec.points;
  out.x.resize(static_cast<std::size_t>(n));
  out.y.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double theta =
        spec.theta_start_deg + (spec.theta_stop_deg - spec.theta_start_deg) *
                                   static_cast<double>(i) /
                                   static_cast<double>(n - 1);
    out.x[static_cast<std::size_t>(i)] = theta;
    const double mean = malus_model(theta, spec.amplitude, spec.theta0_deg, baseline);
    const double noisy = mean * (1.0 + spec.relative_noise * rng.normal());
    out.y[static_cast<std::size_t>(i)] = std::max(noisy, 0.0);
  }
  return out;
}

SynthDataset synth_power(const SynthPowerSpec& spec) {
  if (spec.points < 3) throw std::invalid_argument("power synth needs >= 3 points");
  if (!(spec.prefactor > 0.0) || !(spec.x_min > 0.0) || !(spec.x_max > spec.x_min)) {
    throw std::invalid_argument("power synth needs positive prefactor and 0 < x_min < x_max");
  }
  if (spec.relative_noise < 0.0) {
    throw std::invalid_argument("power synth needs nonnegative noise");
  }

  DeterministicRng rng(spec.seed);
  SynthDataset out;
  const int n = spec.points;
  out.x.resize(static_cast<std::size_t>(n));
  out.y.resize(static_cast<std::size_t>(n));
  const double log_lo = std::log(spec.x_min);
  const double log_hi = std::log(spec.x_max);
  for (int i = 0; i < n; ++i) {
    const double x = std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) /
                                          static_cast<double>(n - 1));
    const double mean = spec.prefactor * std::pow(x, spec.exponent);
    const double noisy = mean * (1.0 + spec.relative_noise * rng.normal());
    out.x[static_cast<std::size_t>(i)] = x;
    out.y[static_cast<std::size_t>(i)] = std::max(noisy, 1e-12 * mean);
  }
  return out;
}

} // namespace floq
