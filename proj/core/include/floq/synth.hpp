#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace floq {

// Deterministic random stream for synthetic data sets.  The engine is
// std::mt19937_64 (bit-exact by the standard); the output transforms
// (uniform, normal, Poisson) are implemented here because the std::
// distribution objects are implementation-defined and would break
// cross-platform byte-identical artifacts.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed);

  std::uint64_t next_u64();
  // Uniform on [0, 1): top 53 bits of the raw draw.
  double uniform01();
  // Uniform on [lo, hi).
  double uniform(double lo, double hi);
  // Standard normal via Box-Muller (pairs cached).
  double normal();
  double normal(double mean, double stddev);
  // Poisson: Knuth product method for mean < 30, rounded-normal
  // approximation max(0, round(mean + sqrt(mean) z)) above.
  long poisson(double mean);

 private:
  std::mt19937_64 engine_;
  bool have_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

// Time-resolved decay histogram: Poisson counts around an EMG decay curve
// scaled so the noiseless peak equals peak_counts.
struct SynthLifetimeSpec {
  double peak_counts = 1.0e4;
  double mu_ps = 500.0;     // Gaussian response center
  double sigma_ps = 80.0;   // Gaussian response width
  double tau_ps = 260.0;    // decay constant
  double baseline = 20.0;   // dark counts per bin
  double t_start_ps = 0.0;
  double t_stop_ps = 3000.0;
  int bins = 600;
  std::uint64_t seed = 1;
};

// Polarizer-angle transmission curve with multiplicative Gaussian noise.
// The baseline is set from the target degree of linear polarization:
// baseline = amplitude (1 - dolp) / (2 dolp).
struct SynthMalusSpec {
  double amplitude = 900.0;
  double dolp = 0.87;
  double theta0_deg = 37.0;
  double theta_start_deg = 0.0;
  double theta_stop_deg = 360.0;
  int points = 73;
  double relative_noise = 0.03;
  std::uint64_t seed = 1;
};

// Power-law points y = prefactor * x^exponent with multiplicative Gaussian
// noise, log-spaced over [x_min, x_max].
struct SynthPowerSpec {
  double prefactor = 3.0e-4;
  double exponent = 3.0;
  double x_min = 0.5;
  double x_max = 5.0;
  int points = 12;
  double relative_noise = 0.05;
  std::uint64_t seed = 1;
};

struct SynthDataset {
  std::vector<double> x;
  std::vector<double> y;
};

SynthDataset synth_lifetime(const SynthLifetimeSpec& spec);
SynthDataset synth_malus(const SynthMalusSpec& spec);
SynthDataset synth_power(const SynthPowerSpec& spec);

} // namespace floq
