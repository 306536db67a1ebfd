#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "floq/model.hpp"
#include "floq/synth.hpp"

namespace floq {

// Configuration blocks mirror the JSON config file one to one.  Parsing is
// strict: unknown keys, wrong types, and out-of-range values raise
// ConfigError with the offending JSON pointer in the message.

struct SystemConfig {
  // Either a named preset ("canonical") or explicit arrays.  Couplings come
  // in one of two forms: a full per-transition list (couplings_rad_s), or a
  // base coupling plus ratios of each higher transition to the base
  // (coupling_base_rad_s + coupling_ratios, one ratio per transition past
  // the first).
  std::string preset;  // empty when explicit
  std::vector<double> level_energies_eV;
  std::vector<std::string> parities;       // "even" | "odd"
  std::vector<double> couplings_rad_s;     // per upward transition
  double coupling_base_rad_s = 0.0;        // 0 = unset
  std::vector<double> coupling_ratios;     // b_k / b_0 for k >= 1
  LadderSystem build() const;
};

struct SpectrumConfig {
  double start_eV = 0.0;
  double stop_eV = 0.0;
  double coarse_step_eV = 5e-4;
  double amplitude_scale = 1.0;
  double convolution_fwhm_eV = 0.0;
  // Optional explicit grid; overrides start/stop/step when nonempty.
  std::vector<double> explicit_grid_eV;
};

struct QuasienergyConfig {
  double start_eV = 0.0;
  double stop_eV = 0.0;
  double step_eV = 1e-3;
  double amplitude_scale = 1.0;
};

struct PulseScanConfig {
  double start_eV = 0.0;
  double stop_eV = 0.0;
  double step_eV = 1e-3;
  double peak_scale = 1.0;
  double duration_fwhm_s = 0.0;
  int target_level = 1;
  double window_fwhm_multiple = 4.0;
};

struct PowerScanConfig {
  double photon_energy_eV = 0.0;
  // Either an explicit list of peak scales or a log-spaced range.
  std::vector<double> peak_scales;
  double scale_min = 0.0;
  double scale_max = 0.0;
  int points = 0;
  double duration_fwhm_s = 0.0;
  int target_level = 1;
  double window_fwhm_multiple = 4.0;
  std::vector<double> resolve_scales() const;
};

struct FitConfig {
  std::string model;      // "emg" | "malus" | "power"
  std::string input_csv;  // two-column x,y (header optional)
  std::string weights = "none";  // "none" | "poisson"
  // emg only: pin the instrument-response width instead of fitting it.
  std::optional<double> fixed_sigma;
};

struct SynthConfig {
  std::string kind;  // "lifetime" | "malus" | "power"
  std::uint64_t seed = 1;
  SynthLifetimeSpec lifetime;
  SynthMalusSpec malus;
  SynthPowerSpec power;
};

struct OutputConfig {
  // Default artifact directory; the --out flag overrides it.
  std::string directory = ".";
  // Which artifact families to write.  CSV covers data tables, JSON covers
  // result sidecars (resonance lists, fit reports).  Run manifests are
  // always written: they are the reproduction record, not data.
  bool csv = true;
  bool json = true;
};

struct Config {
  SystemConfig system;
  std::optional<SpectrumConfig> spectrum;
  std::optional<QuasienergyConfig> quasienergies;
  std::optional<PulseScanConfig> pulse_scan;
  std::optional<PowerScanConfig> power_scan;
  std::optional<FitConfig> fit;
  std::optional<SynthConfig> synth;
  std::optional<OutputConfig> output;
};

// Parse a config file (JSON).  Throws ConfigError on I/O or schema errors.
Config load_config(const std::string& path);
Config parse_config_json(const std::string& json_text, const std::string& origin);

} // namespace floq
