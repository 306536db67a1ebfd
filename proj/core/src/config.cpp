#include "floq/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "floq/errors.hpp"

namespace floq {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& path,
                       const std::string& what) {
  throw ConfigError(origin + ": " + path + ": " + what);
}

void require_object(const json& value, const std::string& origin,
                    const std::string& path) {
  if (!value.is_object()) fail(origin, path, "expected an object");
}

void reject_unknown_keys(const json& object, const std::string& origin,
                         const std::string& path,
                         std::initializer_list<const char*> allowed) {
  for (const auto& item : object.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* key) { return item.key() == key; });
    if (!known) fail(origin, path + "/" + item.key(), "unknown key");
  }
}

double as_double(const json& value, const std::string& origin,
                 const std::string& path) {
  if (!value.is_number()) fail(origin, path, "expected a number");
  return value.get<double>();
}

int as_int(const json& value, const std::string& origin, const std::string& path) {
  if (!value.is_number_integer()) fail(origin, path, "expected an integer");
  return value.get<int>();
}

std::uint64_t as_seed(const json& value, const std::string& origin,
                      const std::string& path) {
  if (!value.is_number_integer() || value.get<long long>() < 0) {
    fail(origin, path, "expected a nonnegative integer");
  }
  return value.get<std::uint64_t>();
}

std::string as_string(const json& value, const std::string& origin,
                      const std::string& path) {
  if (!value.is_string()) fail(origin, path, "expected a string");
  return value.get<std::string>();
}

std::vector<double> as_double_array(const json& value, const std::string& origin,
                                    const std::string& path) {
  if (!value.is_array()) fail(origin, path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(as_double(value[i], origin, path + "/" + std::to_string(i)));
  }
  return out;
}

// Fetch helpers: `get` for required keys, `opt` to overwrite a default.
const json& get(const json& object, const char* key, const std::string& origin,
                const std::string& path) {
  const auto it = object.find(key);
  if (it == object.end()) fail(origin, path, std::string("missing key \"") + key + "\"");
  return *it;
}

template <typename T, typename Fn>
void opt(const json& object, const char* key, const std::string& origin,
         const std::string& path, T& target, Fn convert) {
  const auto it = object.find(key);
  if (it != object.end()) target = convert(*it, origin, path + "/" + key);
}

void require_positive(double value, const std::string& origin,
                      const std::string& path) {
  if (!(value > 0.0)) fail(origin, path, "must be > 0");
}

void require_range(double start, double stop, const std::string& origin,
                   const std::string& path) {
  if (!(start < stop)) fail(origin, path, "requires start < stop");
}

void require_nonnegative(double value, const std::string& origin,
                         const std::string& path) {
  if (!(value >= 0.0)) fail(origin, path, "must be >= 0");
}

SystemConfig parse_system(const json& value, const std::string& origin) {
  const std::string path = "/system";
  require_object(value, origin, path);
  reject_unknown_keys(value, origin, path,
                      {"preset", "level_energies_eV", "parities", "couplings_rad_s",
                       "coupling_base_rad_s", "coupling_ratios"});
  SystemConfig system;
  opt(value, "preset", origin, path, system.preset, as_string);
  const bool has_explicit = value.contains("level_energies_eV") ||
                            value.contains("parities") ||
                            value.contains("couplings_rad_s") ||
                            value.contains("coupling_base_rad_s") ||
                            value.contains("coupling_ratios");
  if (!system.preset.empty() && has_explicit) {
    fail(origin, path, "give either \"preset\" or explicit arrays, not both");
  }
  if (system.preset.empty() && !has_explicit) {
    fail(origin, path, "missing \"preset\" or explicit level arrays");
  }
  if (has_explicit) {
    system.level_energies_eV =
        as_double_array(get(value, "level_energies_eV", origin, path), origin,
                        path + "/level_energies_eV");
    const json& parities = get(value, "parities", origin, path);
    if (!parities.is_array()) fail(origin, path + "/parities", "expected an array");
    for (std::size_t i = 0; i < parities.size(); ++i) {
      system.parities.push_back(as_string(parities[i], origin,
                                          path + "/parities/" + std::to_string(i)));
    }
    const bool has_list = value.contains("couplings_rad_s");
    const bool has_base = value.contains("coupling_base_rad_s");
    if (has_list == has_base) {
      fail(origin, path,
           "give either \"couplings_rad_s\" or \"coupling_base_rad_s\" (+ "
           "\"coupling_ratios\"), not both");
    }
    if (has_list) {
      if (value.contains("coupling_ratios")) {
        fail(origin, path + "/coupling_ratios",
             "only valid together with \"coupling_base_rad_s\"");
      }
      system.couplings_rad_s =
          as_double_array(get(value, "couplings_rad_s", origin, path), origin,
                          path + "/couplings_rad_s");
    } else {
      system.coupling_base_rad_s =
          as_double(get(value, "coupling_base_rad_s", origin, path), origin,
                    path + "/coupling_base_rad_s");
      require_positive(system.coupling_base_rad_s, origin,
                       path + "/coupling_base_rad_s");
      opt(value, "coupling_ratios", origin, path, system.coupling_ratios,
          as_double_array);
      for (double ratio : system.coupling_ratios) {
        if (!(ratio >= 0.0)) fail(origin, path + "/coupling_ratios", "must be >= 0");
      }
    }
  }
  return system;
}

SpectrumConfig parse_spectrum(const json& value, const std::string& origin) {
  const std::string path = "/spectrum";
  require_object(value, origin, path);
  reject_unknown_keys(value, origin, path,
                      {"start_eV", "stop_eV", "coarse_step_eV", "amplitude_scale",
                       "convolution_fwhm_eV", "grid_eV"});
  SpectrumConfig spectrum;
  spectrum.convolution_fwhm_eV =
      as_double(get(value, "convolution_fwhm_eV", origin, path), origin,
                path + "/convolution_fwhm_eV");
  require_positive(spectrum.convolution_fwhm_eV, origin, path + "/convolution_fwhm_eV");
  opt(value, "amplitude_scale", origin, path, spectrum.amplitude_scale, as_double);
  require_nonnegative(spectrum.amplitude_scale, origin, path + "/amplitude_scale");
  opt(value, "grid_eV", origin, path, spectrum.explicit_grid_eV, as_double_array);
  if (!spectrum.explicit_grid_eV.empty()) {
    if (value.contains("start_eV") || value.contains("stop_eV") ||
        value.contains("coarse_step_eV")) {
      fail(origin, path, "give either \"grid_eV\" or start/stop/step, not both");
    }
    return spectrum;
  }
  spectrum.start_eV = as_double(get(value, "start_eV", origin, path), origin,
                                path + "/start_eV");
  spectrum.stop_eV = as_double(get(value, "stop_eV", origin, path), origin,
                               path + "/stop_eV");
  require_positive(spectrum.start_eV, origin, path + "/start_eV");
  require_range(spectrum.start_eV, spectrum.stop_eV, origin, path);
  opt(value, "coarse_step_eV", origin, path, spectrum.coarse_step_eV, as_double);
  require_positive(spectrum.coarse_step_eV, origin, path + "/coarse_step_eV");
  return spectrum;
}

QuasienergyConfig parse_quasienergies(const json& value, const std::string& origin) {
  const std::string path = "/quasienergies";
  require_object(value, origin, path);
  reject_unknown_keys(value, origin, path,
                      {"start_eV", "stop_eV", "step_eV", "amplitude_scale"});
  QuasienergyConfig config;
  config.start_eV =
      as_double(get(value, "start_eV", origin, path), origin, path + "/start_eV");
  config.stop_eV =
      as_double(get(value, "stop_eV", origin, path), origin, path + "/stop_eV");
  require_positive(config.start_eV, origin, path + "/start_eV");
  require_range(config.start_eV, config.stop_eV, origin, path);
  opt(value, "step_eV", origin, path, config.step_eV, as_double);
  require_positive(config.step_eV, origin, path + "/step_eV");
  opt(value, "amplitude_scale", origin, path, config.amplitude_scale, as_double);
  require_nonnegative(config.amplitude_scale, origin, path + "/amplitude_scale");
  return config;
}

PulseScanConfig parse_pulse_scan(const json& value, const std::string& origin) {
  const std::string path = "/pulse_scan";
  require_object(value, origin, path);
  reject_unknown_keys(value, origin, path,
                      {"start_eV", "stop_eV", "step_eV", "peak_scale",
                       "duration_fwhm_s", "target_level", "window_fwhm_multiple"});
  PulseScanConfig config;
  config.start_eV =
      as_double(get(value, "start_eV", origin, path), origin, path + "/start_eV");
  config.stop_eV =
      as_double(get(value, "stop_eV", origin, path), origin, path + "/stop_eV");
  require_positive(config.start_eV, origin, path + "/start_eV");
  require_range(config.start_eV, config.stop_eV, origin, path);
  opt(value, "step_eV", origin, path, config.step_eV, as_double);
  require_positive(config.step_eV, origin, path + "/step_eV");
  opt(value, "peak_scale", origin, path, config.peak_scale, as_double);
  require_positive(config.peak_scale, origin, path + "/peak_scale");
  config.duration_fwhm_s =
      as_double(get(value, "duration_fwhm_s", origin, path), origin,
                path + "/duration_fwhm_s");
  require_positive(config.duration_fwhm_s, origin, path + "/duration_fwhm_s");
  opt(value, "target_level", origin, path, config.target_level, as_int);
  if (config.target_level < 0) fail(origin, path + "/target_level", "must be >= 0");
  opt(value, "window_fwhm_multiple", origin, path, config.window_fwhm_multiple,
      as_double);
  return config;
}

PowerScanConfig parse_power_scan(const json& value, const std::string& origin) {
  const std::string path = "/power_scan";
  require_object(value, origin, path);
  reject_unknown_keys(value, origin, path,
                      {"photon_energy_eV", "peak_scales", "scale_min", "scale_max",
                       "points", "duration_fwhm_s", "target_level",
                       "window_fwhm_multiple"});
  PowerScanConfig config;
  config.photon_energy_eV =
      as_double(get(value, "photon_energy_eV", origin, path), origin,
                path + "/photon_energy_eV");
  require_positive(config.photon_energy_eV, origin, path + "/photon_energy_eV");
  const bool has_list = value.contains("peak_scales");
  const bool has_range = value.contains("scale_min") || value.contains("scale_max") ||
                         value.contains("points");
  if (has_list == has_range) {
    fail(origin, path, "give either \"peak_scales\" or scale_min/scale_max/points");
  }
  if (has_list) {
    config.peak_scales = as_double_array(get(value, "peak_scales", origin, path),
                                         origin, path + "/peak_scales");
    if (config.peak_scales.size() < 2) {
      fail(origin, path + "/peak_scales", "need at least 2 scales");
    }
    for (double s : config.peak_scales) {
      if (!(s > 0.0)) fail(origin, path + "/peak_scales", "scales must be > 0");
    }
  } else {
    config.scale_min = as_double(get(value, "scale_min", origin, path), origin,
                                 path + "/scale_min");
    config.scale_max = as_double(get(value, "scale_max", origin, path), origin,
                                 path + "/scale_max");
    config.points =
        as_int(get(value, "points", origin, path), origin, path + "/points");
    require_positive(config.scale_min, origin, path + "/scale_min");
    require_range(config.scale_min, config.scale_max, origin, path);
    if (config.points < 2) fail(origin, path + "/points", "need at least 2 points");
  }
  config.duration_fwhm_s =
      as_double(get(value, "duration_fwhm_s", origin, path), origin,
                path + "/duration_fwhm_s");
  require_positive(config.duration_fwhm_s, origin, path + "/duration_fwhm_s");
  opt(value, "target_level", origin, path, config.target_level, as_int);
  if (config.target_level < 0) fail(origin, path + "/target_level", "must be >= 0");
  opt(value, "window_fwhm_multiple", origin, path, config.window_fwhm_multiple,
      as_double);
  return config;
}

FitConfig parse_fit(const json& value, const std::string& origin) {
  const std::string path = "/fit";
  require_object(value, origin, path);
  reject_unknown_keys(value, origin, path,
                      {"model", "input_csv", "weights", "fixed_sigma"});
  FitConfig config;
  config.model = as_string(get(value, "model", origin, path), origin, path + "/model");
  if (config.model != "emg" && config.model != "malus" && config.model != "power") {
    fail(origin, path + "/model", "expected \"emg\", \"malus\", or \"power\"");
  }
  config.input_csv =
      as_string(get(value, "input_csv", origin, path), origin, path + "/input_csv");
  opt(value, "weights", origin, path, config.weights, as_string);
  if (config.weights != "none" && config.weights != "poisson") {
    fail(origin, path + "/weights", "expected \"none\" or \"poisson\"");
  }
  if (value.contains("fixed_sigma")) {
    if (config.model != "emg") {
      fail(origin, path + "/fixed_sigma", "only valid for the emg model");
    }
    const double sigma =
        as_double(value["fixed_sigma"], origin, path + "/fixed_sigma");
    require_positive(sigma, origin, path + "/fixed_sigma");
    config.fixed_sigma = sigma;
  }
  return config;
}

SynthConfig parse_synth(const json& value, const std::string& origin) {
  const std::string path = "/synth";
  require_object(value, origin, path);
  reject_unknown_keys(value, origin, path, {"kind", "seed", "lifetime", "malus", "power"});
  SynthConfig config;
  config.kind = as_string(get(value, "kind", origin, path), origin, path + "/kind");
  if (config.kind != "lifetime" && config.kind != "malus" && config.kind != "power") {
    fail(origin, path + "/kind", "expected \"lifetime\", \"malus\", or \"power\"");
  }
  opt(value, "seed", origin, path, config.seed, as_seed);
  for (const char* other : {"lifetime", "malus", "power"}) {
    if (other != config.kind && value.contains(other)) {
      fail(origin, path + "/" + other, "does not match \"kind\"");
    }
  }
  if (config.kind == "lifetime" && value.contains("lifetime")) {
    const json& block = value["lifetime"];
    const std::string sub = path + "/lifetime";
    require_object(block, origin, sub);
    reject_unknown_keys(block, origin, sub,
                        {"peak_counts", "mu_ps", "sigma_ps", "tau_ps", "baseline",
                         "t_start_ps", "t_stop_ps", "bins"});
    opt(block, "peak_counts", origin, sub, config.lifetime.peak_counts, as_double);
    opt(block, "mu_ps", origin, sub, config.lifetime.mu_ps, as_double);
    opt(block, "sigma_ps", origin, sub, config.lifetime.sigma_ps, as_double);
    opt(block, "tau_ps", origin, sub, config.lifetime.tau_ps, as_double);
    opt(block, "baseline", origin, sub, config.lifetime.baseline, as_double);
    opt(block, "t_start_ps", origin, sub, config.lifetime.t_start_ps, as_double);
    opt(block, "t_stop_ps", origin, sub, config.lifetime.t_stop_ps, as_double);
    opt(block, "bins", origin, sub, config.lifetime.bins, as_int);
  } else if (config.kind == "malus" && value.contains("malus")) {
    const json& block = value["malus"];
    const std::string sub = path + "/malus";
    require_object(block, origin, sub);
    reject_unknown_keys(block, origin, sub,
                        {"amplitude", "dolp", "theta0_deg", "theta_start_deg",
                         "theta_stop_deg", "points", "relative_noise"});
    opt(block, "amplitude", origin, sub, config.malus.amplitude, as_double);
    opt(block, "dolp", origin, sub, config.malus.dolp, as_double);
    opt(block, "theta0_deg", origin, sub, config.malus.theta0_deg, as_double);
    opt(block, "theta_start_deg", origin, sub, config.malus.theta_start_deg, as_double);
    opt(block, "theta_stop_deg", origin, sub, config.malus.theta_stop_deg, as_double);
    opt(block, "points", origin, sub, config.malus.points, as_int);
    opt(block, "relative_noise", origin, sub, config.malus.relative_noise, as_double);
  } else if (config.kind == "power" && value.contains("power")) {
    const json& block = value["power"];
    const std::string sub = path + "/power";
    require_object(block, origin, sub);
    reject_unknown_keys(block, origin, sub,
                        {"prefactor", "exponent", "x_min", "x_max", "points",
                         "relative_noise"});
    opt(block, "prefactor", origin, sub, config.power.prefactor, as_double);
    opt(block, "exponent", origin, sub, config.power.exponent, as_double);
    opt(block, "x_min", origin, sub, config.power.x_min, as_double);
    opt(block, "x_max", origin, sub, config.power.x_max, as_double);
    opt(block, "points", origin, sub, config.power.points, as_int);
    opt(block, "relative_noise", origin, sub, config.power.relative_noise, as_double);
  }
  config.lifetime.seed = config.seed;
  config.malus.seed = config.seed;
  config.power.seed = config.seed;
  return config;
}

OutputConfig parse_output(const json& value, const std::string& origin) {
  const std::string path = "/output";
  require_object(value, origin, path);
  reject_unknown_keys(value, origin, path, {"directory", "formats"});
  OutputConfig config;
  opt(value, "directory", origin, path, config.directory, as_string);
  if (config.directory.empty()) fail(origin, path + "/directory", "must not be empty");
  if (value.contains("formats")) {
    const json& formats = value["formats"];
    if (!formats.is_array() || formats.empty()) {
      fail(origin, path + "/formats", "expected a nonempty array of format names");
    }
    config.csv = false;
    config.json = false;
    for (std::size_t i = 0; i < formats.size(); ++i) {
      const std::string name =
          as_string(formats[i], origin, path + "/formats/" + std::to_string(i));
      if (name == "csv") {
        config.csv = true;
      } else if (name == "json") {
        config.json = true;
      } else {
        fail(origin, path + "/formats/" + std::to_string(i),
             "expected \"csv\" or \"json\"");
      }
    }
  }
  return config;
}

} // namespace

LadderSystem SystemConfig::build() const {
  try {
    if (!preset.empty()) {
      if (preset == "canonical") return canonical_system();
      throw ConfigError("unknown system preset \"" + preset + "\"");
    }
    LadderSystem system;
    system.level_energies_eV = level_energies_eV;
    for (const std::string& parity : parities) {
      if (parity == "even") {
        system.parities.push_back(Parity::Even);
      } else if (parity == "odd") {
        system.parities.push_back(Parity::Odd);
      } else {
        throw ConfigError("parity must be \"even\" or \"odd\", got \"" + parity + "\"");
      }
    }
    if (!couplings_rad_s.empty()) {
      system.couplings_rad_s = couplings_rad_s;
    } else if (coupling_base_rad_s > 0.0) {
      const std::size_t transitions =
          level_energies_eV.empty() ? 0 : level_energies_eV.size() - 1;
      if (coupling_ratios.size() + 1 != transitions) {
        throw ConfigError(
            "coupling_ratios needs one entry per transition past the first (" +
            std::to_string(transitions == 0 ? 0 : transitions - 1) + " for " +
            std::to_string(level_energies_eV.size()) + " levels), got " +
            std::to_string(coupling_ratios.size()));
      }
      system.couplings_rad_s.push_back(coupling_base_rad_s);
      for (double ratio : coupling_ratios) {
        system.couplings_rad_s.push_back(coupling_base_rad_s * ratio);
      }
    }
    system.validate();
    return system;
  } catch (const std::invalid_argument& error) {
    throw ConfigError(std::string("system: ") + error.what());
  }
}

std::vector<double> PowerScanConfig::resolve_scales() const {
  if (!peak_scales.empty()) return peak_scales;
  if (!(scale_min > 0.0) || !(scale_max > scale_min) || points < 2) {
    throw ConfigError("power scan needs 0 < scale_min < scale_max and points >= 2");
  }
  std::vector<double> scales(static_cast<std::size_t>(points));
  const double log_min = std::log(scale_min);
  const double log_max = std::log(scale_max);
  for (int i = 0; i < points; ++i) {
    scales[static_cast<std::size_t>(i)] =
        std::exp(log_min + (log_max - log_min) * i / (points - 1));
  }
  scales.front() = scale_min;
  scales.back() = scale_max;
  return scales;
}

Config parse_config_json(const std::string& json_text, const std::string& origin) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& error) {
    throw ConfigError(origin + ": JSON parse error: " + error.what());
  }
  require_object(root, origin, "/");
  reject_unknown_keys(root, origin, "",
                      {"system", "spectrum", "quasienergies", "pulse_scan",
                       "power_scan", "fit", "synth", "output"});
  Config config;
  config.system = parse_system(get(root, "system", origin, "/"), origin);
  if (root.contains("spectrum")) {
    config.spectrum = parse_spectrum(root["spectrum"], origin);
  }
  if (root.contains("quasienergies")) {
    config.quasienergies = parse_quasienergies(root["quasienergies"], origin);
  }
  if (root.contains("pulse_scan")) {
    config.pulse_scan = parse_pulse_scan(root["pulse_scan"], origin);
  }
  if (root.contains("power_scan")) {
    config.power_scan = parse_power_scan(root["power_scan"], origin);
  }
  if (root.contains("fit")) config.fit = parse_fit(root["fit"], origin);
  if (root.contains("synth")) config.synth = parse_synth(root["synth"], origin);
  if (root.contains("output")) config.output = parse_output(root["output"], origin);
  return config;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_json(buffer.str(), path);
}

} // namespace floq
