#include "floq/io.hpp"

#include <array>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "floq/errors.hpp"
#include "floq/version.hpp"

namespace floq {

namespace {

// All artifacts use '\n' line endings and %.16e floats regardless of
// platform so identical inputs produce byte-identical files.
std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  return out;
}

std::string json_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size() + 8);
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
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

bool parse_double(const std::string& token, double& value) {
  const char* begin = token.c_str();
  char* end = nullptr;
  value = std::strtod(begin, &end);
  if (end == begin) return false;
  while (*end == ' ' || *end == '\t') ++end;
  return *end == '\0';
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) {
    std::size_t begin = field.find_first_not_of(" \t\r");
    std::size_t finish = field.find_last_not_of(" \t\r");
    fields.push_back(begin == std::string::npos
                         ? std::string()
                         : field.substr(begin, finish - begin + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

} // namespace

std::string format_float(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.16e", value);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size() || columns.empty()) {
    throw std::invalid_argument("write_csv: header/column count mismatch");
  }
  const std::size_t rows = columns.front().size();
  for (const auto& column : columns) {
    if (column.size() != rows) {
      throw std::invalid_argument("write_csv: ragged columns");
    }
  }
  std::ofstream out = open_output(path);
  for (std::size_t c = 0; c < header.size(); ++c) {
    out << (c ? "," : "") << header[c];
  }
  out << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << (c ? "," : "") << format_float(columns[c][r]);
    }
    out << '\n';
  }
  if (!out) throw ConfigError("failed writing " + path);
}

void write_spectrum_csv(const std::string& path, const SpectrumResult& spectrum) {
  write_csv(path, {"photon_energy_eV", "pbar_raw", "pbar_convolved"},
            {spectrum.photon_energies_eV, spectrum.raw, spectrum.convolved});
}

void write_resonances_json(const std::string& path,
                           const std::vector<Resonance>& resonances) {
  std::ofstream out = open_output(path);
  out << "[\n";
  for (std::size_t i = 0; i < resonances.size(); ++i) {
    const Resonance& res = resonances[i];
    out << "  {\"center_eV\": " << format_float(res.center_eV)
        << ", \"height\": " << format_float(res.height)
        << ", \"fwhm_eV\": " << format_float(res.fwhm_eV)
        << ", \"order\": " << res.order << "}"
        << (i + 1 < resonances.size() ? "," : "") << '\n';
  }
  out << "]\n";
  if (!out) throw ConfigError("failed writing " + path);
}

void write_quasienergy_csv(const std::string& path,
                           const std::vector<QuasienergyPoint>& points) {
  if (points.empty()) throw std::invalid_argument("no quasienergy points to write");
  const std::size_t n = points.front().quasienergies_eV.size();
  std::vector<std::string> header = {"photon_energy_eV"};
  for (std::size_t k = 0; k < n; ++k) {
    header.push_back("eps_" + std::to_string(k) + "_eV");
  }
  std::vector<std::vector<double>> columns(n + 1);
  for (const QuasienergyPoint& point : points) {
    columns[0].push_back(point.photon_energy_eV);
    // Column k follows branch k: invert the mode -> branch map.
    for (std::size_t mode = 0; mode < n; ++mode) {
      columns[static_cast<std::size_t>(point.branch_labels[mode]) + 1].push_back(
          point.quasienergies_eV[mode]);
    }
  }
  write_csv(path, header, columns);
}

void write_trajectory_csv(const std::string& path, const Trajectory& trajectory) {
  if (trajectory.states.empty()) {
    throw std::invalid_argument("no trajectory samples to write");
  }
  const std::size_t n = static_cast<std::size_t>(trajectory.states.front().size());
  std::vector<std::string> header = {"t_s"};
  for (std::size_t k = 0; k < n; ++k) {
    header.push_back("re_a_" + std::to_string(k));
    header.push_back("im_a_" + std::to_string(k));
    header.push_back("pop_" + std::to_string(k));
  }
  std::vector<std::vector<double>> columns(1 + 3 * n);
  columns[0] = trajectory.times_s();
  for (const auto& state : trajectory.states) {
    for (std::size_t k = 0; k < n; ++k) {
      columns[1 + 3 * k].push_back(state(static_cast<long>(k)).real());
      columns[2 + 3 * k].push_back(state(static_cast<long>(k)).imag());
      columns[3 + 3 * k].push_back(std::norm(state(static_cast<long>(k))));
    }
  }
  write_csv(path, header, columns);
}

void write_pulse_scan_csv(const std::string& path,
                          const std::vector<PulseScanPoint>& points) {
  std::vector<double> energy, population;
  for (const PulseScanPoint& p : points) {
    energy.push_back(p.photon_energy_eV);
    population.push_back(p.excited_population);
  }
  write_csv(path, {"photon_energy_eV", "excited_population"}, {energy, population});
}

void write_power_scan_csv(const std::string& path,
                          const std::vector<PowerScanPoint>& points) {
  std::vector<double> scale, intensity, population;
  for (const PowerScanPoint& p : points) {
    scale.push_back(p.peak_scale);
    intensity.push_back(p.intensity_proxy);
    population.push_back(p.excited_population);
  }
  write_csv(path, {"peak_scale", "intensity_proxy", "excited_population"},
            {scale, intensity, population});
}

void write_fit_json(const std::string& path, const std::string& model,
                    const std::vector<std::string>& parameter_names,
                    const FitResult& result,
                    const std::vector<std::pair<std::string, double>>& derived) {
  if (parameter_names.size() != result.parameters.size()) {
    throw std::invalid_argument("fit JSON: parameter name count mismatch");
  }
  std::ofstream out = open_output(path);
  out << "{\n";
  out << "  \"model\": \"" << json_escape(model) << "\",\n";
  out << "  \"converged\": " << (result.converged ? "true" : "false") << ",\n";
  out << "  \"iterations\": " << result.iterations << ",\n";
  out << "  \"chi2\": " << format_float(result.chi2) << ",\n";
  out << "  \"degrees_of_freedom\": " << result.degrees_of_freedom << ",\n";
  out << "  \"parameters\": {\n";
  for (std::size_t j = 0; j < parameter_names.size(); ++j) {
    out << "    \"" << json_escape(parameter_names[j]) << "\": {\"value\": "
        << format_float(result.parameters[j]) << ", \"stderr\": "
        << format_float(j < result.standard_errors.size()
                            ? result.standard_errors[j]
                            : 0.0)
        << "}" << (j + 1 < parameter_names.size() ? "," : "") << '\n';
  }
  out << "  },\n";
  out << "  \"derived\": {";
  for (std::size_t j = 0; j < derived.size(); ++j) {
    out << (j ? ", " : "") << "\"" << json_escape(derived[j].first)
        << "\": " << format_float(derived[j].second);
  }
  out << "},\n";
  out << "  \"message\": \"" << json_escape(result.message) << "\"\n";
  out << "}\n";
  if (!out) throw ConfigError("failed writing " + path);
}

void write_xy_csv(const std::string& path, const std::string& x_name,
                  const std::string& y_name, const std::vector<double>& x,
                  const std::vector<double>& y) {
  write_csv(path, {x_name, y_name}, {x, y});
}

XyData read_xy_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open CSV file: " + path);
  XyData data;
  std::string line;
  std::size_t line_number = 0;
  std::size_t expected_columns = 0;
  bool saw_data = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv_row(line);
    double x = 0.0, y = 0.0, y_err = 0.0;
    const bool numeric =
        fields.size() >= 2 && parse_double(fields[0], x) && parse_double(fields[1], y) &&
        (fields.size() < 3 || parse_double(fields[2], y_err));
    if (!numeric) {
      if (!saw_data && line_number == 1) continue;  // header row
      throw ConfigError(path + ":" + std::to_string(line_number) +
                        ": malformed CSV row: " + line);
    }
    if (fields.size() != 2 && fields.size() != 3) {
      throw ConfigError(path + ":" + std::to_string(line_number) +
                        ": expected 2 or 3 columns, got " +
                        std::to_string(fields.size()));
    }
    if (expected_columns == 0) {
      expected_columns = fields.size();
    } else if (fields.size() != expected_columns) {
      throw ConfigError(path + ":" + std::to_string(line_number) +
                        ": inconsistent column count");
    }
    data.x.push_back(x);
    data.y.push_back(y);
    if (fields.size() == 3) data.y_err.push_back(y_err);
    saw_data = true;
  }
  if (!saw_data) throw ConfigError(path + ": no data rows");
  return data;
}

int CsvTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<int>(i);
  }
  return -1;
}

CsvTable read_csv_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open CSV file: " + path);
  CsvTable table;
  std::string line;
  std::size_t line_number = 0;
  bool saw_data = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv_row(line);
    std::vector<double> values(fields.size());
    bool numeric = !fields.empty();
    for (std::size_t c = 0; c < fields.size() && numeric; ++c) {
      numeric = parse_double(fields[c], values[c]);
    }
    if (!numeric) {
      if (!saw_data && table.names.empty() && line_number == 1) {
        table.names = fields;
        continue;
      }
      throw ConfigError(path + ":" + std::to_string(line_number) +
                        ": malformed CSV row: " + line);
    }
    if (!saw_data) {
      if (table.names.empty()) {
        for (std::size_t c = 0; c < fields.size(); ++c) {
          table.names.push_back("col" + std::to_string(c));
        }
      } else if (table.names.size() != fields.size()) {
        throw ConfigError(path + ":" + std::to_string(line_number) +
                          ": row width differs from header width");
      }
      table.columns.resize(fields.size());
    } else if (fields.size() != table.columns.size()) {
      throw ConfigError(path + ":" + std::to_string(line_number) +
                        ": inconsistent column count");
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      table.columns[c].push_back(values[c]);
    }
    saw_data = true;
  }
  if (!saw_data) throw ConfigError(path + ": no data rows");
  return table;
}

namespace {

// Compact SHA-256 (FIPS 180-4).
struct Sha256 {
  std::uint32_t state[8] = {0x6a09e667u, 0xbb67ae85u, 0x3c6ef372u, 0xa54ff53au,
                            0x510e527fu, 0x9b05688cu, 0x1f83d9abu, 0x5be0cd19u};
  std::uint64_t total_bits = 0;
  std::array<std::uint8_t, 64> buffer{};
  std::size_t buffered = 0;

  static std::uint32_t rotr(std::uint32_t x, int n) {
    return (x >> n) | (x << (32 - n));
  }

  void process(const std::uint8_t* chunk) {
    static const std::uint32_t k[64] = {
        0x428a2f98u, 0x71374491u, 0xb5c0fbcfu, 0xe9b5dba5u, 0x3956c25bu,
        0x59f111f1u, 0x923f82a4u, 0xab1c5ed5u, 0xd807aa98u, 0x12835b01u,
        0x243185beu, 0x550c7dc3u, 0x72be5d74u, 0x80deb1feu, 0x9bdc06a7u,
        0xc19bf174u, 0xe49b69c1u, 0xefbe4786u, 0x0fc19dc6u, 0x240ca1ccu,
        0x2de92c6fu, 0x4a7484aau, 0x5cb0a9dcu, 0x76f988dau, 0x983e5152u,
        0xa831c66du, 0xb00327c8u, 0xbf597fc7u, 0xc6e00bf3u, 0xd5a79147u,
        0x06ca6351u, 0x14292967u, 0x27b70a85u, 0x2e1b2138u, 0x4d2c6dfcu,
        0x53380d13u, 0x650a7354u, 0x766a0abbu, 0x81c2c92eu, 0x92722c85u,
        0xa2bfe8a1u, 0xa81a664bu, 0xc24b8b70u, 0xc76c51a3u, 0xd192e819u,
        0xd6990624u, 0xf40e3585u, 0x106aa070u, 0x19a4c116u, 0x1e376c08u,
        0x2748774cu, 0x34b0bcb5u, 0x391c0cb3u, 0x4ed8aa4au, 0x5b9cca4fu,
        0x682e6ff3u, 0x748f82eeu, 0x78a5636fu, 0x84c87814u, 0x8cc70208u,
        0x90befffau, 0xa4506cebu, 0xbef9a3f7u, 0xc67178f2u};
    std::uint32_t w[64];
    for (int i = 0; i < 16; ++i) {
      w[i] = (static_cast<std::uint32_t>(chunk[4 * i]) << 24) |
             (static_cast<std::uint32_t>(chunk[4 * i + 1]) << 16) |
             (static_cast<std::uint32_t>(chunk[4 * i + 2]) << 8) |
             static_cast<std::uint32_t>(chunk[4 * i + 3]);
    }
    for (int i = 16; i < 64; ++i) {
      const std::uint32_t s0 =
          rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
      const std::uint32_t s1 =
          rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
      w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    std::uint32_t a = state[0], b = state[1], c = state[2], d = state[3];
    std::uint32_t e = state[4], f = state[5], g = state[6], h = state[7];
    for (int i = 0; i < 64; ++i) {
      const std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
      const std::uint32_t ch = (e & f) ^ (~e & g);
      const std::uint32_t temp1 = h + s1 + ch + k[i] + w[i];
      const std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
      const std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
      const std::uint32_t temp2 = s0 + maj;
      h = g;
      g = f;
      f = e;
      e = d + temp1;
      d = c;
      c = b;
      b = a;
      a = temp1 + temp2;
    }
    state[0] += a;
    state[1] += b;
    state[2] += c;
    state[3] += d;
    state[4] += e;
    state[5] += f;
    state[6] += g;
    state[7] += h;
  }

  void update(const std::uint8_t* data, std::size_t size) {
    total_bits += static_cast<std::uint64_t>(size) * 8;
    while (size > 0) {
      const std::size_t take = std::min(size, buffer.size() - buffered);
      std::memcpy(buffer.data() + buffered, data, take);
      buffered += take;
      data += take;
      size -= take;
      if (buffered == buffer.size()) {
        process(buffer.data());
        buffered = 0;
      }
    }
  }

  std::string finish() {
    const std::uint64_t bits = total_bits;
    const std::uint8_t pad = 0x80;
    update(&pad, 1);
    const std::uint8_t zero = 0x00;
    while (buffered != 56) update(&zero, 1);
    std::uint8_t length_bytes[8];
    for (int i = 0; i < 8; ++i) {
      length_bytes[i] = static_cast<std::uint8_t>(bits >> (56 - 8 * i));
    }
    update(length_bytes, 8);
    char hex[65];
    for (int i = 0; i < 8; ++i) {
      std::snprintf(hex + 8 * i, 9, "%08x", state[i]);
    }
    return std::string(hex, 64);
  }
};

} // namespace

std::string sha256_hex(const std::string& bytes) {
  Sha256 hasher;
  hasher.update(reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size());
  return hasher.finish();
}

void write_run_manifest(const std::string& path, const std::string& command,
                        const std::string& config_path,
                        const std::string& config_sha256,
                        const std::string& resolved_config_json, int threads,
                        double wall_seconds) {
  std::ofstream out = open_output(path);
  out << "{\n";
  out << "  \"tool\": \"floqladder\",\n";
  out << "  \"version\": \"" << version_string << "\",\n";
  out << "  \"command\": \"" << json_escape(command) << "\",\n";
  out << "  \"config_path\": \"" << json_escape(config_path) << "\",\n";
  out << "  \"config_sha256\": \"" << json_escape(config_sha256) << "\",\n";
  out << "  \"resolved_config\": "
      << (resolved_config_json.empty() ? "{}" : resolved_config_json) << ",\n";
  out << "  \"threads\": " << threads << ",\n";
  out << "  \"wall_seconds\": " << format_float(wall_seconds) << "\n";
  out << "}\n";
  if (!out) throw ConfigError("failed writing " + path);
}

void ensure_directory(const std::string& path) {
  std::error_code error;
  std::filesystem::create_directories(path, error);
  if (error) {
    throw ConfigError("cannot create directory " + path + ": " + error.message());
  }
}

} // namespace floq
