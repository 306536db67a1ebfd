#pragma once

#include <string>
#include <utility>
#include <vector>

#include "floq/fitkit.hpp"
#include "floq/floquet.hpp"
#include "floq/pulsed.hpp"

namespace floq {

// All data artifacts are written with floats in %.16e scientific notation
// (17 significant digits, round-trip exact for IEEE doubles) and '\n' line
// endings, so repeated runs with identical inputs are byte-identical.

std::string format_float(double value);

// Generic two-or-more-column CSV with header row.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

// Columns: photon_energy_eV,pbar_raw,pbar_convolved.
void write_spectrum_csv(const std::string& path, const SpectrumResult& spectrum);

// JSON array of objects with keys center_eV, height, fwhm_eV, order.
void write_resonances_json(const std::string& path,
                           const std::vector<Resonance>& resonances);

// Columns: photon_energy_eV, eps_0_eV .. eps_{n-1}_eV in branch-tracked
// order (column k follows branch k continuously across the scan).
void write_quasienergy_csv(const std::string& path,
                           const std::vector<QuasienergyPoint>& points);

// Columns: t_s, then re_a_k / im_a_k / pop_k per level.
void write_trajectory_csv(const std::string& path, const Trajectory& trajectory);

// Columns: photon_energy_eV,excited_population.
void write_pulse_scan_csv(const std::string& path,
                          const std::vector<PulseScanPoint>& points);

// Columns: peak_scale,intensity_proxy,excited_population.
void write_power_scan_csv(const std::string& path,
                          const std::vector<PowerScanPoint>& points);

// Fit report: converged, chi2, dof, parameters with standard errors, and
// model-specific derived quantities (e.g. DOLP for the Malus model).
void write_fit_json(const std::string& path, const std::string& model,
                    const std::vector<std::string>& parameter_names,
                    const FitResult& result,
                    const std::vector<std::pair<std::string, double>>& derived = {});

// Two-column x,y CSV with the given header names.
void write_xy_csv(const std::string& path, const std::string& x_name,
                  const std::string& y_name, const std::vector<double>& x,
                  const std::vector<double>& y);

struct XyData {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> y_err;  // empty when the file has two columns
};

// Read a two- or three-column CSV (x, y[, y_err]); a non-numeric first row
// is treated as a header.  Throws ConfigError on malformed rows or mixed
// column counts.
XyData read_xy_csv(const std::string& path);

struct CsvTable {
  std::vector<std::string> names;            // header names, or col0, col1, ...
  std::vector<std::vector<double>> columns;  // one vector per column

  // Index of a named column, or -1.
  int column_index(const std::string& name) const;
};

// Read a general numeric CSV of any width; a non-numeric first row is the
// header.  Throws ConfigError on malformed rows or mixed column counts.
CsvTable read_csv_table(const std::string& path);

// Run provenance sidecar: tool version, command, config digest, the full
// resolved configuration (a pre-rendered JSON object inserted verbatim),
// thread count, wall time.  Excluded from byte-identity guarantees because
// it records timing.
void write_run_manifest(const std::string& path, const std::string& command,
                        const std::string& config_path,
                        const std::string& config_sha256,
                        const std::string& resolved_config_json, int threads,
                        double wall_seconds);

// Hex SHA-256 of a byte string (for config digests in manifests).
std::string sha256_hex(const std::string& bytes);

// Create directory (and parents); throws ConfigError on failure.
void ensure_directory(const std::string& path);

} // namespace floq
