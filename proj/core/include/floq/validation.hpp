#pragma once

#include <string>
#include <vector>

namespace floq {

struct ValidationCaseResult {
  std::string name;
  bool passed = false;
  // Human-readable measured-vs-expected summary.
  std::string measured;
  // The physical claim this case validates.
  std::string claim;
  double runtime_seconds = 0.0;
};

struct ValidationReport {
  std::vector<ValidationCaseResult> cases;
  bool all_passed() const;
};

// Run the full validation suite.  Artifacts (spectra, scans, synthetic data
// sets, fit reports) are written under artifact_dir; the determinism case
// re-generates the artifact set into a sibling directory and compares bytes.
// Cases:
//   rwa_two_level_rabi            resonant weak drive matches sin^2(bt)
//   rk4_unitarity_and_order       propagator unitarity and >= 3.8 convergence order
//   quasienergy_sum_rule          sum of quasienergies = sum of energies (mod photon energy)
//   floquet_vs_time_domain        Floquet average equals 400-period time average
//   spectrum_three_vs_two_photon  resonance positions, suppression ratio, convolved width
//   even_photon_suppression_trend 3-vs-2-photon strength ratio grows as drive weakens
//   pulsed_power_law_slope        pulsed 3-photon population is cubic in intensity
//   parameter_derivation_sanity   dipole / field / coupling derivation chain
//   fit_recovery                  EMG, Malus/DOLP, power-law fits recover known truth
//   determinism                   byte-identical artifacts on repeated runs
ValidationReport run_validation(const std::string& artifact_dir, int threads);

// Canonical case names, in execution order.
std::vector<std::string> validation_case_names();

// Run a subset of the suite.  `only` lists case names to run (order and
// multiplicity do not matter; execution follows the canonical order above).
// An unknown name raises ConfigError.  An empty selection yields an empty
// report whose pass verdict is vacuously true; the written report carries a
// warning in that case.
ValidationReport run_validation(const std::string& artifact_dir, int threads,
                                const std::vector<std::string>& only);

// JSON report: per-case name, pass flag, measured summary, claim, runtime.
void write_validation_report(const std::string& path, const ValidationReport& report);

} // namespace floq
