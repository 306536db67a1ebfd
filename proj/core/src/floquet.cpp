#include "floq/floquet.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "floq/constants.hpp"
#include "floq/errors.hpp"
#include "floq/parallel.hpp"
#include "propagate_detail.hpp"

namespace floq {

namespace {

DriveSpec mono_drive(double photon_energy_eV, double amplitude_scale) {
  DriveSpec drive;
  drive.kind = DriveKind::Monochromatic;
  drive.photon_energy_eV = photon_energy_eV;
  drive.amplitude_scale = amplitude_scale;
  return drive;
}

// Greedy assignment maximizing score(row, col): repeatedly take the best
// unassigned pair; candidates whose scores differ by < 1e-9 are tie-broken
// by ascending value of tie_key[col] (then by column index).  Returns
// col_to_row.
std::vector<int> greedy_assign(const Eigen::MatrixXd& score,
                               const std::vector<double>& tie_key) {
  const int n = static_cast<int>(score.rows());
  std::vector<int> col_of_row(static_cast<std::size_t>(n), -1);
  std::vector<int> row_of_col(static_cast<std::size_t>(n), -1);
  for (int pass = 0; pass < n; ++pass) {
    double best = -1.0;
    for (int r = 0; r < n; ++r) {
      if (col_of_row[static_cast<std::size_t>(r)] >= 0) continue;
      for (int c = 0; c < n; ++c) {
        if (row_of_col[static_cast<std::size_t>(c)] >= 0) continue;
        best = std::max(best, score(r, c));
      }
    }
    int best_r = -1, best_c = -1;
    double best_key = std::numeric_limits<double>::infinity();
    for (int r = 0; r < n; ++r) {
      if (col_of_row[static_cast<std::size_t>(r)] >= 0) continue;
      for (int c = 0; c < n; ++c) {
        if (row_of_col[static_cast<std::size_t>(c)] >= 0) continue;
        if (score(r, c) < best - 1e-9) continue;
        const double key = tie_key[static_cast<std::size_t>(c)];
        if (best_c < 0 || key < best_key ||
            (key == best_key && c < best_c)) {
          best_r = r;
          best_c = c;
          best_key = key;
        }
      }
    }
    col_of_row[static_cast<std::size_t>(best_r)] = best_c;
    row_of_col[static_cast<std::size_t>(best_c)] = best_r;
  }
  return row_of_col;
}

// Labels for a standalone point: branch j is the mode dominated by bare
// level j.
void assign_labels_by_dominant_level(QuasienergyPoint& point) {
  const int n = static_cast<int>(point.quasienergies_eV.size());
  // score(level, mode) = overlap.
  std::vector<int> mode_to_level =
      greedy_assign(point.overlaps, point.quasienergies_eV);
  point.branch_labels.assign(static_cast<std::size_t>(n), -1);
  for (int k = 0; k < n; ++k) {
    point.branch_labels[static_cast<std::size_t>(k)] =
        mode_to_level[static_cast<std::size_t>(k)];
  }
}

double min_pairwise_gap(const QuasienergyPoint& point) {
  const int n = static_cast<int>(point.quasienergies_eV.size());
  double gap = std::numeric_limits<double>::infinity();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      gap = std::min(gap, quasienergy_gap(point.quasienergies_eV[static_cast<std::size_t>(a)],
                                          point.quasienergies_eV[static_cast<std::size_t>(b)],
                                          point.photon_energy_eV));
    }
  }
  return gap;
}

// Median in x-measure: each sample weighted by the grid length it covers,
// so refinement windows with many closely spaced points do not dominate.
double weighted_median_of(std::vector<std::pair<double, double>>& value_weight) {
  std::sort(value_weight.begin(), value_weight.end());
  double total = 0.0;
  for (const auto& [value, weight] : value_weight) total += weight;
  double below = 0.0;
  for (const auto& [value, weight] : value_weight) {
    below += weight;
    if (below >= 0.5 * total) return value;
  }
  return value_weight.back().first;
}

} // namespace

double fold_quasienergy(double energy_eV, double photon_energy_eV) {
  const double w = photon_energy_eV;
  double r = std::fmod(energy_eV + 0.5 * w, w);
  if (r < 0.0) r += w;
  return r - 0.5 * w;
}

double quasienergy_gap(double eps_a_eV, double eps_b_eV, double photon_energy_eV) {
  return std::abs(fold_quasienergy(eps_a_eV - eps_b_eV, photon_energy_eV));
}

Eigen::MatrixXcd monodromy(const LadderSystem& system, const DriveSpec& drive,
                           const PropagationSettings& settings) {
  drive.validate();
  if (drive.kind != DriveKind::Monochromatic) {
    throw std::invalid_argument("monodromy requires a monochromatic drive");
  }
  return propagator_over(system, drive, 0.0, drive.period_internal(), settings);
}

QuasienergyPoint quasienergies(const Eigen::MatrixXcd& monodromy_matrix,
                               double photon_energy_eV) {
  if (!(photon_energy_eV > 0.0)) {
    throw std::invalid_argument("photon energy must be positive");
  }
  const int n = static_cast<int>(monodromy_matrix.rows());
  if (monodromy_matrix.cols() != n || n < 1) {
    throw std::invalid_argument("monodromy matrix must be square");
  }
  const double period = 2.0 * constants::pi / photon_energy_eV;

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(monodromy_matrix, true);
  if (solver.info() != Eigen::Success) {
    throw NumericError("monodromy eigendecomposition failed");
  }

  QuasienergyPoint point;
  point.photon_energy_eV = photon_energy_eV;
  point.quasienergies_eV.resize(static_cast<std::size_t>(n));
  Eigen::MatrixXcd modes = solver.eigenvectors();
  for (int k = 0; k < n; ++k) {
    const std::complex<double> lambda = solver.eigenvalues()(k);
    if (std::abs(std::abs(lambda) - 1.0) > 1e-6) {
      std::ostringstream msg;
      msg << "monodromy eigenvalue modulus " << std::abs(lambda)
          << " is not on the unit circle; input is not unitary enough";
      throw NumericError(msg.str());
    }
    // lambda = exp(-i eps T): arg in (-pi, pi] maps to eps in [-w/2, w/2).
    point.quasienergies_eV[static_cast<std::size_t>(k)] =
        -std::arg(lambda) / period;
    modes.col(k).normalize();
  }

  const double ortho_defect =
      (modes.adjoint() * modes - Eigen::MatrixXcd::Identity(n, n))
          .cwiseAbs()
          .maxCoeff();
  if (!std::isfinite(ortho_defect)) {
    throw NumericError("monodromy eigenvectors are not finite");
  }
  if (ortho_defect > 1e-9) {
    // Unitary matrices have orthonormal eigenbases; the solver can lose
    // orthogonality between nearly degenerate branches.  Re-orthonormalize
    // without reordering columns.
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(modes);
    modes = qr.householderQ();
  }

  point.modes_t0 = modes;
  point.overlaps = modes.cwiseAbs2();
  point.near_degenerate = false;
  assign_labels_by_dominant_level(point);
  point.near_degenerate = min_pairwise_gap(point) < degenerate_gap_eV;
  return point;
}

AveragedTransition averaged_transition_probability_detail(
    const LadderSystem& system, const DriveSpec& drive, int from, int to,
    int samples_per_period, const PropagationSettings& settings) {
  system.validate();
  drive.validate();
  if (drive.kind != DriveKind::Monochromatic) {
    throw std::invalid_argument(
        "averaged_transition_probability requires a monochromatic drive");
  }
  const int n = system.level_count();
  if (from < 0 || from >= n || to < 0 || to >= n) {
    throw std::invalid_argument("level index out of range");
  }
  if (samples_per_period < 2) {
    throw std::invalid_argument("samples_per_period must be >= 2");
  }

  const double period = drive.period_internal();
  // Anchor the Floquet time origin at a node of the carrier: for
  // sin(w t + phi) that is t = -phi/w.  Weights |<mode_k(anchor)|from>|^2
  // then depend only on the field shape, not on the phase convention used
  // to write the carrier down, so the long-time average is carrier-phase
  // invariant.  A zero phase keeps the origin at t = 0 exactly.
  const double t_anchor = drive.carrier_phase_rad == 0.0
                              ? 0.0
                              : -drive.carrier_phase_rad / drive.photon_energy_eV;
  const std::vector<Eigen::MatrixXcd> props = detail::sampled_propagators(
      system, drive, t_anchor, t_anchor + period, samples_per_period, settings);
  const QuasienergyPoint point =
      quasienergies(props.back(), drive.photon_energy_eV);
  const Eigen::MatrixXcd& modes = point.modes_t0;

  // avg_k = (1/T) int_0^T |<to| U(t) |mode_k>|^2 dt.  The integrand is
  // T-periodic, so the trapezoidal rule equals the mean over the first
  // samples_per_period samples.
  Eigen::VectorXd avg = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < samples_per_period; ++i) {
    const Eigen::RowVectorXcd row = props[static_cast<std::size_t>(i)].row(to) * modes;
    avg += row.cwiseAbs2().transpose();
  }
  avg /= static_cast<double>(samples_per_period);

  AveragedTransition result;
  result.near_degenerate = point.near_degenerate;
  result.value = 0.0;
  result.mode_weights.resize(static_cast<std::size_t>(n));
  result.mode_time_averages.resize(static_cast<std::size_t>(n));
  result.quasienergies_eV = point.quasienergies_eV;
  for (int k = 0; k < n; ++k) {
    result.mode_weights[static_cast<std::size_t>(k)] = point.overlaps(from, k);
    result.mode_time_averages[static_cast<std::size_t>(k)] = avg(k);
    result.value += point.overlaps(from, k) * avg(k);
  }
  return result;
}

double averaged_transition_probability(const LadderSystem& system,
                                       const DriveSpec& drive, int from, int to,
                                       int samples_per_period,
                                       const PropagationSettings& settings) {
  return averaged_transition_probability_detail(system, drive, from, to,
                                                samples_per_period, settings)
      .value;
}

std::vector<QuasienergyPoint> quasienergy_scan(const LadderSystem& system,
                                               double amplitude_scale,
                                               const std::vector<double>& grid_eV,
                                               int threads,
                                               const PropagationSettings& settings) {
  system.validate();
  if (grid_eV.empty()) throw std::invalid_argument("scan grid is empty");
  for (std::size_t i = 0; i < grid_eV.size(); ++i) {
    if (!(grid_eV[i] > 0.0)) {
      throw std::invalid_argument("scan grid photon energies must be positive");
    }
    if (i > 0 && !(grid_eV[i] > grid_eV[i - 1])) {
      throw std::invalid_argument("scan grid must be strictly increasing");
    }
  }

  std::vector<QuasienergyPoint> points(grid_eV.size());
  parallel_for(static_cast<int>(grid_eV.size()), threads, [&](int i) {
    const DriveSpec drive =
        mono_drive(grid_eV[static_cast<std::size_t>(i)], amplitude_scale);
    points[static_cast<std::size_t>(i)] =
        quasienergies(monodromy(system, drive, settings), drive.photon_energy_eV);
  });

  // Branch tracking: relabel each point by maximal mode overlap with the
  // previous point's branches.  The first point keeps its dominant-level
  // labels.
  const int n = system.level_count();
  Eigen::MatrixXcd prev_branch_modes(n, n);
  for (int k = 0; k < n; ++k) {
    prev_branch_modes.col(points[0].branch_labels[static_cast<std::size_t>(k)]) =
        points[0].modes_t0.col(k);
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    QuasienergyPoint& cur = points[i];
    const Eigen::MatrixXd score =
        (prev_branch_modes.adjoint() * cur.modes_t0).cwiseAbs();
    const std::vector<int> mode_to_branch =
        greedy_assign(score, cur.quasienergies_eV);
    cur.branch_labels = mode_to_branch;
    for (int k = 0; k < n; ++k) {
      prev_branch_modes.col(cur.branch_labels[static_cast<std::size_t>(k)]) =
          cur.modes_t0.col(k);
    }
  }
  return points;
}

std::vector<double> gaussian_convolve(const std::vector<double>& x,
                                      const std::vector<double>& y,
                                      double fwhm) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("gaussian_convolve: size mismatch");
  }
  if (fwhm <= 0.0) return y;
  const std::size_t n = x.size();
  if (n < 2) return y;

  const double sigma = fwhm / std::sqrt(8.0 * std::log(2.0));
  const double window = 4.0 * sigma;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Window [a, b] of points within +-4 sigma.
    std::size_t a = i, b = i;
    while (a > 0 && x[i] - x[a - 1] <= window) --a;
    while (b + 1 < n && x[b + 1] - x[i] <= window) ++b;
    double num = 0.0, den = 0.0;
    for (std::size_t j = a; j <= b; ++j) {
      const double left = j > a ? x[j] - x[j - 1] : 0.0;
      const double right = j < b ? x[j + 1] - x[j] : 0.0;
      const double weight = 0.5 * (left + right);
      const double dx = (x[j] - x[i]) / sigma;
      const double kernel = std::exp(-0.5 * dx * dx);
      num += weight * kernel * y[j];
      den += weight * kernel;
    }
    out[i] = den > 0.0 ? num / den : y[i];
  }
  return out;
}

std::vector<Resonance> detect_resonances(const std::vector<double>& x,
                                         const std::vector<double>& y,
                                         double feature_width_eV,
                                         double transition_energy_eV,
                                         double rel_floor, double abs_floor) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("detect_resonances: size mismatch");
  }
  const std::size_t n = x.size();
  if (n < 5) return {};
  double width = feature_width_eV;
  if (!(width > 0.0)) width = (x.back() - x.front()) / 50.0;

  // Two-pass baseline.  Pass 1: windowed weighted-median background (median
  // in x-measure so dense refinement windows do not outvote the smooth
  // background) gives a rough, bias-tolerant feature list.  Pass 2: around
  // each point, fit a straight line to the curve over +-3*width EXCLUDING
  // +-1.5*width around every rough feature, so no feature contaminates any
  // baseline: dips are measured at full depth and tall peaks leave no
  // side-lobe phantoms in their neighborhood.
  const auto magnitude_of = [&](const std::vector<double>& bg) {
    std::vector<double> mag(n);
    for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(y[i] - bg[i]);
    return mag;
  };
  const auto threshold_of = [&](const std::vector<double>& mag) {
    return std::max(abs_floor, rel_floor * *std::max_element(mag.begin(), mag.end()));
  };
  // Local maxima above threshold, then non-maximum suppression: one
  // detection per feature, the tallest sample within 0.75*width wins.
  const auto maxima_of = [&](const std::vector<double>& mag) {
    std::vector<std::size_t> candidates;
    const double threshold = threshold_of(mag);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (mag[i] > mag[i - 1] && mag[i] >= mag[i + 1] && mag[i] >= threshold) {
        candidates.push_back(i);
      }
    }
    std::sort(candidates.begin(), candidates.end(),
              [&](std::size_t a, std::size_t b) {
                if (mag[a] != mag[b]) return mag[a] > mag[b];
                return a < b;
              });
    std::vector<std::size_t> accepted;
    for (std::size_t i : candidates) {
      bool shadowed = false;
      for (std::size_t k : accepted) {
        if (std::abs(x[i] - x[k]) < 0.75 * width) {
          shadowed = true;
          break;
        }
      }
      if (!shadowed) accepted.push_back(i);
    }
    std::sort(accepted.begin(), accepted.end());
    return accepted;
  };

  // Pass 1: median background, window shrinking symmetrically at the edges.
  std::vector<double> median_bg(n);
  std::vector<std::pair<double, double>> scratch;
  for (std::size_t i = 0; i < n; ++i) {
    const double half_window =
        std::min({2.5 * width, x[i] - x.front(), x.back() - x[i]});
    std::size_t a = i, b = i;
    while (a > 0 && x[i] - x[a - 1] <= half_window) --a;
    while (b + 1 < n && x[b + 1] - x[i] <= half_window) ++b;
    scratch.clear();
    for (std::size_t j = a; j <= b; ++j) {
      const double lo = j > a ? 0.5 * (x[j] - x[j - 1]) : 0.0;
      const double hi = j < b ? 0.5 * (x[j + 1] - x[j]) : 0.0;
      scratch.emplace_back(y[j], lo + hi);
    }
    median_bg[i] = scratch.size() > 1 ? weighted_median_of(scratch) : y[i];
  }
  const std::vector<double> rough_magnitude = magnitude_of(median_bg);
  const std::vector<std::size_t> rough_features = maxima_of(rough_magnitude);

  std::vector<bool> excluded(n, false);
  for (std::size_t f : rough_features) {
    for (std::size_t j = f; j-- > 0 && x[f] - x[j] <= 1.5 * width;) {
      excluded[j] = true;
    }
    for (std::size_t j = f; j < n && x[j] - x[f] <= 1.5 * width; ++j) {
      excluded[j] = true;
    }
  }

  // Pass 2: local straight-line background through the unexcluded points.
  // If exclusion zones starve the fit at both radii (possible only when
  // pass 1 flagged noise all over the window, since genuine features are
  // sparse), refit over the full window instead: a background from ample
  // data beats the rough median, whose value can sit one grid point off
  // center and turn pure quantization jitter into fake features.
  std::vector<double> background(n);
  struct FitAttempt {
    double radius;
    bool honor_exclusions;
  };
  for (std::size_t i = 0; i < n; ++i) {
    double fit = median_bg[i];
    for (const FitAttempt attempt : {FitAttempt{3.0 * width, true},
                                     FitAttempt{6.0 * width, true},
                                     FitAttempt{6.0 * width, false}}) {
      std::size_t a = i, b = i;
      while (a > 0 && x[i] - x[a - 1] <= attempt.radius) --a;
      while (b + 1 < n && x[b + 1] - x[i] <= attempt.radius) ++b;
      double s0 = 0.0, s1 = 0.0, s2 = 0.0, t0 = 0.0, t1 = 0.0;
      for (std::size_t j = a; j <= b; ++j) {
        if (attempt.honor_exclusions && excluded[j]) continue;
        const double lo = j > 0 ? 0.5 * (x[j] - x[j - 1]) : 0.0;
        const double hi = j + 1 < n ? 0.5 * (x[j + 1] - x[j]) : 0.0;
        const double w = lo + hi;
        const double dx = x[j] - x[i];
        s0 += w;
        s1 += w * dx;
        s2 += w * dx * dx;
        t0 += w * y[j];
        t1 += w * dx * y[j];
      }
      const double det = s0 * s2 - s1 * s1;
      // Require enough x-measure for a stable line.
      if (s0 >= 0.5 * width && det > 1e-300) {
        fit = (s2 * t0 - s1 * t1) / det;
        break;
      }
    }
    background[i] = fit;
  }

  const std::vector<double> magnitude = magnitude_of(background);
  std::vector<Resonance> found;
  for (std::size_t i : maxima_of(magnitude)) {
    // Local quadratic refinement of the center through three points.
    const double x1 = x[i - 1], x2 = x[i], x3 = x[i + 1];
    const double y1 = magnitude[i - 1], y2 = magnitude[i], y3 = magnitude[i + 1];
    double center = x2;
    double height = y2;
    const double denom = (x2 - x1) * (y2 - y3) - (x2 - x3) * (y2 - y1);
    if (std::abs(denom) > 0.0) {
      const double shift = 0.5 *
                           ((x2 - x1) * (x2 - x1) * (y2 - y3) -
                            (x2 - x3) * (x2 - x3) * (y2 - y1)) /
                           denom;
      const double refined = x2 - shift;
      if (refined >= x1 && refined <= x3) {
        center = refined;
        // Parabola value at the vertex.
        const double l1 = (center - x2) * (center - x3) / ((x1 - x2) * (x1 - x3));
        const double l2 = (center - x1) * (center - x3) / ((x2 - x1) * (x2 - x3));
        const double l3 = (center - x1) * (center - x2) / ((x3 - x1) * (x3 - x2));
        const double value = l1 * y1 + l2 * y2 + l3 * y3;
        if (std::isfinite(value) && value >= y2) height = value;
      }
    }

    // Width from half-height crossings, walking outward.
    const double half = 0.5 * height;
    double left = x.front();
    for (std::size_t j = i; j > 0; --j) {
      if (magnitude[j - 1] <= half) {
        const double frac =
            (magnitude[j] - half) / (magnitude[j] - magnitude[j - 1]);
        left = x[j] - frac * (x[j] - x[j - 1]);
        break;
      }
    }
    double right = x.back();
    for (std::size_t j = i; j + 1 < n; ++j) {
      if (magnitude[j + 1] <= half) {
        const double frac =
            (magnitude[j] - half) / (magnitude[j] - magnitude[j + 1]);
        right = x[j] + frac * (x[j + 1] - x[j]);
        break;
      }
    }

    Resonance res;
    res.center_eV = center;
    res.height = height;
    res.fwhm_eV = right - left;
    res.order = static_cast<int>(std::lround(transition_energy_eV / center));
    found.push_back(res);
  }
  return found;
}

SpectrumResult spectrum_scan(const LadderSystem& system, double amplitude_scale,
                             const std::vector<double>& grid_eV,
                             double convolution_fwhm_eV, int threads,
                             const PropagationSettings& settings) {
  system.validate();
  if (grid_eV.empty()) throw ConfigError("spectrum scan grid is empty");
  for (std::size_t i = 0; i < grid_eV.size(); ++i) {
    if (!(grid_eV[i] > 0.0)) {
      throw ConfigError("spectrum grid photon energies must be positive");
    }
    if (i > 0 && !(grid_eV[i] > grid_eV[i - 1])) {
      throw ConfigError("spectrum grid must be strictly increasing");
    }
  }
  if (convolution_fwhm_eV > 0.0 && grid_eV.size() > 1) {
    double max_step = 0.0;
    for (std::size_t i = 1; i < grid_eV.size(); ++i) {
      max_step = std::max(max_step, grid_eV[i] - grid_eV[i - 1]);
    }
    if (max_step > convolution_fwhm_eV / 5.0) {
      std::ostringstream msg;
      msg << "spectrum grid step " << max_step
          << " eV is too coarse for a convolution FWHM of "
          << convolution_fwhm_eV << " eV (need step <= FWHM/5)";
      throw ConfigError(msg.str());
    }
  }

  SpectrumResult result;
  result.photon_energies_eV = grid_eV;
  result.raw.resize(grid_eV.size());
  parallel_for(static_cast<int>(grid_eV.size()), threads, [&](int i) {
    const DriveSpec drive =
        mono_drive(grid_eV[static_cast<std::size_t>(i)], amplitude_scale);
    result.raw[static_cast<std::size_t>(i)] =
        averaged_transition_probability(system, drive, 0, 1, 200, settings);
  });
  result.convolved = gaussian_convolve(grid_eV, result.raw, convolution_fwhm_eV);
  result.resonances =
      detect_resonances(grid_eV, result.convolved, convolution_fwhm_eV,
                        system.transition_energy_eV());
  return result;
}

GapMinimum locate_gap_minimum(const LadderSystem& system, double amplitude_scale,
                              int level_a, int level_b, double lo_eV, double hi_eV,
                              double xtol_eV,
                              const PropagationSettings& settings) {
  system.validate();
  const int n = system.level_count();
  if (level_a < 0 || level_a >= n || level_b < 0 || level_b >= n ||
      level_a == level_b) {
    throw std::invalid_argument("locate_gap_minimum needs two distinct level indices");
  }
  if (!(lo_eV > 0.0) || !(hi_eV > lo_eV)) {
    throw std::invalid_argument("locate_gap_minimum needs 0 < lo < hi");
  }

  auto gap_at = [&](double w) {
    const QuasienergyPoint point =
        quasienergies(monodromy(system, mono_drive(w, amplitude_scale), settings), w);
    int mode_a = -1, mode_b = -1;
    for (int k = 0; k < n; ++k) {
      if (point.branch_labels[static_cast<std::size_t>(k)] == level_a) mode_a = k;
      if (point.branch_labels[static_cast<std::size_t>(k)] == level_b) mode_b = k;
    }
    return quasienergy_gap(point.quasienergies_eV[static_cast<std::size_t>(mode_a)],
                           point.quasienergies_eV[static_cast<std::size_t>(mode_b)],
                           w);
  };

  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo_eV, b = hi_eV;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = gap_at(c);
  double fd = gap_at(d);
  while (b - a > xtol_eV) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = gap_at(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = gap_at(d);
    }
  }
  GapMinimum minimum;
  minimum.photon_energy_eV = 0.5 * (a + b);
  minimum.gap_eV = gap_at(minimum.photon_energy_eV);
  return minimum;
}

std::vector<double> make_scan_grid(const LadderSystem& system, double amplitude_scale,
                                   double start_eV, double stop_eV, double coarse_step_eV,
                                   const PropagationSettings& settings) {
  system.validate();
  if (!(start_eV > 0.0) || !(stop_eV > start_eV)) {
    throw std::invalid_argument("make_scan_grid needs 0 < start < stop");
  }
  if (!(coarse_step_eV > 0.0)) {
    throw std::invalid_argument("make_scan_grid needs a positive coarse step");
  }

  std::vector<double> grid;
  const long n_coarse =
      static_cast<long>(std::floor((stop_eV - start_eV) / coarse_step_eV + 1e-9));
  for (long k = 0; k <= n_coarse; ++k) {
    grid.push_back(start_eV + static_cast<double>(k) * coarse_step_eV);
  }
  if (grid.back() < stop_eV - 1e-12) grid.push_back(stop_eV);

  // Candidate multi-photon resonances: photon energies where N photons span
  // a level pair.  Each candidate is refined to the gap minimum of that
  // pair; minima narrower than the refinement threshold get a fine window
  // so the feature survives convolution with its area intact.
  struct Candidate {
    double center_eV;
    int level_lo;
    int level_hi;
  };
  std::vector<Candidate> candidates;
  const int n = system.level_count();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double gap_energy = system.level_energies_eV[static_cast<std::size_t>(j)] -
                                system.level_energies_eV[static_cast<std::size_t>(i)];
      for (int photons = 1; photons <= 10; ++photons) {
        const double wc = gap_energy / photons;
        if (wc < start_eV || wc > stop_eV) continue;
        bool duplicate = false;
        for (const Candidate& existing : candidates) {
          if (std::abs(existing.center_eV - wc) < 1e-9) duplicate = true;
        }
        if (!duplicate) candidates.push_back({wc, i, j});
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              return a.center_eV < b.center_eV;
            });

  constexpr double gap_window_threshold_eV = 3e-3;
  for (std::size_t m = 0; m < candidates.size(); ++m) {
    double half_bracket = 0.015;
    if (m > 0) {
      half_bracket = std::min(
          half_bracket, 0.45 * (candidates[m].center_eV - candidates[m - 1].center_eV));
    }
    if (m + 1 < candidates.size()) {
      half_bracket = std::min(
          half_bracket, 0.45 * (candidates[m + 1].center_eV - candidates[m].center_eV));
    }
    const double lo = std::max(start_eV, candidates[m].center_eV - half_bracket);
    const double hi = std::min(stop_eV, candidates[m].center_eV + half_bracket);
    if (hi - lo < 1e-5) continue;

    const GapMinimum minimum =
        locate_gap_minimum(system, amplitude_scale, candidates[m].level_lo,
                           candidates[m].level_hi, lo, hi, 1e-7, settings);
    if (minimum.gap_eV >= gap_window_threshold_eV) continue;

    const auto append_window = [&](double half_width, double step) {
      const long k_max = static_cast<long>(std::floor(half_width / step));
      for (long k = -k_max; k <= k_max; ++k) {
        const double w = minimum.photon_energy_eV + static_cast<double>(k) * step;
        if (w >= start_eV && w <= stop_eV) grid.push_back(w);
      }
    };

    // Shoulder tier: samples the feature's wings and gives the background
    // estimator clean points on both sides.
    const double shoulder_half =
        std::min(std::max(2e-3, 3.0 * minimum.gap_eV), 1e-2);
    const double shoulder_step =
        std::max(5e-6, std::min(minimum.gap_eV / 6.0, coarse_step_eV / 2.0));
    append_window(shoulder_half, shoulder_step);

    // Core tier: the raw feature's width in photon energy is of the order of
    // the branch gap divided by the relative branch slope, so the step must
    // track the gap itself for the convolution to preserve the feature area.
    const double core_half = std::min(30.0 * minimum.gap_eV, shoulder_half);
    const double core_step = std::max(minimum.gap_eV / 8.0, 2e-8);
    if (core_half > core_step) append_window(core_half, core_step);
  }

  std::sort(grid.begin(), grid.end());
  std::vector<double> deduped;
  deduped.reserve(grid.size());
  for (double w : grid) {
    if (deduped.empty() || w - deduped.back() > 1e-9) deduped.push_back(w);
  }
  return deduped;
}

} // namespace floq
