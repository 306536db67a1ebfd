#include "floq/fitkit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "floq/constants.hpp"
#include "floq/errors.hpp"

namespace floq {

double erfcx(double u) {
  if (std::isnan(u)) return u;
  if (u < 0.0) {
    // erfc(u) = 2 - erfc(-u)  =>  erfcx(u) = 2 exp(u^2) - erfcx(-u).
    const double e = std::exp(u * u);  // overflows to +inf for u < ~-26.6
    return 2.0 * e - erfcx(-u);
  }
  if (u <= 20.0) {
    // exp(u^2) stays below overflow (e^400 ~ 5e173) and erfc(u) is normal.
    return std::exp(u * u) * std::erfc(u);
  }
  // Asymptotic series erfcx(u) = (1/(u sqrt(pi))) sum_k (-1)^k (2k-1)!!/(2u^2)^k.
  const double inv2u2 = 1.0 / (2.0 * u * u);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 10; ++k) {
    term *= -static_cast<double>(2 * k - 1) * inv2u2;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum / (u * std::sqrt(constants::pi));
}

double emg_density(double x, double mu, double sigma, double tau) {
  if (!(sigma > 0.0) || !(tau > 0.0)) {
    throw std::domain_error("emg_density requires sigma > 0 and tau > 0");
  }
  const double z = (x - mu) / sigma;
  const double a = sigma / tau;
  const double u = (a - z) / std::sqrt(2.0);
  if (u >= -4.0) {
    // f = (1/2tau) exp(-z^2/2) erfcx(u): cancellation-free and finite for
    // all u down to the exp(u^2) overflow, which this branch avoids.
    return 0.5 / tau * std::exp(-0.5 * z * z) * erfcx(u);
  }
  // Far decay tail (z >> a): the direct product form, where erfc(u) is 2 to
  // within ~1e-8 and exp(a^2/2 - z a) decays.
  return 0.5 / tau * std::exp(0.5 * a * a - z * a) * (2.0 - std::erfc(-u));
}

double emg_model(double t, double amplitude, double mu, double sigma, double tau,
                 double baseline) {
  return amplitude * emg_density(t, mu, sigma, tau) + baseline;
}

double malus_model(double theta_deg, double amplitude, double theta0_deg,
                   double baseline) {
  const double c = std::cos(constants::pi / 180.0 * (theta_deg - theta0_deg));
  return amplitude * c * c + baseline;
}

double degree_of_linear_polarization(double amplitude, double baseline) {
  const double denom = amplitude + 2.0 * baseline;
  if (!(denom > 0.0)) return 0.0;
  return amplitude / denom;
}

double degree_of_linear_polarization_stderr(double amplitude, double baseline,
                                            double var_amplitude,
                                            double var_baseline,
                                            double cov_amplitude_baseline) {
  const double denom = amplitude + 2.0 * baseline;
  if (!(denom > 0.0)) return 0.0;
  const double d_amp = 2.0 * baseline / (denom * denom);
  const double d_base = -2.0 * amplitude / (denom * denom);
  const double variance = d_amp * d_amp * var_amplitude +
                          d_base * d_base * var_baseline +
                          2.0 * d_amp * d_base * cov_amplitude_baseline;
  return std::sqrt(std::max(0.0, variance));
}

namespace {

void validate_fit_inputs(const FitData& data, std::size_t n_params) {
  if (data.x.size() != data.y.size()) {
    throw std::invalid_argument("fit data x/y size mismatch");
  }
  if (!data.weights.empty() && data.weights.size() != data.x.size()) {
    throw std::invalid_argument("fit data weights size mismatch");
  }
  if (data.x.size() < n_params + 1) {
    throw std::invalid_argument("fit needs at least (parameter count + 1) points");
  }
  for (std::size_t i = 0; i < data.x.size(); ++i) {
    if (!std::isfinite(data.x[i]) || !std::isfinite(data.y[i])) {
      throw std::invalid_argument("fit data must be finite");
    }
    if (!data.weights.empty() &&
        (!std::isfinite(data.weights[i]) || data.weights[i] < 0.0)) {
      throw std::invalid_argument("fit weights must be finite and nonnegative");
    }
  }
}

std::vector<double> project_to_bounds(std::vector<double> params,
                                      const FitOptions& options) {
  for (std::size_t j = 0; j < params.size(); ++j) {
    if (!options.lower_bounds.empty()) {
      params[j] = std::max(params[j], options.lower_bounds[j]);
    }
    if (!options.upper_bounds.empty()) {
      params[j] = std::min(params[j], options.upper_bounds[j]);
    }
  }
  return params;
}

double weighted_cost(const ModelFunction& model, const FitData& data,
                     const std::vector<double>& params) {
  double cost = 0.0;
  for (std::size_t i = 0; i < data.x.size(); ++i) {
    const double r = data.y[i] - model(data.x[i], params);
    const double w = data.weights.empty() ? 1.0 : data.weights[i];
    cost += w * r * r;
  }
  return cost;
}

} // namespace

FitResult fit_least_squares(const ModelFunction& model, const FitData& data,
                            const std::vector<double>& initial,
                            const FitOptions& options) {
  const std::size_t p = initial.size();
  const std::size_t n = data.x.size();
  if (p == 0) throw std::invalid_argument("fit needs at least one parameter");
  validate_fit_inputs(data, p);
  if (!options.lower_bounds.empty() && options.lower_bounds.size() != p) {
    throw std::invalid_argument("lower_bounds size mismatch");
  }
  if (!options.upper_bounds.empty() && options.upper_bounds.size() != p) {
    throw std::invalid_argument("upper_bounds size mismatch");
  }
  for (std::size_t j = 0; j < p; ++j) {
    if (!options.lower_bounds.empty() && initial[j] < options.lower_bounds[j]) {
      throw std::invalid_argument("initial parameters must lie within bounds");
    }
    if (!options.upper_bounds.empty() && initial[j] > options.upper_bounds[j]) {
      throw std::invalid_argument("initial parameters must lie within bounds");
    }
  }

  std::vector<double> params = initial;
  double cost = weighted_cost(model, data, params);
  double damping = options.initial_damping;

  Eigen::MatrixXd jac(static_cast<long>(n), static_cast<long>(p));
  Eigen::VectorXd residual(static_cast<long>(n));
  Eigen::VectorXd wvec(static_cast<long>(n));
  for (std::size_t i = 0; i < n; ++i) {
    wvec(static_cast<long>(i)) = data.weights.empty() ? 1.0 : data.weights[i];
  }

  FitResult result;
  result.parameters = params;
  result.chi2 = cost;
  result.degrees_of_freedom = static_cast<int>(n) - static_cast<int>(p);

  auto compute_jacobian = [&](const std::vector<double>& at) {
    std::vector<double> probe = at;
    for (std::size_t i = 0; i < n; ++i) {
      residual(static_cast<long>(i)) = data.y[i] - model(data.x[i], at);
    }
    for (std::size_t j = 0; j < p; ++j) {
      const double h = 1.4901161193847656e-8 * std::max(std::abs(at[j]), 1.0);
      probe[j] = at[j] + h;
      for (std::size_t i = 0; i < n; ++i) {
        jac(static_cast<long>(i), static_cast<long>(j)) =
            (model(data.x[i], probe) - model(data.x[i], at)) / h;
      }
      probe[j] = at[j];
    }
  };

  int iteration = 0;
  bool converged = false;
  std::string message = "iteration limit reached";
  for (; iteration < options.max_iterations; ++iteration) {
    compute_jacobian(params);
    const Eigen::MatrixXd jw = wvec.asDiagonal() * jac;
    const Eigen::MatrixXd normal = jac.transpose() * jw;
    const Eigen::VectorXd gradient = jac.transpose() * (wvec.asDiagonal() * residual);

    if (gradient.lpNorm<Eigen::Infinity>() < options.gradient_tolerance) {
      converged = true;
      message = "gradient below tolerance";
      break;
    }

    bool accepted = false;
    while (damping <= 1e12) {
      Eigen::MatrixXd damped = normal;
      for (std::size_t j = 0; j < p; ++j) {
        const long jj = static_cast<long>(j);
        damped(jj, jj) += damping * std::max(normal(jj, jj), 1e-12);
      }
      const Eigen::VectorXd delta = damped.ldlt().solve(gradient);
      std::vector<double> trial = params;
      for (std::size_t j = 0; j < p; ++j) {
        trial[j] += delta(static_cast<long>(j));
      }
      trial = project_to_bounds(std::move(trial), options);
      const double trial_cost = weighted_cost(model, data, trial);
      if (std::isfinite(trial_cost) && trial_cost < cost) {
        const double improvement =
            (cost - trial_cost) / std::max(cost, 1e-300);
        params = std::move(trial);
        cost = trial_cost;
        damping = std::max(damping / 3.0, 1e-12);
        accepted = true;
        if (improvement < options.relative_cost_tolerance) {
          converged = true;
          message = "relative cost change below tolerance";
        }
        break;
      }
      damping *= 5.0;
    }
    if (!accepted) {
      converged = true;
      message = "no descent direction (damping limit); local minimum";
      break;
    }
    if (converged) break;
  }

  result.converged = converged;
  result.iterations = iteration;
  result.parameters = params;
  result.chi2 = cost;
  result.message = message;

  // Covariance from the undamped normal equations at the solution:
  // C = sigma_hat^2 (J^T W J)^{-1}, sigma_hat^2 = chi2 / dof.
  compute_jacobian(params);
  const Eigen::MatrixXd normal = jac.transpose() * (wvec.asDiagonal() * jac);
  result.standard_errors.assign(p, 0.0);
  result.covariance.assign(p * p, 0.0);
  const int dof = result.degrees_of_freedom;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(normal);
  if (dof > 0 && lu.isInvertible()) {
    const double sigma2 = cost / static_cast<double>(dof);
    const Eigen::MatrixXd cov = sigma2 * lu.inverse();
    for (std::size_t a = 0; a < p; ++a) {
      for (std::size_t b = 0; b < p; ++b) {
        result.covariance[a * p + b] = cov(static_cast<long>(a), static_cast<long>(b));
      }
      result.standard_errors[a] =
          std::sqrt(std::max(0.0, cov(static_cast<long>(a), static_cast<long>(a))));
    }
  } else {
    result.message += "; covariance unavailable (singular normal equations)";
  }
  return result;
}

namespace {

// Data-driven initial guess and default bounds for the five EMG parameters
// {amplitude, mu, sigma, tau, baseline}, shared by the free- and
// fixed-sigma entry points.
struct EmgSetup {
  std::vector<double> initial;
  std::vector<double> lower;
  std::vector<double> upper;
};

EmgSetup emg_setup(const FitData& data) {
  for (std::size_t i = 1; i < data.x.size(); ++i) {
    if (!(data.x[i] > data.x[i - 1])) {
      throw std::invalid_argument("decay fit needs strictly increasing times");
    }
  }
  const std::size_t n = data.x.size();
  const double span = data.x.back() - data.x.front();
  const double dx = span / static_cast<double>(n - 1);

  std::size_t peak = 0;
  double y_min = data.y[0], y_max = data.y[0];
  for (std::size_t i = 0; i < n; ++i) {
    if (data.y[i] > y_max) {
      y_max = data.y[i];
      peak = i;
    }
    y_min = std::min(y_min, data.y[i]);
  }
  const double baseline0 = std::max(0.0, y_min);
  const double pulse_height = std::max(y_max - baseline0, 1e-12);

  // tau from the time the decay falls to 1/e of the peak excess.
  double tau0 = span / 5.0;
  const double one_over_e = std::exp(-1.0);
  for (std::size_t i = peak; i < n; ++i) {
    if (data.y[i] - baseline0 <= pulse_height * one_over_e) {
      tau0 = std::max(data.x[i] - data.x[peak], dx);
      break;
    }
  }

  // sigma from the rising-edge 10%-90% width (Gaussian: width = 2.5631 sigma).
  double x10 = data.x[peak], x90 = data.x[peak];
  for (std::size_t i = peak; i-- > 0;) {
    if (data.y[i] - baseline0 <= 0.9 * pulse_height) {
      x90 = data.x[i];
      break;
    }
  }
  for (std::size_t i = peak; i-- > 0;) {
    if (data.y[i] - baseline0 <= 0.1 * pulse_height) {
      x10 = data.x[i];
      break;
    }
  }
  const double sigma0 = std::max((x90 - x10) / 2.5631031310892016, dx / 2.0);

  const double mu0 = data.x[peak];
  const double density_peak = emg_density(mu0, mu0, sigma0, tau0);
  const double amplitude0 = pulse_height / std::max(density_peak, 1e-300);

  const double big = std::numeric_limits<double>::max();
  EmgSetup setup;
  setup.initial = {amplitude0, mu0, sigma0, tau0, baseline0};
  setup.lower = {0.0, data.x.front() - span, 1e-6 * span, 1e-6 * span, 0.0};
  setup.upper = {big, data.x.back() + span, 10.0 * span, 100.0 * span, big};
  return setup;
}

} // namespace

FitResult fit_emg(const FitData& data, const FitOptions& options) {
  validate_fit_inputs(data, 5);
  EmgSetup setup = emg_setup(data);

  FitOptions opts = options;
  if (opts.lower_bounds.empty()) opts.lower_bounds = setup.lower;
  if (opts.upper_bounds.empty()) opts.upper_bounds = setup.upper;
  for (std::size_t j = 0; j < setup.initial.size(); ++j) {
    setup.initial[j] = std::min(std::max(setup.initial[j], opts.lower_bounds[j]),
                                opts.upper_bounds[j]);
  }

  const ModelFunction model = [](double t, const std::vector<double>& p) {
    return emg_model(t, p[0], p[1], p[2], p[3], p[4]);
  };
  return fit_least_squares(model, data, setup.initial, opts);
}

FitResult fit_emg_fixed_sigma(const FitData& data, double fixed_sigma,
                              const FitOptions& options) {
  if (!(std::isfinite(fixed_sigma) && fixed_sigma > 0.0)) {
    throw std::invalid_argument("fixed sigma must be positive");
  }
  validate_fit_inputs(data, 4);
  EmgSetup setup = emg_setup(data);

  // Reduce to the four free parameters {amplitude, mu, tau, baseline}.
  const auto drop_sigma = [](const std::vector<double>& full) {
    return std::vector<double>{full[0], full[1], full[3], full[4]};
  };
  std::vector<double> initial = drop_sigma(setup.initial);
  FitOptions opts = options;
  if (opts.lower_bounds.size() == 5) opts.lower_bounds = drop_sigma(opts.lower_bounds);
  if (opts.upper_bounds.size() == 5) opts.upper_bounds = drop_sigma(opts.upper_bounds);
  if (opts.lower_bounds.empty()) opts.lower_bounds = drop_sigma(setup.lower);
  if (opts.upper_bounds.empty()) opts.upper_bounds = drop_sigma(setup.upper);
  for (std::size_t j = 0; j < initial.size(); ++j) {
    initial[j] = std::min(std::max(initial[j], opts.lower_bounds[j]),
                          opts.upper_bounds[j]);
  }

  const ModelFunction model = [fixed_sigma](double t, const std::vector<double>& p) {
    return emg_model(t, p[0], p[1], fixed_sigma, p[2], p[3]);
  };
  FitResult reduced = fit_least_squares(model, data, initial, opts);

  // Re-expand to the standard five-parameter layout; the pinned sigma
  // carries no uncertainty and no covariance with the fitted parameters.
  FitResult result = reduced;
  result.parameters = {reduced.parameters[0], reduced.parameters[1], fixed_sigma,
                       reduced.parameters[2], reduced.parameters[3]};
  result.standard_errors = {reduced.standard_errors[0], reduced.standard_errors[1],
                            0.0, reduced.standard_errors[2],
                            reduced.standard_errors[3]};
  result.covariance.assign(25, 0.0);
  if (reduced.covariance.size() == 16) {
    // Map reduced index {0,1,2,3} -> full index {0,1,3,4}.
    const std::size_t full_of[4] = {0, 1, 3, 4};
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = 0; b < 4; ++b) {
        result.covariance[full_of[a] * 5 + full_of[b]] =
            reduced.covariance[a * 4 + b];
      }
    }
  }
  return result;
}

FitResult fit_malus(const FitData& data, const FitOptions& options) {
  validate_fit_inputs(data, 3);
  if (data.x.size() < 5) {
    throw std::invalid_argument("polarization fit needs at least 5 angles");
  }
  double span = 0.0;
  for (double theta : data.x) {
    for (double other : data.x) span = std::max(span, std::abs(theta - other));
  }
  if (span < 180.0 - 1e-9) {
    throw std::invalid_argument("polarization fit needs angles spanning >= 180 degrees");
  }

  std::size_t peak = 0;
  double y_min = data.y[0], y_max = data.y[0];
  for (std::size_t i = 0; i < data.y.size(); ++i) {
    if (data.y[i] > y_max) {
      y_max = data.y[i];
      peak = i;
    }
    y_min = std::min(y_min, data.y[i]);
  }

  double theta0 = std::fmod(data.x[peak], 180.0);
  if (theta0 < -90.0) theta0 += 180.0;
  if (theta0 >= 90.0) theta0 -= 180.0;
  std::vector<double> initial = {std::max(y_max - y_min, 0.0), theta0,
                                 std::max(y_min, 0.0)};

  FitOptions opts = options;
  if (opts.lower_bounds.empty()) {
    opts.lower_bounds = {0.0, -360.0, 0.0};
  }
  if (opts.upper_bounds.empty()) {
    const double big = std::numeric_limits<double>::max();
    opts.upper_bounds = {big, 360.0, big};
  }

  const ModelFunction model = [](double theta, const std::vector<double>& p) {
    return malus_model(theta, p[0], p[1], p[2]);
  };
  FitResult result = fit_least_squares(model, data, initial, opts);

  // Report the axis angle in the fundamental [-90, 90) interval.
  double folded = std::fmod(result.parameters[1], 180.0);
  if (folded < -90.0) folded += 180.0;
  if (folded >= 90.0) folded -= 180.0;
  result.parameters[1] = folded;
  return result;
}

PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("power-law fit x/y size mismatch");
  }
  if (x.size() < 2) {
    throw std::invalid_argument("power-law fit needs at least 2 points");
  }
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw std::domain_error("power-law fit needs strictly positive x and y");
    }
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    const double dy = std::log(y[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0)) {
    throw std::domain_error("power-law fit needs at least two distinct x values");
  }
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.log_prefactor = my - fit.exponent * mx;
  if (n > 2) {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = std::log(y[i]) - (fit.log_prefactor + fit.exponent * std::log(x[i]));
      ss_res += r * r;
    }
    fit.exponent_stderr = std::sqrt(ss_res / (static_cast<double>(n - 2) * sxx));
  }
  return fit;
}

std::vector<double> poisson_weights(const std::vector<double>& counts) {
  std::vector<double> weights(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    weights[i] = 1.0 / std::max(counts[i], 1.0);
  }
  return weights;
}

} // namespace floq
