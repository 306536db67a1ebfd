#pragma once

#include <functional>
#include <string>
#include <vector>

namespace floq {

// Scaled complementary error function erfcx(u) = exp(u^2) erfc(u), accurate
// over the full real line (asymptotic series above u = 20, reflection
// formula below 0).
double erfcx(double u);

// Exponentially modified Gaussian density (unit area):
//   f(x; mu, sigma, tau) = (1/(2 tau)) exp(sigma^2/(2 tau^2) - (x-mu)/tau)
//                          * erfc((sigma/tau - (x-mu)/sigma)/sqrt(2)),
// evaluated in the erfcx form that stays finite for narrow sigma / long tau.
double emg_density(double x, double mu, double sigma, double tau);

// Amplitude-scaled EMG plus constant baseline, the lifetime decay model:
//   y(t) = amplitude * emg_density(t; mu, sigma, tau) + baseline.
double emg_model(double t, double amplitude, double mu, double sigma,
                 double tau, double baseline);

// Malus-law transmission model, angle in degrees:
//   y(theta) = A * cos^2(pi/180 * (theta - theta0)) + B.
double malus_model(double theta_deg, double amplitude, double theta0_deg,
                   double baseline);

// Degree of linear polarization from Malus amplitude A and baseline B:
//   DOLP = A / (A + 2 B)  (contrast of transmitted max and min).
double degree_of_linear_polarization(double amplitude, double baseline);

// Delta-method standard error of the DOLP given the (A, B) covariance block.
double degree_of_linear_polarization_stderr(double amplitude, double baseline,
                                            double var_amplitude,
                                            double var_baseline,
                                            double cov_amplitude_baseline);

struct FitData {
  std::vector<double> x;
  std::vector<double> y;
  // Per-point weights w_i entering chi^2 = sum_i w_i r_i^2; empty means 1.
  std::vector<double> weights;
};

struct FitResult {
  bool converged = false;
  int iterations = 0;
  double chi2 = 0.0;
  int degrees_of_freedom = 0;
  std::vector<double> parameters;
  std::vector<double> standard_errors;   // sqrt(diag of covariance)
  std::vector<double> covariance;        // row-major p x p
  std::string message;
};

// Model callback: y = f(x, params).
using ModelFunction = std::function<double(double, const std::vector<double>&)>;

struct FitOptions {
  int max_iterations = 200;
  double relative_cost_tolerance = 1e-10;
  double gradient_tolerance = 1e-8;
  double initial_damping = 1e-3;
  // Box bounds, one per parameter; empty means unbounded.
  std::vector<double> lower_bounds;
  std::vector<double> upper_bounds;
};

// Levenberg-Marquardt least squares with forward-difference Jacobian,
// multiplicative damping (accept: /3, reject: *5), bound projection, and
// standard errors from sigma_hat^2 (J^T W J)^{-1}.  Returns converged=false
// (with best parameters so far) when the iteration limit is hit.
FitResult fit_least_squares(const ModelFunction& model, const FitData& data,
                            const std::vector<double>& initial,
                            const FitOptions& options = {});

// Convenience wrappers with automatic initial guesses from the data.
// Parameter order matches the model signatures above.

// parameters = {amplitude, mu, sigma, tau, baseline}
FitResult fit_emg(const FitData& data, const FitOptions& options = {});

// Same model with the instrument-response width sigma pinned to a known
// value: only the other four parameters are fitted (sigma is reported in
// its usual slot with zero standard error and zero covariance).
FitResult fit_emg_fixed_sigma(const FitData& data, double fixed_sigma,
                              const FitOptions& options = {});

// parameters = {amplitude, theta0_deg, baseline}; theta0 reported in
// [-90, 90) (cos^2 has period 180 degrees).
FitResult fit_malus(const FitData& data, const FitOptions& options = {});

struct PowerLawFit {
  double exponent = 0.0;
  double log_prefactor = 0.0;
  double exponent_stderr = 0.0;
};

// Closed-form straight-line fit in log-log space for y = C x^p; all x and y
// must be positive.
PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

// Poisson counting weights w_i = 1 / max(y_i, 1) for count data.
std::vector<double> poisson_weights(const std::vector<double>& counts);

} // namespace floq
