#pragma once

#include <Eigen/Dense>
#include <vector>

#include "floq/model.hpp"

namespace floq {

struct PropagationSettings {
  // Explicit step (internal time units).  Zero selects an automatic step
  // honoring the caps dt <= min(T_carrier/200, 0.02/||H||_max) plus a
  // phase-drift budget for long horizons.  An explicit value above the caps
  // is rejected.
  double dt_internal = 0.0;
  // Keep every n-th step in the returned trajectory (the endpoints are
  // always kept).
  int sample_stride = 1;
  // Hard bound on |norm - 1| at any sampled time; exceeding it raises
  // NumericError.
  double norm_tolerance = 1e-8;
  // Target for the accumulated RK4 norm drift used by automatic step
  // selection.
  double drift_target = 1e-9;
};

struct Trajectory {
  std::vector<double> times_internal;
  std::vector<Eigen::VectorXcd> states;
  double max_norm_drift = 0.0;

  std::vector<double> times_s() const;
};

// Fixed-step RK4 integration of i dpsi/dt = H(t) psi for a monochromatic
// drive.  Requires t1 > t0 and a normalized initial state.  The norm is
// monitored at every sampled point; drift beyond settings.norm_tolerance is a
// step-size error (NumericError), never silently renormalized.
Trajectory propagate(const LadderSystem& system, const DriveSpec& drive,
                     const Eigen::VectorXcd& psi0, double t0_internal,
                     double t1_internal, const PropagationSettings& settings = {});

// Full propagator U(t1, t0) via column-wise integration of the identity.
// Postcondition: ||U^dagger U - I||_max <= settings.norm_tolerance.
Eigen::MatrixXcd propagator_over(const LadderSystem& system, const DriveSpec& drive,
                                 double t0_internal, double t1_internal,
                                 const PropagationSettings& settings = {});

// Automatic step size for a horizon of length total_time (internal units):
// the spec caps combined with a phase-drift budget.
double suggested_time_step(const LadderSystem& system, const DriveSpec& drive,
                           double total_time_internal, double drift_target = 1e-9);

// Trapezoidal time average of the population of `level` along the
// trajectory from psi0 over [t0, t1], accumulated at every integration step
// without storing the trajectory.
double time_averaged_population(const LadderSystem& system, const DriveSpec& drive,
                                const Eigen::VectorXcd& psi0, int level,
                                double t0_internal, double t1_internal,
                                const PropagationSettings& settings = {});

} // namespace floq
