#include "floq/propagate.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "floq/constants.hpp"
#include "floq/errors.hpp"
#include "propagate_detail.hpp"
#include "rk4.hpp"

namespace floq {

namespace detail {

MonoHamiltonian MonoHamiltonian::make(const LadderSystem& system,
                                      const DriveSpec& drive) {
  MonoHamiltonian ctx;
  const int n = system.level_count();
  ctx.center_eV = system.spectral_center_eV();
  ctx.diag_centered_eV.resize(n);
  for (int k = 0; k < n; ++k) {
    ctx.diag_centered_eV[k] =
        system.level_energies_eV[static_cast<std::size_t>(k)] - ctx.center_eV;
  }
  ctx.off_eV.resize(static_cast<std::size_t>(n - 1));
  for (int k = 0; k + 1 < n; ++k) {
    ctx.off_eV[static_cast<std::size_t>(k)] =
        2.0 * system.coupling_energy_eV(k) * drive.amplitude_scale;
  }
  ctx.omega_eV = drive.photon_energy_eV;
  ctx.phase_rad = drive.carrier_phase_rad;
  return ctx;
}

void MonoHamiltonian::write(double t, Eigen::MatrixXcd& h) const {
  const double carrier = std::sin(omega_eV * t + phase_rad);
  const int n = static_cast<int>(diag_centered_eV.size());
  h.setZero();
  for (int k = 0; k < n; ++k) {
    h(k, k) = diag_centered_eV[k];
    if (k + 1 < n) {
      const double off = off_eV[static_cast<std::size_t>(k)] * carrier;
      h(k, k + 1) = off;
      h(k + 1, k) = off;
    }
  }
}

long step_count(const LadderSystem& system, const DriveSpec& drive, double t0,
                double t1, const PropagationSettings& settings, long multiple_of) {
  const double span = t1 - t0;
  const double dt_cap =
      std::min(drive.period_internal() / 200.0,
               0.02 / system.hamiltonian_norm_bound_eV(drive.amplitude_scale));
  double dt = dt_cap;
  if (settings.dt_internal > 0.0) {
    if (settings.dt_internal > dt_cap * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "explicit time step " << settings.dt_internal
          << " exceeds the step cap " << dt_cap
          << " = min(T_carrier/200, 0.02/||H||)";
      throw std::invalid_argument(msg.str());
    }
    dt = settings.dt_internal;
  } else {
    dt = suggested_time_step(system, drive, span, settings.drift_target);
  }
  long n = static_cast<long>(std::ceil(span / dt - 1e-9));
  if (n < 1) n = 1;
  if (multiple_of > 1) {
    n = ((n + multiple_of - 1) / multiple_of) * multiple_of;
  }
  return n;
}

std::vector<Eigen::MatrixXcd> sampled_propagators(const LadderSystem& system,
                                                  const DriveSpec& drive,
                                                  double t0, double t1,
                                                  int n_samples,
                                                  const PropagationSettings& settings) {
  system.validate();
  drive.validate();
  if (drive.kind != DriveKind::Monochromatic) {
    throw std::invalid_argument("sampled_propagators requires a monochromatic drive");
  }
  if (!(t1 > t0)) throw std::invalid_argument("requires t1 > t0");
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");

  const int n = system.level_count();
  const MonoHamiltonian ctx = MonoHamiltonian::make(system, drive);
  const long n_steps = step_count(system, drive, t0, t1, settings, n_samples);
  const double dt = (t1 - t0) / static_cast<double>(n_steps);
  const long per_sample = n_steps / n_samples;

  std::vector<Eigen::MatrixXcd> out;
  out.reserve(static_cast<std::size_t>(n_samples) + 1);

  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
  const std::complex<double> i_unit(0.0, 1.0);
  rk4_integrate(
      n, n, [&ctx](double t, Eigen::MatrixXcd& h) { ctx.write(t, h); }, t0, dt,
      n_steps, u, [&](long step, double t, const Eigen::MatrixXcd& cur) {
        if (step % per_sample == 0) {
          // Restore the global phase dropped by spectral centering.
          out.push_back(std::exp(-i_unit * ctx.center_eV * (t - t0)) * cur);
        }
      });

  const Eigen::MatrixXcd& final_u = out.back();
  const double defect =
      (final_u.adjoint() * final_u - Eigen::MatrixXcd::Identity(n, n))
          .cwiseAbs()
          .maxCoeff();
  if (!std::isfinite(defect) || defect > settings.norm_tolerance) {
    std::ostringstream msg;
    msg << "propagator unitarity defect " << defect << " exceeds tolerance "
        << settings.norm_tolerance << " over [" << t0 << ", " << t1
        << "] with " << n_steps << " steps (dt = " << dt
        << "); reduce the step size or the horizon";
    throw NumericError(msg.str());
  }
  return out;
}

} // namespace detail

std::vector<double> Trajectory::times_s() const {
  std::vector<double> out(times_internal.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = units::internal_time_to_seconds(times_internal[i]);
  }
  return out;
}

double suggested_time_step(const LadderSystem& system, const DriveSpec& drive,
                           double total_time_internal, double drift_target) {
  const double scale = drive.kind == DriveKind::Monochromatic
                           ? drive.amplitude_scale
                           : drive.peak_scale;
  double dt = std::min(drive.period_internal() / 200.0,
                       0.02 / system.hamiltonian_norm_bound_eV(scale));
  // RK4 applied to a mode of frequency lambda multiplies its amplitude by
  // |R(dt*lambda)| = 1 - (dt*lambda)^6/144 + O(dt^8) per step, so the norm
  // drift over n = T/dt steps is about T dt^5 L^6 / 144.  Keep it below the
  // drift target.
  const double l_bound = system.centered_norm_bound_eV(scale);
  if (total_time_internal > 0.0 && l_bound > 0.0 && drift_target > 0.0) {
    const double dt_drift = std::pow(
        144.0 * drift_target / (total_time_internal * std::pow(l_bound, 6.0)),
        0.2);
    dt = std::min(dt, dt_drift);
  }
  return dt;
}

Trajectory propagate(const LadderSystem& system, const DriveSpec& drive,
                     const Eigen::VectorXcd& psi0, double t0_internal,
                     double t1_internal, const PropagationSettings& settings) {
  system.validate();
  drive.validate();
  if (drive.kind != DriveKind::Monochromatic) {
    throw std::invalid_argument(
        "propagate handles monochromatic drives; use the pulsed module for "
        "envelopes");
  }
  if (!(t1_internal > t0_internal)) {
    throw std::invalid_argument("propagate requires t1 > t0");
  }
  const int n = system.level_count();
  if (psi0.size() != n) {
    throw std::invalid_argument("initial state dimension does not match the system");
  }
  if (std::abs(psi0.norm() - 1.0) > settings.norm_tolerance) {
    throw std::invalid_argument("initial state must be normalized");
  }

  const detail::MonoHamiltonian ctx = detail::MonoHamiltonian::make(system, drive);
  const long n_steps =
      detail::step_count(system, drive, t0_internal, t1_internal, settings, 1);
  const double dt = (t1_internal - t0_internal) / static_cast<double>(n_steps);
  const long stride = settings.sample_stride > 0 ? settings.sample_stride : 1;

  Trajectory traj;
  traj.times_internal.reserve(static_cast<std::size_t>(n_steps / stride) + 2);
  traj.states.reserve(static_cast<std::size_t>(n_steps / stride) + 2);

  Eigen::MatrixXcd psi = psi0;
  detail::rk4_integrate(
      n, 1, [&ctx](double t, Eigen::MatrixXcd& h) { ctx.write(t, h); },
      t0_internal, dt, n_steps,
      psi, [&](long step, double t, const Eigen::MatrixXcd& cur) {
        if (step % stride != 0 && step != n_steps) return;
        const double norm = cur.col(0).norm();
        if (!std::isfinite(norm)) {
          std::ostringstream msg;
          msg << "state became non-finite at t = " << t << " (step " << step
              << " of " << n_steps << ", dt = " << dt << ")";
          throw NumericError(msg.str());
        }
        const double drift = std::abs(norm - 1.0);
        traj.max_norm_drift = std::max(traj.max_norm_drift, drift);
        if (drift > settings.norm_tolerance) {
          std::ostringstream msg;
          msg << "norm drift " << drift << " exceeds tolerance "
              << settings.norm_tolerance << " at t = " << t << " (step "
              << step << " of " << n_steps << ", dt = " << dt
              << "); reduce the step size";
          throw NumericError(msg.str());
        }
        traj.times_internal.push_back(t);
        traj.states.emplace_back(cur.col(0));
      });

  // Restore the global phase dropped by spectral centering.
  const std::complex<double> i_unit(0.0, 1.0);
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    traj.states[i] *= std::exp(
        -i_unit * ctx.center_eV * (traj.times_internal[i] - t0_internal));
  }
  return traj;
}

Eigen::MatrixXcd propagator_over(const LadderSystem& system, const DriveSpec& drive,
                                 double t0_internal, double t1_internal,
                                 const PropagationSettings& settings) {
  if (t1_internal == t0_internal) {
    system.validate();
    return Eigen::MatrixXcd::Identity(system.level_count(), system.level_count());
  }
  return detail::sampled_propagators(system, drive, t0_internal, t1_internal, 1,
                                     settings)
      .back();
}

double time_averaged_population(const LadderSystem& system, const DriveSpec& drive,
                                const Eigen::VectorXcd& psi0, int level,
                                double t0_internal, double t1_internal,
                                const PropagationSettings& settings) {
  system.validate();
  drive.validate();
  if (drive.kind != DriveKind::Monochromatic) {
    throw std::invalid_argument("time_averaged_population requires a monochromatic drive");
  }
  if (!(t1_internal > t0_internal)) {
    throw std::invalid_argument("time_averaged_population requires t1 > t0");
  }
  const int n = system.level_count();
  if (level < 0 || level >= n) {
    throw std::invalid_argument("level index out of range");
  }
  if (psi0.size() != n) {
    throw std::invalid_argument("initial state dimension does not match the system");
  }
  if (std::abs(psi0.norm() - 1.0) > settings.norm_tolerance) {
    throw std::invalid_argument("initial state must be normalized");
  }

  const detail::MonoHamiltonian ctx = detail::MonoHamiltonian::make(system, drive);
  const long n_steps =
      detail::step_count(system, drive, t0_internal, t1_internal, settings, 1);
  const double dt = (t1_internal - t0_internal) / static_cast<double>(n_steps);

  double acc = 0.0;
  double max_drift = 0.0;
  Eigen::MatrixXcd psi = psi0;
  detail::rk4_integrate(
      n, 1, [&ctx](double t, Eigen::MatrixXcd& h) { ctx.write(t, h); },
      t0_internal, dt, n_steps,
      psi, [&](long step, double t, const Eigen::MatrixXcd& cur) {
        // Populations are centering-phase independent; accumulate directly.
        const double pop = std::norm(cur(level, 0));
        const double weight = (step == 0 || step == n_steps) ? 0.5 : 1.0;
        acc += weight * pop;
        const double norm = cur.col(0).norm();
        if (!std::isfinite(norm)) {
          std::ostringstream msg;
          msg << "state became non-finite at t = " << t;
          throw NumericError(msg.str());
        }
        const double drift = std::abs(norm - 1.0);
        max_drift = std::max(max_drift, drift);
        if (drift > settings.norm_tolerance) {
          std::ostringstream msg;
          msg << "norm drift " << drift << " exceeds tolerance "
              << settings.norm_tolerance << " at t = " << t << " (step "
              << step << " of " << n_steps << ", dt = " << dt
              << "); reduce the step size";
          throw NumericError(msg.str());
        }
      });
  return acc / static_cast<double>(n_steps);
}

} // namespace floq
