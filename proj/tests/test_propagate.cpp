#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "floq/constants.hpp"
#include "floq/errors.hpp"
#include "floq/model.hpp"
#include "floq/propagate.hpp"

namespace {

using Cd = std::complex<double>;

Eigen::VectorXcd ground_state(int n) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n);
  psi(0) = Cd(1.0, 0.0);
  return psi;
}

floq::DriveSpec mono(double photon_eV, double scale = 1.0, double phase = 0.0) {
  floq::DriveSpec d;
  d.photon_energy_eV = photon_eV;
  d.amplitude_scale = scale;
  d.carrier_phase_rad = phase;
  return d;
}

// Two-level system tuned so the rotating-wave approximation is excellent:
// the effective Rabi rate b is ~1e-3 of the transition energy.
floq::LadderSystem two_level(double energy_eV, double b_rad_s) {
  floq::LadderSystem s;
  s.level_energies_eV = {0.0, energy_eV};
  s.parities = {floq::Parity::Even, floq::Parity::Odd};
  s.couplings_rad_s = {b_rad_s};
  return s;
}

} // namespace

TEST_SUITE("propagate") {

using namespace floq;

TEST_CASE("zero coupling leaves populations frozen and phases exact") {
  LadderSystem s = canonical_system();
  s.couplings_rad_s = {0.0, 0.0};
  const DriveSpec d = mono(0.87);

  Eigen::VectorXcd psi0(3);
  psi0 << Cd(0.6, 0.0), Cd(0.0, 0.8), Cd(0.0, 0.0);

  const double t1 = 40.0;
  PropagationSettings ps;
  ps.dt_internal = 0.002;  // fine step so phase error stays below 1e-9
  const Trajectory traj = propagate(s, d, psi0, 0.0, t1, ps);
  const Eigen::VectorXcd& end = traj.states.back();

  // Free evolution: a_k(t) = a_k(0) * exp(-i E_k t).
  for (int k = 0; k < 3; ++k) {
    const Cd expected =
        psi0(k) * std::exp(Cd(0.0, -s.level_energies_eV[k] * t1));
    CHECK(std::abs(end(k) - expected) < 1e-9);
  }
  CHECK(traj.max_norm_drift < 1e-9);
}

TEST_CASE("resonant two-level dynamics follow the rotating-wave solution") {
  // On resonance the RWA gives P_1(t) = sin^2(b t) for off-diagonal
  // 2 b sin(w t); corrections are O(b/w).
  const double b = 1.5e12;  // rad/s
  const LadderSystem s = two_level(2.61, b);
  const DriveSpec d = mono(2.61);

  const double b_internal = s.coupling_energy_eV(0);  // = b * hbar, in eV
  const double t_pi = constants::pi / (2.0 * b_internal);  // full inversion

  PropagationSettings ps;
  ps.sample_stride = 32;
  const Trajectory traj = propagate(s, d, ground_state(2), 0.0, t_pi, ps);

  double max_dev = 0.0;
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const double p1 = std::norm(traj.states[i](1));
    const double rwa = std::pow(std::sin(b_internal * traj.times_internal[i]), 2);
    max_dev = std::max(max_dev, std::abs(p1 - rwa));
  }
  CHECK(max_dev < 0.02);
  // Full population inversion at t_pi.
  CHECK(std::norm(traj.states.back()(1)) == doctest::Approx(1.0).epsilon(5e-3));
}

TEST_CASE("norm is conserved to tolerance on long horizons") {
  const LadderSystem s = canonical_system();
  const DriveSpec d = mono(0.87);
  const double horizon = 200.0 * d.period_internal();
  const Trajectory traj =
      propagate(s, d, ground_state(3), 0.0, horizon);
  CHECK(traj.max_norm_drift < 1e-8);
  CHECK(std::abs(traj.states.back().norm() - 1.0) < 1e-8);
}

TEST_CASE("propagator is unitary and reduces to identity on empty interval") {
  const LadderSystem s = canonical_system();
  const DriveSpec d = mono(0.87);
  const Eigen::MatrixXcd u = propagator_over(s, d, 0.0, d.period_internal());
  const Eigen::MatrixXcd gram = u.adjoint() * u;
  CHECK((gram - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("propagators compose over adjacent intervals") {
  const LadderSystem s = canonical_system();
  const DriveSpec d = mono(0.87, 1.0, 0.4);
  const double t1 = 3.7, t2 = 9.2;
  const Eigen::MatrixXcd u10 = propagator_over(s, d, 0.0, t1);
  const Eigen::MatrixXcd u21 = propagator_over(s, d, t1, t2);
  const Eigen::MatrixXcd u20 = propagator_over(s, d, 0.0, t2);
  CHECK((u21 * u10 - u20).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("zero-coupling propagator is the exact free-evolution phase matrix") {
  LadderSystem s = canonical_system();
  s.couplings_rad_s = {0.0, 0.0};
  const DriveSpec d = mono(0.87);
  const double t1 = 11.0;
  PropagationSettings ps;
  ps.dt_internal = 0.002;
  const Eigen::MatrixXcd u = propagator_over(s, d, 0.0, t1, ps);
  for (int k = 0; k < 3; ++k) {
    const Cd expected = std::exp(Cd(0.0, -s.level_energies_eV[k] * t1));
    CHECK(std::abs(u(k, k) - expected) < 1e-9);
  }
  CHECK((u.cwiseAbs() -
         Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("halving the step reduces endpoint error by about sixteen") {
  // Classical RK4 is fourth order: err(dt) / err(dt/2) -> 16.
  const LadderSystem s = canonical_system();
  const DriveSpec d = mono(0.87);
  const double horizon = 2.0 * d.period_internal();

  PropagationSettings fine;
  fine.dt_internal = horizon / 65536.0;
  const Eigen::VectorXcd ref =
      propagate(s, d, ground_state(3), 0.0, horizon, fine).states.back();

  auto endpoint_err = [&](double steps) {
    PropagationSettings ps;
    ps.dt_internal = horizon / steps;
    ps.norm_tolerance = 1e-4;  // coarse steps drift more; that is the point
    const Eigen::VectorXcd end =
        propagate(s, d, ground_state(3), 0.0, horizon, ps).states.back();
    return (end - ref).norm();
  };

  const double e1 = endpoint_err(4096.0);
  const double e2 = endpoint_err(8192.0);
  CHECK(e1 / e2 > 12.0);
  CHECK(e1 / e2 < 20.0);
}

TEST_CASE("global diagonal shift changes populations by nothing") {
  // Shifting all level energies by a constant is a pure global phase.
  const LadderSystem s = canonical_system();
  LadderSystem shifted = s;
  for (double& e : shifted.level_energies_eV) e += 5.0;

  const DriveSpec d = mono(0.87);
  const double horizon = 15.0 * d.period_internal();

  PropagationSettings ps;
  // Pin the step so both runs integrate on the identical grid; it must sit
  // below the step cap of the shifted system, whose norm bound is larger.
  ps.dt_internal = 0.002;
  ps.sample_stride = 64;

  const Trajectory a = propagate(s, d, ground_state(3), 0.0, horizon, ps);
  const Trajectory b = propagate(shifted, d, ground_state(3), 0.0, horizon, ps);
  REQUIRE(a.states.size() == b.states.size());
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    for (int k = 0; k < 3; ++k) {
      CHECK(std::abs(std::norm(a.states[i](k)) - std::norm(b.states[i](k))) <
            1e-9);
    }
  }
}

TEST_CASE("time-averaged population matches the stored-trajectory average") {
  const LadderSystem s = canonical_system();
  const DriveSpec d = mono(0.8718);
  const double horizon = 25.0 * d.period_internal();

  PropagationSettings ps;
  ps.dt_internal = d.period_internal() / 1500.0;

  const double streamed =
      time_averaged_population(s, d, ground_state(3), 1, 0.0, horizon, ps);

  const Trajectory traj = propagate(s, d, ground_state(3), 0.0, horizon, ps);
  double acc = 0.0;
  for (std::size_t i = 1; i < traj.states.size(); ++i) {
    const double dt = traj.times_internal[i] - traj.times_internal[i - 1];
    acc += 0.5 * dt *
           (std::norm(traj.states[i](1)) + std::norm(traj.states[i - 1](1)));
  }
  acc /= (traj.times_internal.back() - traj.times_internal.front());
  CHECK(streamed == doctest::Approx(acc).epsilon(1e-10));
}

TEST_CASE("explicit steps above the stability caps are rejected") {
  const LadderSystem s = canonical_system();
  const DriveSpec d = mono(0.87);
  PropagationSettings ps;
  ps.dt_internal = d.period_internal() / 10.0;  // far above T/200
  CHECK_THROWS_AS(
      propagate(s, d, ground_state(3), 0.0, d.period_internal(), ps),
      std::invalid_argument);
}

TEST_CASE("invalid propagation arguments are rejected") {
  const LadderSystem s = canonical_system();
  const DriveSpec d = mono(0.87);
  SUBCASE("reversed interval") {
    CHECK_THROWS(propagate(s, d, ground_state(3), 1.0, 0.0));
  }
  SUBCASE("unnormalized initial state") {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(3);
    psi(0) = Cd(2.0, 0.0);
    CHECK_THROWS(propagate(s, d, psi, 0.0, 1.0));
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS(propagate(s, d, ground_state(4), 0.0, 1.0));
  }
}

TEST_CASE("suggested step honors the documented caps") {
  const LadderSystem s = canonical_system();
  const DriveSpec d = mono(0.87);
  const double horizon = 400.0 * d.period_internal();
  const double dt = suggested_time_step(s, d, horizon);
  CHECK(dt <= d.period_internal() / 200.0 + 1e-15);
  CHECK(dt <= 0.02 / s.hamiltonian_norm_bound_eV(d.amplitude_scale) + 1e-15);
  CHECK(dt > 0.0);
  // Longer horizons can only tighten the step.
  CHECK(suggested_time_step(s, d, 100.0 * horizon) <= dt + 1e-15);
}

TEST_CASE("trajectory time stamps convert to seconds consistently") {
  const LadderSystem s = canonical_system();
  const DriveSpec d = mono(0.87);
  PropagationSettings ps;
  ps.sample_stride = 16;
  const Trajectory traj =
      propagate(s, d, ground_state(3), 0.0, d.period_internal(), ps);
  const std::vector<double> ts = traj.times_s();
  REQUIRE(ts.size() == traj.times_internal.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    CHECK(ts[i] == doctest::Approx(traj.times_internal[i] *
                                   constants::seconds_per_internal_time)
                        .epsilon(1e-15));
  }
}

} // TEST_SUITE
