#pragma once

// Internal fixed-step RK4 engine shared by the monochromatic and pulsed
// propagators.  Not installed; include only from core sources.

#include <Eigen/Dense>
#include <complex>

namespace floq::detail {

// Integrate i dPsi/dt = H(t) Psi over [t0, t0 + n_steps*dt] with classical
// RK4.  Psi may be a column vector or a full matrix (column-wise evolution).
//
// write_h(t, H) must fill the preallocated matrix H with H(t).
// observe(step, t, Psi) is called for step = 0 (initial state) and after
// every completed step; Psi is the current state.
//
// Step times are computed as t0 + k*dt (not accumulated) so long runs do not
// pick up time-grid roundoff.
template <typename HWrite, typename Observer>
void rk4_integrate(int dim, int columns, const HWrite& write_h, double t0,
                   double dt, long n_steps, Eigen::MatrixXcd& psi,
                   const Observer& observe) {
  Eigen::MatrixXcd h(dim, dim);
  Eigen::MatrixXcd k1(dim, columns), k2(dim, columns), k3(dim, columns),
      k4(dim, columns), tmp(dim, columns);
  const std::complex<double> minus_i(0.0, -1.0);

  observe(0L, t0, psi);
  for (long step = 0; step < n_steps; ++step) {
    const double t = t0 + static_cast<double>(step) * dt;
    const double half = 0.5 * dt;

    write_h(t, h);
    k1.noalias() = minus_i * (h * psi);

    write_h(t + half, h);
    tmp = psi + half * k1;
    k2.noalias() = minus_i * (h * tmp);

    tmp = psi + half * k2;
    k3.noalias() = minus_i * (h * tmp);

    write_h(t + dt, h);
    tmp = psi + dt * k3;
    k4.noalias() = minus_i * (h * tmp);

    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    observe(step + 1, t0 + static_cast<double>(step + 1) * dt, psi);
  }
}

} // namespace floq::detail
