#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls into the propagators or root finders under test.

#include <array>
#include <cmath>
#include <optional>
#include <random>

#include <boost/numeric/odeint.hpp>

#include "bounce/model.hpp"

namespace oracle {

using State4 = std::array<double, 4>;  // x, xdot, y, ydot

// Dimensionless two-mass equations, written out from the force balance.
inline void flight_rhs(const State4& s, State4& d, double gamma, double mu) {
  const double x = s[0], xd = s[1], y = s[2], yd = s[3];
  d[0] = xd;
  d[1] = -mu * xd - 0.5 * x - gamma - 0.5 + 0.5 * y + mu * yd;
  d[2] = yd;
  d[3] = -mu * yd - 0.5 * y - gamma + 0.5 + 0.5 * x + mu * xd;
}

// Flight by adaptive Runge-Kutta-Fehlberg 7(8) at tolerance `tol`.
inline bounce::BallState integrate_flight(const bounce::BallState& s, const bounce::ModelParams& p, double tau,
                                          double tol = 1e-13) {
  namespace ode = boost::numeric::odeint;
  State4 u{s.x, s.xdot, s.y, s.ydot};
  if (tau > 0.0) {
    auto stepper = ode::make_controlled(tol, tol, ode::runge_kutta_fehlberg78<State4>());
    ode::integrate_adaptive(
        stepper, [&](const State4& a, State4& d, double) { flight_rhs(a, d, p.gamma, p.mu); }, u, 0.0, tau,
        std::min(1e-3, tau));
  }
  return {s.t + tau, u[0], u[1], u[2], u[3]};
}

// Same system with the contact force holding x = 0: only y moves.
inline bounce::BallState integrate_sticky(const bounce::BallState& s, const bounce::ModelParams& p, double tau,
                                          double tol = 1e-13) {
  namespace ode = boost::numeric::odeint;
  std::array<double, 2> u{s.y, s.ydot};
  if (tau > 0.0) {
    auto stepper = ode::make_controlled(tol, tol, ode::runge_kutta_fehlberg78<std::array<double, 2>>());
    ode::integrate_adaptive(
        stepper,
        [&](const std::array<double, 2>& a, std::array<double, 2>& d, double) {
          d[0] = a[1];
          d[1] = -p.mu * a[1] - 0.5 * a[0] - p.gamma + 0.5;
        },
        u, 0.0, tau, std::min(1e-3, tau));
  }
  return {s.t + tau, 0.0, 0.0, u[0], u[1]};
}

// Energy in extended precision from the raw coordinates.
inline long double energy_ld(const bounce::BallState& s, const bounce::ModelParams& p) {
  const long double x = s.x, xd = s.xdot, y = s.y, yd = s.ydot;
  const long double psi = (x + y - 1.0L) / 2.0L, psid = (xd + yd) / 2.0L;
  const long double xi = (y - x - 1.0L) / 2.0L, xid = (yd - xd) / 2.0L;
  return xid * xid / 2.0L + xi * xi / 2.0L + psid * psid / 2.0L + static_cast<long double>(p.gamma) * psi;
}

// x(t) of a free flight from textbook formulas in long double, for mu < 1.
struct ClosedFormX {
  long double psi0, psid0, xi0, xid0, gamma, beta, w;

  ClosedFormX(const bounce::BallState& s, const bounce::ModelParams& p) {
    psi0 = (static_cast<long double>(s.x) + s.y - 1.0L) / 2.0L;
    psid0 = (static_cast<long double>(s.xdot) + s.ydot) / 2.0L;
    xi0 = (static_cast<long double>(s.y) - s.x - 1.0L) / 2.0L;
    xid0 = (static_cast<long double>(s.ydot) - s.xdot) / 2.0L;
    gamma = p.gamma;
    beta = p.mu;
    w = std::sqrt(1.0L - beta * beta);
  }
  long double operator()(long double t) const {
    const long double psi = psi0 + psid0 * t - gamma * t * t / 2.0L;
    const long double xi =
        std::exp(-beta * t) * (xi0 * std::cos(w * t) + (xid0 + beta * xi0) / w * std::sin(w * t));
    return psi - xi;
  }
};

// First contact by dense sampling at `step` followed by bisection on the
// closed form. Starts at `step` so that a departure from x = 0 is skipped.
inline std::optional<double> dense_contact(const bounce::BallState& s, const bounce::ModelParams& p, double horizon,
                                           double step = 1e-6) {
  const ClosedFormX x(s, p);
  long double a = 0.0L;
  long double xa = s.x > 0.0 ? x(0.0L) : 1.0L;
  const long double h = step;
  for (long double t = h; t <= horizon; t += h) {
    const long double xt = x(t);
    if (xt <= 0.0L && xa > 0.0L) {
      long double lo = a, hi = t;
      for (int i = 0; i < 200 && hi - lo > 1e-18L; ++i) {
        const long double m = (lo + hi) / 2.0L;
        (x(m) > 0.0L ? lo : hi) = m;
      }
      return static_cast<double>((lo + hi) / 2.0L);
    }
    a = t;
    xa = xt;
  }
  return std::nullopt;
}

// x derivatives up to third order implied by the equations of motion at a state.
inline std::array<double, 3> x_higher(const bounce::BallState& s, const bounce::ModelParams& p) {
  State4 d{};
  flight_rhs({s.x, s.xdot, s.y, s.ydot}, d, p.gamma, p.mu);
  const double xdd = d[1], ydd = d[3];
  const double xddd = -p.mu * xdd - 0.5 * s.xdot + 0.5 * s.ydot + p.mu * ydd;
  return {xdd, ydd, xddd};
}

// A flight-start state above the floor with bounded energy.
inline bounce::BallState random_state(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> h(0.0, 1.0);
  const double x = scale * h(rng);
  const double y = x + 1.0 + 0.5 * scale * u(rng);
  return {0.0, x, scale * u(rng), y, scale * u(rng)};
}

}  // namespace oracle
