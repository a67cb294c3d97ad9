#include "bounce/flight.hpp"

#include <cmath>

namespace bounce {

FlightSolution::FlightSolution(const BallState& origin, const ModelParams& p)
    : origin_(origin),
      params_(p),
      cm0_(origin.cm()),
      spring_(2.0 * p.mu, 1.0),
      c3_(spring_.derivative_coefficients(3)),
      c4_(spring_.derivative_coefficients(4)),
      b4_norm_(std::hypot(c4_[0], c4_[1])) {}

std::array<double, 2> FlightSolution::spring_state(double tau) const {
  return spring_.propagate(cm0_.xi, cm0_.xidot, tau);
}

BallState FlightSolution::at(double tau) const {
  const TransitionIncrements d = spring_.increments(tau);
  const double g = params_.gamma;
  // Change of xi and xidot over the interval.
  const double dxi = cm0_.xi * d.p11m1 + cm0_.xidot * (tau + d.q12);
  const double dxidot = cm0_.xi * d.p21 + cm0_.xidot * d.p22m1;
  const double dxi_rel = dxi - cm0_.xidot * tau;  // part not linear in tau
  const double drop = 0.5 * g * tau * tau;

  BallState s;
  s.t = origin_.t + tau;
  s.x = origin_.x + origin_.xdot * tau - drop - dxi_rel;
  s.y = origin_.y + origin_.ydot * tau - drop + dxi_rel;
  s.xdot = origin_.xdot - g * tau - dxidot;
  s.ydot = origin_.ydot - g * tau + dxidot;
  return s;
}

CmCoords FlightSolution::cm_at(double tau) const {
  const auto [xi, xidot] = spring_state(tau);
  const double g = params_.gamma;
  return {cm0_.psi + cm0_.psidot * tau - 0.5 * g * tau * tau, cm0_.psidot - g * tau, xi, xidot};
}

XDerivatives FlightSolution::x_derivatives(double tau) const {
  const BallState s = at(tau);
  const auto [xi, xidot] = spring_state(tau);
  const double mu = params_.mu;
  const double xi3 = c3_[0] * xi + c3_[1] * xidot;
  return {s.x, s.xdot, -params_.gamma + xi + 2.0 * mu * xidot, -xi3};
}

double FlightSolution::y_derivative(int k, double tau) const {
  if (k == 0) return at(tau).y;
  if (k == 1) return at(tau).ydot;
  const auto [xi, xidot] = spring_state(tau);
  const auto ck = spring_.derivative_coefficients(k);
  const double v = ck[0] * xi + ck[1] * xidot;
  return k == 2 ? v - params_.gamma : v;
}

double FlightSolution::fourth_derivative_bound(double tau) const {
  const auto [xi, xidot] = spring_state(tau);
  return b4_norm_ * std::hypot(xi, xidot);
}

FlightSolution build_flight(const BallState& s, const ModelParams& p) { return FlightSolution(s, p); }

BallState eval_flight(const FlightSolution& f, double tau) { return f.at(tau); }

XDerivatives eval_flight_derivatives(const FlightSolution& f, double tau) { return f.x_derivatives(tau); }

}  // namespace bounce
