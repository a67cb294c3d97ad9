#include "bounce/rigid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/core.h>

namespace bounce {

RestitutionModel RestitutionModel::constant(double r) {
  return {fmt::format("constant r={}", r), [r](double) { return r; }};
}

RestitutionModel RestitutionModel::one_fifth(double U) {
  return {fmt::format("one-fifth U={}", U), [U](double u) { return 1.0 - std::pow(u / U, 0.2); }};
}

RestitutionModel RestitutionModel::stitched(const ModelParams& p) {
  return {fmt::format("stitched gamma={} mu={}", p.gamma, p.mu), [p](double u) { return stitched_restitution(u, p); }};
}

RigidBounce rigid_bounce(double u0, double g, const RestitutionModel& model, std::size_t n) {
  if (!(u0 > 0.0) || !(g > 0.0) || n < 1) {
    throw std::invalid_argument("rigid_bounce needs u0 > 0, g > 0, n >= 1");
  }
  RigidBounce out;
  out.speeds.reserve(n + 1);
  out.speeds.push_back(u0);
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double u = out.speeds.back();
    const double tau = 2.0 * u / g;
    total += tau;
    out.flight_times.push_back(tau);
    out.cumulative.push_back(total);
    out.speeds.push_back(model.r(u) * u);
  }
  return out;
}

double spring_restitution(double mu) {
  if (!(mu < 1.0) || mu < 0.0) {
    throw std::domain_error(fmt::format("spring restitution needs 0 <= mu < 1, got {}", mu));
  }
  return std::exp(-mu * std::numbers::pi / std::sqrt(1.0 - mu * mu));
}

double stitched_restitution(double u, const ModelParams& p) {
  const double r_high = spring_restitution(p.mu);
  if (p.mu == 0.0) return 1.0;
  const double slope = p.mu / (3.0 * p.gamma);
  const double u_c = (1.0 - r_high) / slope;
  return u <= u_c ? 1.0 - slope * u : r_high;
}

}  // namespace bounce
