#include "bounce/sticky.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/core.h>

#include "bounce/root_search.hpp"

namespace bounce {

namespace {

constexpr double kTangentStep = 1e-9;
constexpr double kChunk = 10.0;

}  // namespace

StickySolution::StickySolution(const BallState& onset, const ModelParams& p)
    : onset_(onset), params_(p), osc_(p.mu, 0.5), u0_(0.0), y_eq_(1.0 - 2.0 * p.gamma) {
  onset_.x = 0.0;
  onset_.xdot = 0.0;
  u0_ = onset_.y - y_eq_;
}

BallState StickySolution::at(double tau) const {
  const auto [u, v] = osc_.propagate(u0_, onset_.ydot, tau);
  return {onset_.t + tau, 0.0, 0.0, y_eq_ + u, v};
}

std::array<double, 2> StickySolution::force_coefficients(int order) const {
  const auto a = osc_.derivative_coefficients(order);
  const auto b = osc_.derivative_coefficients(order + 1);
  return {0.5 * a[0] + params_.mu * b[0], 0.5 * a[1] + params_.mu * b[1]};
}

std::array<double, 4> StickySolution::force_derivatives(double tau) const {
  const auto [u, v] = osc_.propagate(u0_, onset_.ydot, tau);
  std::array<double, 4> out{};
  for (int k = 0; k < 4; ++k) {
    const auto c = force_coefficients(k);
    out[k] = c[0] * u + c[1] * v;
  }
  out[0] -= 2.0 * params_.gamma;
  return out;
}

double StickySolution::force_bound4(double tau) const {
  const auto [u, v] = osc_.propagate(u0_, onset_.ydot, tau);
  const auto c = force_coefficients(4);
  return osc_.linear_form_bound(c[0], c[1], u, v);
}

bool StickySolution::never_detaches_from(double tau) const {
  const auto [u, v] = osc_.propagate(u0_, onset_.ydot, tau);
  const double mu = params_.mu;
  return std::sqrt((1.0 + 2.0 * mu * mu) * osc_.lyapunov(u, v)) < 2.0 * params_.gamma * (1.0 - 1e-12);
}

StickySolution build_sticky(const BallState& onset, const ModelParams& p, double f_tol) {
  const double f = floor_force(onset, p);
  const double ydot_max = 4.0 * p.gamma * p.mu;
  if (std::abs(onset.x) > kFloorTolerance || std::abs(onset.xdot) > 1e-10 || std::abs(f) > f_tol ||
      !(onset.ydot < ydot_max)) {
    throw NotStickyOnset(fmt::format("not a sticky onset: x={:.3g} xdot={:.3g} F={:.3g} ydot={:.6g} (need < {:.6g})",
                                     onset.x, onset.xdot, f, onset.ydot, ydot_max));
  }
  return StickySolution(onset, p);
}

StickySolution make_resting_contact(const BallState& s, const ModelParams& p) {
  if (std::abs(s.x) > kFloorTolerance || std::abs(s.xdot) > 1e-10 || floor_force(s, p) > 1e-9) {
    throw NotStickyOnset("lower mass is not resting on the floor");
  }
  return StickySolution(s, p);
}

Detachment find_detachment(const StickySolution& ss, double horizon) {
  const auto jet = [&](double tau) -> GuardJet {
    const auto f = ss.force_derivatives(tau);
    return {-f[0], -f[1], -f[2], -f[3], ss.force_bound4(tau)};
  };

  double start = 0.0;
  bool departing = ss.force(0.0) > -1e-9;
  for (int guard = 0; guard < 1000000; ++guard) {
    if (ss.never_detaches_from(start)) return {Detachment::Status::Never, start};
    if (start >= horizon) return {Detachment::Status::Horizon, horizon};

    GuardSearchOptions opt;
    opt.horizon = std::min(horizon, start + kChunk);
    opt.departing = departing;
    const GuardHit hit = first_guard_root(jet, start, opt);
    if (hit.outcome == GuardOutcome::Stuck) {
      start = hit.tau + kTangentStep;
      departing = false;
      continue;
    }
    if (hit.outcome == GuardOutcome::Horizon) {
      start = hit.tau;
      departing = false;
      continue;
    }
    const double fdot = ss.force_derivatives(hit.tau)[1];
    if (fdot > 0.0) return {Detachment::Status::Found, hit.tau};
    // F touches zero from below; contact persists.
    start = hit.tau + kTangentStep;
    departing = false;
  }
  return {Detachment::Status::Horizon, start};
}

Detachment find_detachment(const StickySolution& ss) {
  const double mu = ss.params().mu;
  return find_detachment(ss, mu > 0.0 ? 50.0 / mu : 1e4);
}

DurationCheck min_duration_check(const StickySolution& ss, double floor) {
  const Detachment d = find_detachment(ss);
  if (d.status != Detachment::Status::Found) {
    return {true, std::numeric_limits<double>::infinity(), floor};
  }
  return {d.tau > floor, d.tau, floor};
}

double estimate_min_sticky_duration(const ModelParams& p, int samples, double ydot_lo) {
  const double ydot_hi = 4.0 * p.gamma * p.mu;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double w = (i + 0.5) / samples;
    const double ydot = ydot_lo + w * (ydot_hi - ydot_lo);
    const BallState onset{0.0, 0.0, 0.0, 1.0 + 2.0 * p.gamma - 2.0 * p.mu * ydot, ydot};
    const Detachment d = find_detachment(build_sticky(onset, p));
    if (d.status == Detachment::Status::Found) best = std::min(best, d.tau);
  }
  return best;
}

}  // namespace bounce
