#include "bounce/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <fmt/core.h>

#include "bounce/root_search.hpp"

namespace bounce {

void NonlinearParams::validate() const {
  base.validate();
  if (!(rho > 0.0) || !(a >= 0.0) || !(b >= 0.0)) {
    throw std::invalid_argument(fmt::format("need rho > 0, a >= 0, b >= 0 (rho={}, a={}, b={})", rho, a, b));
  }
}

double nonlinear_spring_acceleration(double xi, double xidot, const NonlinearParams& p) {
  const double ax = std::abs(xi);
  const double pa = p.a == 0.0 ? 1.0 : std::pow(ax, p.a);
  const double pb = p.b == 0.0 ? 1.0 : std::pow(ax, p.b);
  return -p.rho * xi * pa - 2.0 * p.base.mu * xidot * pb;
}

double nonlinear_energy(const BallState& s, const NonlinearParams& p) {
  const CmCoords c = s.cm();
  return 0.5 * c.psidot * c.psidot + 0.5 * c.xidot * c.xidot +
         p.rho * std::pow(std::abs(c.xi), p.a + 2.0) / (p.a + 2.0) + p.base.gamma * c.psi;
}

double nonlinear_equilibrium_xi(const NonlinearParams& p) {
  return -std::pow(p.base.gamma / p.rho, 1.0 / (p.a + 1.0));
}

namespace {

struct Dp45 {
  double xi, xidot, err_xi, err_xidot;
};

Dp45 dp45(double x, double v, double h, const NonlinearParams& p) {
  const auto f = [&p](double xi, double xidot) { return nonlinear_spring_acceleration(xi, xidot, p); };
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;

  // State (xi, xidot); derivative (xidot, f).
  const double k1x = v, k1v = f(x, v);
  const double x2 = x + h * a21 * k1x, v2 = v + h * a21 * k1v;
  const double k2x = v2, k2v = f(x2, v2);
  const double x3 = x + h * (a31 * k1x + a32 * k2x), v3 = v + h * (a31 * k1v + a32 * k2v);
  const double k3x = v3, k3v = f(x3, v3);
  const double x4 = x + h * (a41 * k1x + a42 * k2x + a43 * k3x), v4 = v + h * (a41 * k1v + a42 * k2v + a43 * k3v);
  const double k4x = v4, k4v = f(x4, v4);
  const double x5 = x + h * (a51 * k1x + a52 * k2x + a53 * k3x + a54 * k4x);
  const double v5 = v + h * (a51 * k1v + a52 * k2v + a53 * k3v + a54 * k4v);
  const double k5x = v5, k5v = f(x5, v5);
  const double x6 = x + h * (a61 * k1x + a62 * k2x + a63 * k3x + a64 * k4x + a65 * k5x);
  const double v6 = v + h * (a61 * k1v + a62 * k2v + a63 * k3v + a64 * k4v + a65 * k5v);
  const double k6x = v6, k6v = f(x6, v6);
  const double xn = x + h * (b1 * k1x + b3 * k3x + b4 * k4x + b5 * k5x + b6 * k6x);
  const double vn = v + h * (b1 * k1v + b3 * k3v + b4 * k4v + b5 * k5v + b6 * k6v);
  const double k7x = vn, k7v = f(xn, vn);
  const double ex = h * (e1 * k1x + e3 * k3x + e4 * k4x + e5 * k5x + e6 * k6x + e7 * k7x);
  const double ev = h * (e1 * k1v + e3 * k3v + e4 * k4v + e5 * k5v + e6 * k6v + e7 * k7v);
  return {xn, vn, ex, ev};
}

BallState assemble(const CmCoords& c0, double gamma, double t0, double h, double xi, double xidot) {
  CmCoords c;
  c.psi = c0.psi + c0.psidot * h - 0.5 * gamma * h * h;
  c.psidot = c0.psidot - gamma * h;
  c.xi = xi;
  c.xidot = xidot;
  return BallState::from_cm(c, t0 + h);
}

double step_cap(const CmCoords& c, const NonlinearParams& p, const NonlinearConfig& cfg) {
  double cap = cfg.h_max;
  const bool rough = (p.a > 0.0 && p.a < 1.0) || (p.b > 0.0 && p.b < 1.0);
  if (rough && c.xidot != 0.0) cap = std::min(cap, std::max(1e-3, 2.0 * std::abs(c.xi / c.xidot)));
  return cap;
}

}  // namespace

BallState nonlinear_fixed_step(const BallState& s, const NonlinearParams& p, double h) {
  const CmCoords c = s.cm();
  const Dp45 r = dp45(c.xi, c.xidot, h, p);
  return assemble(c, p.base.gamma, s.t, h, r.xi, r.xidot);
}

NonlinearStep nonlinear_flight_step(const BallState& s, const NonlinearParams& p, double dt_suggestion,
                                    const NonlinearConfig& cfg) {
  const CmCoords c = s.cm();
  double h = std::min(dt_suggestion, step_cap(c, p, cfg));
  for (int attempt = 0; attempt < 60; ++attempt) {
    if (!(h > 1e-15 * std::max(1.0, std::abs(s.t)))) break;
    const Dp45 r = dp45(c.xi, c.xidot, h, p);
    const double sx = cfg.tol * (1.0 + std::max(std::abs(c.xi), std::abs(r.xi)));
    const double sv = cfg.tol * (1.0 + std::max(std::abs(c.xidot), std::abs(r.xidot)));
    const double err = std::max(std::abs(r.err_xi) / sx, std::abs(r.err_xidot) / sv);
    if (err <= 1.0) {
      const double grow = err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err, -0.2));
      return {assemble(c, p.base.gamma, s.t, h, r.xi, r.xidot), h, err, h * grow};
    }
    h *= std::max(0.1, 0.9 * std::pow(err, -0.2));
  }
  throw StepFailure(fmt::format("step size underflow at t = {:.17g}", s.t));
}

std::optional<ContactHit> nonlinear_find_contact(const BallState& s, const NonlinearParams& p,
                                                 const NonlinearConfig& cfg) {
  BallState cur = s;
  const bool departing = s.x <= 0.0;
  bool first = true;
  double h = std::min(cfg.h_max, 1e-3);
  if (departing && s.xdot > 0.0) {
    // Start at roughly the flight time of a parabola.
    h = std::min(cfg.h_max, std::max(1e-8, s.xdot / p.base.gamma));
  }
  for (int guard = 0; guard < 100000000; ++guard) {
    if (cur.t >= cfg.t_max) return std::nullopt;
    const double remaining = cfg.t_max - cur.t;
    const NonlinearStep st = nonlinear_flight_step(cur, p, std::min(h, remaining), cfg);
    const BallState& nxt = st.state;
    const double dt = st.dt_used;

    // Cubic Hermite interpolant of x on [0, dt].
    const double x0 = first && departing ? 0.0 : cur.x;
    const double v0 = cur.xdot, x1 = nxt.x, v1 = nxt.xdot;
    const double slope = (x1 - x0) / dt;
    const double c2 = (3.0 * slope - 2.0 * v0 - v1) / dt;
    const double c3 = (v0 + v1 - 2.0 * slope) / (dt * dt);
    double s_star = -1.0;
    if (first && departing) {
      const double q[] = {v0, c2, c3};
      for (double r : polynomial_real_roots(q, 0.0, dt)) {
        if (r > 0.0) {
          s_star = r;
          break;
        }
      }
    } else {
      const double q[] = {x0, v0, c2, c3};
      const auto roots = polynomial_real_roots(q, 0.0, dt);
      if (!roots.empty()) s_star = roots.front();
    }
    if (s_star < 0.0 && x1 <= 0.0) s_star = dt;

    if (s_star > 0.0) {
      // Polish on the exact one-step map from cur.
      double sr = s_star;
      bool ok = false;
      for (int it = 0; it < 50; ++it) {
        const BallState q = nonlinear_fixed_step(cur, p, sr);
        if (q.xdot == 0.0) break;
        const double ds = q.x / q.xdot;
        sr -= ds;
        if (!(sr > 0.0) || sr > 1.5 * dt) break;
        if (std::abs(ds) <= 4e-15 * dt) {
          ok = true;
          break;
        }
      }
      if (!ok && x1 <= 0.0) {
        const auto fdf = [&](double t) -> std::array<double, 2> {
          const BallState q = nonlinear_fixed_step(cur, p, t);
          return {q.x, q.xdot};
        };
        double lo = first && departing ? 0.5 * s_star : 0.0;
        if (fdf(lo)[0] <= 0.0) lo = 0.0;
        sr = refine_root(fdf, lo, dt);
        ok = sr > 0.0;
      }
      if (ok) {
        BallState hit = nonlinear_fixed_step(cur, p, sr);
        hit.x = 0.0;
        return ContactHit{hit.t - s.t, hit};
      }
    }
    cur = nxt;
    h = st.dt_next;
    first = false;
  }
  throw StepFailure("contact search did not terminate");
}

SimulationLog nonlinear_run(const BallState& initial, const NonlinearParams& p, const NonlinearConfig& cfg) {
  p.validate();
  SimulationLog log;
  log.model = ModelKind::Nonlinear;
  log.params = p.base;
  log.initial = initial;
  if (initial.x < -kFloorTolerance) throw std::invalid_argument("initial x below the floor");

  BallState s = initial;
  double last_t = initial.t;
  for (;;) {
    const auto hit = nonlinear_find_contact(s, p, cfg);
    if (!hit) {
      log.termination = Termination::TimeLimit;
      log.final_state = s;
      return log;
    }
    const BallState c = hit->state;
    ContactKind kind = ContactKind::Regular;
    if (std::abs(c.xdot) <= cfg.v_eps) {
      const CmCoords cm = c.cm();
      const double xddot = -p.base.gamma - nonlinear_spring_acceleration(cm.xi, cm.xidot, p);
      if (!(xddot > cfg.a_eps)) {
        throw DegenerateContact(fmt::format("zero-velocity contact at t = {:.17g}", c.t));
      }
      kind = ContactKind::Grazing;
    }
    ContactEvent e;
    e.n = log.events.size() + 1;
    e.t = c.t;
    e.tau = c.t - last_t;
    e.kind = kind;
    e.xdot_pre = c.xdot;
    e.xdot_post = -c.xdot;
    e.y = c.y;
    e.ydot = c.ydot;
    s = collide(c);
    e.E = nonlinear_energy(s, p);
    log.events.push_back(e);
    last_t = c.t;
    const std::size_t n = log.events.size();
    const double slow = kFloorSpeedFactor * cfg.v_eps;
    const bool crawling = n >= 2 && log.events[n - 2].kind == ContactKind::Regular &&
                          std::abs(log.events[n - 2].xdot_pre) < slow && std::abs(e.xdot_pre) < slow;
    if (kind == ContactKind::Regular && n > 1 && (e.tau < cfg.tau_floor || crawling)) {
      log.termination = Termination::AsymptoticFloor;
      break;
    }
    if (log.events.size() >= cfg.max_impacts) {
      log.termination = Termination::ImpactLimit;
      break;
    }
  }
  log.final_state = s;
  return log;
}

double nonlinear_alpha_theory(const NonlinearParams& p) {
  return p.base.mu / (3.0 * p.base.gamma) * std::pow(p.base.gamma / p.rho, p.b / (p.a + 1.0));
}

AlphaFit nonlinear_asymptotic_alpha(const SimulationLog& run, const NonlinearParams& p, std::size_t min_tail) {
  const auto& ev = run.events;
  if (ev.size() < 2) throw InsufficientData("need at least two impacts");
  const std::size_t first = ev.size() / 10;
  double sum = 0.0, lo = INFINITY, hi = -INFINITY;
  std::size_t count = 0;
  for (std::size_t k = first; k + 1 < ev.size(); ++k) {
    if (ev[k].kind != ContactKind::Regular || ev[k + 1].kind != ContactKind::Regular) continue;
    const double X = ev[k].xdot_post;
    const double Xn = ev[k + 1].xdot_post;
    if (!(X > 0.0)) continue;
    const double alpha = (X - Xn) / (X * X);
    sum += alpha;
    lo = std::min(lo, alpha);
    hi = std::max(hi, alpha);
    ++count;
  }
  if (count < min_tail) {
    throw InsufficientData(fmt::format("tail holds {} impacts, need {}", count, min_tail));
  }
  return {sum / static_cast<double>(count), nonlinear_alpha_theory(p), hi - lo, count};
}

}  // namespace bounce
