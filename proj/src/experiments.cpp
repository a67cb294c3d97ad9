#include "bounce/experiments.hpp"

#include <cmath>

#include <fmt/core.h>

namespace bounce {

RestitutionSeries restitution_from_flights(const SimulationLog& log) {
  RestitutionSeries out;
  // events[k].tau is the flight ending at contact k+1; the flight after contact m is events[m].tau.
  for (std::size_t m = 2; m < log.events.size(); m += 2) out.f.push_back(log.events[m].tau);
  if (out.f.size() < 2) throw InsufficientData("need at least two macroscopic flights");
  for (std::size_t n = 0; n + 1 < out.f.size(); ++n) out.r.push_back(out.f[n + 1] / out.f[n]);
  double sum = 0.0;
  for (double r : out.r) {
    if (std::abs(r - out.r.front()) > 1e-3) break;
    sum += r;
    ++out.plateau_len;
  }
  out.plateau = sum / static_cast<double>(out.plateau_len);
  return out;
}

BallState sticky_initial_condition(double eps, const ModelParams& p, double ydot0) {
  return {0.0, 0.0, eps, 1.0 + 2.0 * p.gamma - 2.0 * p.mu * ydot0, ydot0};
}

double rms_difference(const std::vector<double>& a, const std::vector<double>& b, double dt) {
  if (a.size() != b.size() || a.size() < 2) throw std::invalid_argument("rms_difference needs equal grids of >= 2 points");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    const double w = (i == 0 || i + 1 == a.size()) ? 0.5 : 1.0;
    acc += w * d * d;
  }
  const double T = dt * static_cast<double>(a.size() - 1);
  return std::sqrt(acc * dt / T);
}

namespace {

std::vector<double> sample_y(const BallState& ic, const ModelParams& p, EngineConfig cfg, double dt,
                             std::size_t n_points, SimulationLog* log_out) {
  cfg.sample_dt = dt;
  cfg.t_max = dt * (static_cast<double>(n_points) - 0.5);
  cfg.max_samples = n_points;
  SimulationLog log = run_simulation(ic, p, cfg);
  if (log.trajectory.size() < n_points && log.termination != Termination::TimeLimit &&
      log.termination != Termination::InfiniteSticky) {
    throw InsufficientData(fmt::format("run ended early ({})", to_string(log.termination)));
  }
  std::vector<double> y;
  y.reserve(n_points);
  for (const BallState& s : log.trajectory) y.push_back(s.y);
  if (y.size() != n_points) throw InsufficientData("trajectory sampling incomplete");
  if (log_out) *log_out = std::move(log);
  return y;
}

}  // namespace

StickySweep sticky_sweep(const std::vector<double>& epsilons, const ModelParams& p, double ydot0, std::size_t grid,
                         EngineConfig cfg) {
  StickySweep out;
  EngineConfig probe = cfg;
  probe.max_impacts = 2;
  probe.sample_dt = 0.0;
  const SimulationLog s0 = run_simulation(sticky_initial_condition(0.0, p, ydot0), p, probe);
  for (const ContactEvent& e : s0.events) {
    if (e.kind == ContactKind::StickyEnd) {
      out.t_c = e.t;
      break;
    }
  }
  if (!(out.t_c > 0.0)) throw InsufficientData("the eps = 0 run has no finite sticky event");

  const double dt = out.t_c / static_cast<double>(grid);
  const std::size_t n_points = grid + 1;
  for (std::size_t i = 0; i < n_points; ++i) out.grid_t.push_back(dt * static_cast<double>(i));
  out.y_s = sample_y(sticky_initial_condition(0.0, p, ydot0), p, cfg, dt, n_points, nullptr);

  for (double eps : epsilons) {
    SimulationLog log;
    const auto y = eps == 0.0 ? out.y_s : sample_y(sticky_initial_condition(eps, p, ydot0), p, cfg, dt, n_points, &log);
    std::size_t impacts = 0;
    if (eps != 0.0) {
      for (const ContactEvent& e : log.events) {
        if (e.t > 0.0 && e.t < out.t_c && (e.kind == ContactKind::Regular || e.kind == ContactKind::Grazing)) ++impacts;
      }
    }
    out.rows.push_back({eps, impacts, rms_difference(y, out.y_s, dt)});
  }
  return out;
}

TailStats asymptotic_report(const SimulationLog& log, std::size_t min_tail) {
  if (log.model != ModelKind::Linear) {
    throw InsufficientData(fmt::format("asymptotic report needs a deformable-ball run, got {}", to_string(log.model)));
  }
  if (log.termination != Termination::AsymptoticFloor && log.termination != Termination::ImpactLimit) {
    throw InsufficientData(fmt::format("run ended with {}, not at the asymptotic floor", to_string(log.termination)));
  }
  return tail_statistics(impact_samples(log), log.params, min_tail);
}

SimulationLog rigid_log(const RigidBounce& run, double g) {
  SimulationLog log;
  log.model = ModelKind::Rigid;
  log.params.gamma = g;
  log.params.mu = 0.0;
  log.initial = {0.0, 0.0, run.speeds.front(), 0.0, 0.0};
  double t = 0.0;
  for (std::size_t k = 0; k < run.flight_times.size(); ++k) {
    const double tau = run.flight_times[k];
    t += tau;
    ContactEvent e;
    e.n = k + 1;
    e.t = t;
    e.tau = tau;
    e.kind = ContactKind::Regular;
    e.xdot_pre = -run.speeds[k];
    e.xdot_post = run.speeds[k + 1];
    e.E = 0.5 * run.speeds[k + 1] * run.speeds[k + 1];
    log.events.push_back(e);
  }
  log.termination = Termination::ImpactLimit;
  log.final_state = {t, 0.0, run.speeds.back(), 0.0, 0.0};
  return log;
}

}  // namespace bounce
