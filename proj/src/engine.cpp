#include "bounce/engine.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "bounce/root_search.hpp"
#include "bounce/sticky.hpp"

namespace bounce {

std::string_view to_string(ContactKind k) {
  switch (k) {
    case ContactKind::Regular: return "Regular";
    case ContactKind::Grazing: return "Grazing";
    case ContactKind::StickyStart: return "StickyStart";
    case ContactKind::StickyEnd: return "StickyEnd";
  }
  return "?";
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::TimeLimit: return "TimeLimit";
    case Termination::ImpactLimit: return "ImpactLimit";
    case Termination::AsymptoticFloor: return "AsymptoticFloor";
    case Termination::InfiniteSticky: return "InfiniteSticky";
  }
  return "?";
}

std::string_view to_string(ModelKind m) {
  switch (m) {
    case ModelKind::Linear: return "linear";
    case ModelKind::Nonlinear: return "nonlinear";
    case ModelKind::Rigid: return "rigid";
  }
  return "?";
}

std::optional<ModelKind> model_kind_from_string(std::string_view s) {
  for (auto m : {ModelKind::Linear, ModelKind::Nonlinear, ModelKind::Rigid}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

std::optional<ContactKind> contact_kind_from_string(std::string_view s) {
  for (auto k : {ContactKind::Regular, ContactKind::Grazing, ContactKind::StickyStart, ContactKind::StickyEnd}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::optional<Termination> termination_from_string(std::string_view s) {
  for (auto t : {Termination::TimeLimit, Termination::ImpactLimit, Termination::AsymptoticFloor,
                 Termination::InfiniteSticky}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

std::optional<ContactHit> find_next_contact(const FlightSolution& f, const ModelParams& p,
                                            const EngineConfig& cfg) {
  (void)p;
  const auto jet = [&](double tau) -> GuardJet {
    const XDerivatives d = f.x_derivatives(tau);
    return {d.x, d.xdot, d.xddot, d.xdddot, f.fourth_derivative_bound(tau)};
  };
  GuardSearchOptions opt;
  opt.horizon = cfg.t_max - f.origin().t;
  opt.v_eps = cfg.v_eps;
  opt.a_eps = cfg.a_eps;
  opt.departing = f.origin().x <= 0.0;
  if (!(opt.horizon > 0.0)) return std::nullopt;

  const GuardHit hit = first_guard_root(jet, 0.0, opt);
  if (hit.outcome == GuardOutcome::Horizon) return std::nullopt;
  if (hit.outcome == GuardOutcome::Stuck) {
    if (opt.departing) {
      // The flight cannot leave the floor: the contact is at the start itself.
      return ContactHit{0.0, f.origin()};
    }
    throw DegenerateContact(fmt::format("contact search stalled at t = {:.17g}", f.origin().t + hit.tau));
  }
  BallState s = f.at(hit.tau);
  s.x = 0.0;
  return ContactHit{hit.tau, s};
}

BallState collide(const BallState& s) {
  BallState out = s;
  out.xdot = -s.xdot;
  return out;
}

ContactKind classify_contact(const BallState& s, const ModelParams& p, const EngineConfig& cfg) {
  if (std::abs(s.xdot) > cfg.v_eps) return ContactKind::Regular;
  const double xddot = flight_accelerations(s, p).xddot;
  if (xddot > cfg.a_eps) return ContactKind::Grazing;
  if (std::abs(xddot) <= cfg.a_eps && s.ydot < 4.0 * p.gamma * p.mu) return ContactKind::StickyStart;
  throw DegenerateContact(fmt::format("zero-velocity contact with xddot = {:.3g}, ydot = {:.6g} at t = {:.17g}",
                                      xddot, s.ydot, s.t));
}

namespace {

class Runner {
 public:
  Runner(const BallState& initial, const ModelParams& p, const EngineConfig& cfg) : p_(p), cfg_(cfg) {
    log_.params = p;
    log_.initial = initial;
    last_event_t_ = initial.t;
  }

  SimulationLog run() {
    BallState s = log_.initial;
    if (s.x < -kFloorTolerance) {
      throw std::invalid_argument(fmt::format("initial x = {:.3g} is below the floor", s.x));
    }
    if (s.x < 0.0) s.x = 0.0;

    if (s.x == 0.0 && s.xdot == 0.0 && s.ydot == 0.0 && s.y == 1.0 - 2.0 * p_.gamma) {
      BallState end = s;
      end.t = std::max(s.t, cfg_.t_max);
      sample_until(FlightOrRest::rest(s), end.t);
      return finish(Termination::TimeLimit, end);
    }

    if (s.x == 0.0 && s.xdot < -cfg_.v_eps) {
      record(ContactKind::Regular, s, -s.xdot);
      s = collide(s);
    } else if (s.x == 0.0 && std::abs(s.xdot) <= cfg_.v_eps) {
      s.xdot = 0.0;
      const double xddot = floor_force(s, p_);
      if (std::abs(xddot) <= cfg_.a_eps) {
        if (s.ydot - 4.0 * p_.gamma * p_.mu <= cfg_.v_eps) {
          record(ContactKind::StickyStart, s, 0.0);
          if (auto t = sticky_phase(build_sticky(s, p_))) return *t;
          s = state_;
        }
      } else if (xddot < 0.0) {
        if (auto t = sticky_phase(make_resting_contact(s, p_))) return *t;
        s = state_;
      }
    }
    if (auto t = check_limits()) return finish(*t, s);

    for (;;) {
      const FlightSolution f(s, p_);
      const auto hit = find_next_contact(f, p_, cfg_);
      if (!hit) {
        const BallState end = f.at(cfg_.t_max - s.t);
        sample_flight(f, end.t);
        return finish(Termination::TimeLimit, end);
      }
      sample_flight(f, hit->state.t);
      const BallState c = hit->state;
      const ContactKind kind = classify_contact(c, p_, cfg_);
      if (kind == ContactKind::StickyStart) {
        BallState onset = c;
        onset.xdot = 0.0;
        record(ContactKind::StickyStart, c, 0.0);
        if (auto t = sticky_phase(build_sticky(onset, p_, 1e-8))) return *t;
        s = state_;
      } else {
        const double tau = c.t - last_event_t_;
        record(kind, c, -c.xdot);
        s = collide(c);
        if (kind == ContactKind::Regular && c.t > log_.initial.t && at_floor(tau)) {
          return finish(Termination::AsymptoticFloor, s);
        }
      }
      if (auto t = check_limits()) return finish(*t, s);
    }
  }

 private:
  struct FlightOrRest {
    static FlightOrRest rest(const BallState& s) { return {s}; }
    BallState s;
  };

  void record(ContactKind kind, const BallState& c, double xdot_post) {
    ContactEvent e;
    e.n = log_.events.size() + 1;
    e.t = c.t;
    e.tau = c.t - last_event_t_;
    e.kind = kind;
    e.xdot_pre = c.xdot;
    e.xdot_post = xdot_post;
    e.y = c.y;
    e.ydot = c.ydot;
    BallState post = c;
    post.x = 0.0;
    post.xdot = xdot_post;
    e.E = energy(post, p_);
    log_.events.push_back(e);
    last_event_t_ = c.t;
    if (kind == ContactKind::StickyStart && ++sticky_count_ > cfg_.max_sticky_events) {
      throw std::runtime_error(fmt::format("more than {} sticky events", cfg_.max_sticky_events));
    }
  }

  // Flights too short to resolve, or impact speeds within reach of v_eps on
  // two successive impacts: the remaining collapse is left to the limit map.
  bool at_floor(double tau) const {
    if (tau < cfg_.tau_floor) return true;
    const std::size_t n = log_.events.size();
    if (n < 2) return false;
    const ContactEvent& a = log_.events[n - 2];
    const ContactEvent& b = log_.events[n - 1];
    const double slow = kFloorSpeedFactor * cfg_.v_eps;
    return a.kind == ContactKind::Regular && std::abs(a.xdot_pre) < slow && std::abs(b.xdot_pre) < slow;
  }

  std::optional<Termination> check_limits() const {
    if (log_.events.size() >= cfg_.max_impacts) return Termination::ImpactLimit;
    return std::nullopt;
  }

  // Runs a contact phase; returns the finished log when the run ends inside it.
  std::optional<SimulationLog> sticky_phase(const StickySolution& ss) {
    const double t0 = ss.onset().t;
    const Detachment d = find_detachment(ss, cfg_.t_max - t0);
    if (d.status != Detachment::Status::Found) {
      const double t_end = std::max(t0, cfg_.t_max);
      sample_sticky(ss, t_end);
      const Termination why =
          d.status == Detachment::Status::Never ? Termination::InfiniteSticky : Termination::TimeLimit;
      return finish(why, ss.at(t_end - t0));
    }
    sample_sticky(ss, t0 + d.tau);
    state_ = ss.at(d.tau);
    record(ContactKind::StickyEnd, state_, 0.0);
    return std::nullopt;
  }

  bool want_sample(double t_end) {
    if (!(cfg_.sample_dt > 0.0) || log_.trajectory.size() >= cfg_.max_samples) return false;
    return log_.initial.t + static_cast<double>(next_sample_) * cfg_.sample_dt < t_end;
  }
  double sample_time() const { return log_.initial.t + static_cast<double>(next_sample_) * cfg_.sample_dt; }

  void sample_flight(const FlightSolution& f, double t_end) {
    while (want_sample(t_end)) {
      log_.trajectory.push_back(f.at(sample_time() - f.origin().t));
      ++next_sample_;
    }
  }
  void sample_sticky(const StickySolution& ss, double t_end) {
    while (want_sample(t_end)) {
      log_.trajectory.push_back(ss.at(sample_time() - ss.onset().t));
      ++next_sample_;
    }
  }
  void sample_until(const FlightOrRest& r, double t_end) {
    while (want_sample(t_end)) {
      BallState s = r.s;
      s.t = sample_time();
      log_.trajectory.push_back(s);
      ++next_sample_;
    }
  }

  SimulationLog finish(Termination why, const BallState& end) {
    log_.termination = why;
    log_.final_state = end;
    if (why == Termination::AsymptoticFloor || why == Termination::ImpactLimit) {
      try {
        log_.asymptotics = tail_statistics(impact_samples(log_), p_);
      } catch (const InsufficientData&) {
        log_.asymptotics.reset();
      }
    }
    if (why == Termination::AsymptoticFloor && cfg_.asymptotic_handoff && !log_.events.empty()) {
      const double alpha = p_.mu / (3.0 * p_.gamma);
      double X = log_.events.back().xdot_post;
      for (std::size_t n = log_.events.size(); n < cfg_.max_impacts && X > 0.0; ++n) {
        X -= alpha * X * X;
        log_.handoff_xdot.push_back(X);
      }
    }
    return std::move(log_);
  }

  ModelParams p_;
  EngineConfig cfg_;
  SimulationLog log_;
  BallState state_;
  double last_event_t_ = 0.0;
  std::size_t sticky_count_ = 0;
  std::size_t next_sample_ = 0;
};

}  // namespace

SimulationLog run_simulation(const BallState& initial, const ModelParams& p, const EngineConfig& cfg) {
  p.validate();
  return Runner(initial, p, cfg).run();
}

std::vector<ImpactSample> impact_samples(const SimulationLog& log) {
  std::vector<ImpactSample> out;
  const auto& ev = log.events;
  for (std::size_t k = 0; k + 1 < ev.size(); ++k) {
    if (ev[k].kind != ContactKind::Regular || ev[k].t == log.initial.t) continue;
    out.push_back({ev[k].n, ev[k].xdot_post, ev[k + 1].tau});
  }
  return out;
}

JumpReport jump_relations_check(const ContactEvent& e, const FlightSolution& f_pre, const FlightSolution& f_post) {
  const double X = e.xdot_post;
  const double mu = f_post.params().mu;
  const double c3 = 4.0 * mu * mu - 1.0;
  JumpReport r{};
  r.expected = {2.0 * X, -2.0 * mu * X, 2.0 * mu * X, c3 * X, -c3 * X};

  const double tp = e.t - f_pre.origin().t;
  const XDerivatives a = f_pre.x_derivatives(tp);
  const XDerivatives b = f_post.x_derivatives(e.t - f_post.origin().t);
  const double tq = e.t - f_post.origin().t;
  r.observed = {b.xdot - a.xdot, b.xddot - a.xddot, f_post.y_derivative(2, tq) - f_pre.y_derivative(2, tp),
                b.xdddot - a.xdddot, f_post.y_derivative(3, tq) - f_pre.y_derivative(3, tp)};
  r.max_error = 0.0;
  for (std::size_t i = 0; i < 5; ++i) r.max_error = std::max(r.max_error, std::abs(r.observed[i] - r.expected[i]));
  return r;
}

}  // namespace bounce
