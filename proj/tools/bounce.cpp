// Command-line front end: simulate, rigid, maps, sticky-sweep, asymptotics, sweep.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/ostream.h>

#include "bounce/csv_io.hpp"
#include "bounce/engine.hpp"
#include "bounce/experiments.hpp"
#include "bounce/maps.hpp"
#include "bounce/nonlinear.hpp"
#include "bounce/rigid.hpp"
#include "bounce/scenario.hpp"

namespace fs = std::filesystem;
using namespace bounce;

namespace {

// Flags shared by every subcommand that builds a scenario. Unset flags leave
// the config (or the built-in defaults) alone.
struct ScenarioFlags {
  std::string config;
  std::optional<std::string> model;
  std::optional<double> gamma, mu, rho, a, b;
  std::optional<double> psi0, psidot0, xi0, xidot0;
  std::optional<double> x0, xdot0, y0, ydot0;
  std::optional<double> t_max, tau_floor, sample_dt;
  std::optional<std::size_t> max_impacts;
  std::optional<std::string> out_dir;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "scenario file (INI)")->check(CLI::ExistingFile);
    app->add_option("--model", model, "linear | nonlinear | rigid");
    app->add_option("--gamma", gamma);
    app->add_option("--mu", mu);
    app->add_option("--rho", rho, "nonlinear spring scale");
    app->add_option("--a", a, "nonlinear stiffness exponent");
    app->add_option("--b", b, "nonlinear damping exponent");
    app->add_option("--psi0", psi0);
    app->add_option("--psidot0", psidot0);
    app->add_option("--xi0", xi0);
    app->add_option("--xidot0", xidot0);
    app->add_option("--x0", x0);
    app->add_option("--xdot0", xdot0);
    app->add_option("--y0", y0);
    app->add_option("--ydot0", ydot0);
    app->add_option("--t-max", t_max);
    app->add_option("--max-impacts", max_impacts);
    app->add_option("--tau-floor", tau_floor);
    app->add_option("--sample-dt", sample_dt, "trajectory spacing; 0 disables traj.csv");
    app->add_option("--out-dir", out_dir);
  }

  ScenarioConfig build(ScenarioConfig c = {}) const {
    if (!config.empty()) c = load_scenario(config);
    if (model) {
      const auto mk = model_kind_from_string(*model);
      if (!mk) throw CLI::ValidationError("--model", "unknown model " + *model);
      c.model = *mk;
    }
    auto set = [](auto& dst, const auto& src) {
      if (src) dst = *src;
    };
    set(c.params.base.gamma, gamma);
    set(c.params.base.mu, mu);
    set(c.params.rho, rho);
    set(c.params.a, a);
    set(c.params.b, b);
    const bool cm_given = psi0 || psidot0 || xi0 || xidot0;
    const bool direct_given = x0 || xdot0 || y0 || ydot0;
    if (cm_given && direct_given) {
      throw CLI::ValidationError("initial condition", "use either --psi0.. or --x0.. flags, not both");
    }
    if (cm_given) c.cm_form = true;
    if (direct_given) c.cm_form = false;
    set(c.cm.psi, psi0);
    set(c.cm.psidot, psidot0);
    set(c.cm.xi, xi0);
    set(c.cm.xidot, xidot0);
    set(c.direct.x, x0);
    set(c.direct.xdot, xdot0);
    set(c.direct.y, y0);
    set(c.direct.ydot, ydot0);
    set(c.engine.t_max, t_max);
    set(c.engine.max_impacts, max_impacts);
    set(c.engine.tau_floor, tau_floor);
    set(c.sample_dt, sample_dt);
    set(c.out_dir, out_dir);
    c.params.validate();
    return c;
  }
};

std::string in_dir(const std::string& dir, const char* file) { return (fs::path(dir) / file).string(); }

struct RunResult {
  SimulationLog log;
  std::optional<double> final_energy;
};

RunResult run_scenario(const ScenarioConfig& c) {
  RunResult r;
  switch (c.model) {
    case ModelKind::Linear: {
      EngineConfig e = c.engine;
      e.sample_dt = c.resolved_sample_dt();
      r.log = run_simulation(c.initial_state(), c.params.base, e);
      break;
    }
    case ModelKind::Nonlinear:
      r.log = nonlinear_run(c.initial_state(), c.params, c.nonlinear_config());
      r.final_energy = nonlinear_energy(r.log.final_state, c.params);
      break;
    case ModelKind::Rigid: {
      RestitutionModel law = RestitutionModel::constant(c.rigid.r);
      if (c.rigid.law == "one-fifth") {
        law = RestitutionModel::one_fifth(c.rigid.U);
      } else if (c.rigid.law == "stitched") {
        law = RestitutionModel::stitched(c.params.base);
      } else if (c.rigid.law != "constant") {
        throw std::invalid_argument("rigid.law must be constant, one-fifth or stitched");
      }
      r.log = rigid_log(rigid_bounce(c.rigid.u0, c.rigid.g, law, c.rigid.n), c.rigid.g);
      break;
    }
  }
  return r;
}

// Writes events.csv, traj.csv (when sampled), restitution.csv (when the run has
// enough flights) and summary.ini into c.out_dir.
void write_outputs(const ScenarioConfig& c, const RunResult& r) {
  fs::create_directories(c.out_dir);
  write_file(in_dir(c.out_dir, "events.csv"), [&](std::ostream& o) { write_events_csv(o, r.log.events); });
  if (!r.log.trajectory.empty()) {
    write_file(in_dir(c.out_dir, "traj.csv"),
               [&](std::ostream& o) { write_trajectory_csv(o, r.log.trajectory, r.log.params); });
  }
  if (r.log.model == ModelKind::Linear) {
    try {
      const RestitutionSeries rs = restitution_from_flights(r.log);
      write_file(in_dir(c.out_dir, "restitution.csv"), [&](std::ostream& o) { write_restitution_csv(o, rs); });
    } catch (const InsufficientData&) {
    }
  }
  write_file(in_dir(c.out_dir, "summary.ini"), [&](std::ostream& o) { write_summary_ini(o, r.log, r.final_energy); });
  write_file(in_dir(c.out_dir, "scenario.ini"), [&](std::ostream& o) { o << serialize_scenario(c); });
}

void print_summary(std::ostream& out, const ScenarioConfig& c, const RunResult& r) {
  const double e = r.final_energy                  ? *r.final_energy
                   : r.log.model == ModelKind::Rigid ? NAN
                                                    : energy(r.log.final_state, r.log.params);
  fmt::print(out, "{}: {} impacts, final E = {:.10g}, termination {}, t = {:.10g} -> {}\n", c.name, r.log.events.size(),
             e, to_string(r.log.termination), r.log.final_state.t, c.out_dir);
}

int cmd_simulate(const ScenarioFlags& f) {
  const ScenarioConfig c = f.build();
  const RunResult r = run_scenario(c);
  write_outputs(c, r);
  print_summary(std::cout, c, r);
  return 0;
}

int cmd_asymptotics(const ScenarioFlags& f, std::size_t min_tail) {
  ScenarioConfig d;
  d.name = "asymptotics";
  d.params.base = {0.01, 0.1};
  d.cm = {1.0, 0.0, 0.0, 0.0};
  d.engine.max_impacts = 100000;
  d.sample_dt = 0.0;
  const ScenarioConfig c = f.build(d);
  if (c.model != ModelKind::Linear) throw std::invalid_argument("asymptotics needs the linear model");
  const RunResult r = run_scenario(c);
  write_outputs(c, r);
  print_summary(std::cout, c, r);
  const TailStats s = asymptotic_report(r.log, min_tail);
  fmt::print("tail n = {}..{} ({} pairs)\n", s.first_n, s.last_n, s.count);
  fmt::print("  n tau mu/3        mean {:.6f}  spread {:.2e}\n", s.n_tau.mean, s.n_tau.spread);
  fmt::print("  n Xdot mu/(3 g)   mean {:.6f}  spread {:.2e}\n", s.n_xdot.mean, s.n_xdot.spread);
  fmt::print("  Xdot/(tau g)      mean {:.6f}  spread {:.2e}\n", s.xdot_over_tau.mean, s.xdot_over_tau.spread);
  fmt::print("  tau ~ n^{:.5f}\n", s.tau_exponent);
  return 0;
}

struct RigidFlags {
  std::string law = "constant";
  double r = 0.5, U = 1.0, u0 = 1.0, g = 1.0, gamma = 0.01, mu = 0.1;
  std::size_t n = 30;
  std::optional<std::string> out_dir;
};

int cmd_rigid(const RigidFlags& f) {
  ScenarioConfig c;
  c.name = "rigid";
  c.model = ModelKind::Rigid;
  c.params.base = {f.gamma, f.mu};
  c.rigid = {f.law, f.r, f.U, f.u0, f.g, f.n};
  const RunResult r = run_scenario(c);
  const auto& ev = r.log.events;
  for (const ContactEvent& e : ev) fmt::print("{:6d}  u = {:.17g}  t = {:.17g}\n", e.n, e.xdot_post, e.t);
  if (f.law == "constant" && f.r < 1.0) {
    fmt::print("t_inf = {:.17g}\n", 2.0 * f.u0 / (f.g * (1.0 - f.r)));
  }
  if (f.out_dir) {
    c.out_dir = *f.out_dir;
    write_outputs(c, r);
  }
  return 0;
}

struct MapFlags {
  double alpha = 1.0, beta = 2.0, x0 = 0.01, alpha0 = 0.5;
  std::size_t n = 100000;
  std::optional<std::string> out_dir;
};

void report_map(const MapSequence& m, const MapFlags& f) {
  const char* status = m.status == MapStatus::Completed        ? "completed"
                       : m.status == MapStatus::IterateEscaped ? "iterate escaped"
                                                               : "no root";
  const std::size_t last = m.iterates.size() - 1;
  fmt::print("{}: {} after {} steps, x_N = {:.10g}\n", m.rule, status, last, m.iterates.back());
  if (m.status == MapStatus::Completed && last >= 10) {
    fmt::print("  scaled final {:.8f}, window mean {:.8f}, spread {:.2e}, exponent {:.5f}\n", m.scaled_final,
               m.scaled_mean, m.scaled_spread, m.fitted_exponent);
  }
  if (f.out_dir) {
    fs::create_directories(*f.out_dir);
    write_file(in_dir(*f.out_dir, "map.csv"), [&](std::ostream& o) {
      o << "n,x\n";
      for (std::size_t k = 0; k < m.iterates.size(); ++k) fmt::print(o, "{},{:.17g}\n", k, m.iterates[k]);
    });
  }
}

std::vector<double> default_epsilons() {
  std::vector<double> eps;
  for (int k = 0; k <= 17; ++k) eps.push_back(0.1 * std::ldexp(1.0, -k));
  return eps;
}

int cmd_sticky(double gamma, double mu, double ydot0, std::vector<double> eps, std::size_t grid,
               const std::optional<std::string>& out_dir) {
  if (eps.empty()) eps = default_epsilons();
  const ModelParams p{gamma, mu};
  p.validate();
  const StickySweep s = sticky_sweep(eps, p, ydot0, grid);
  fmt::print("t_c = {:.10f}\n", s.t_c);
  fmt::print("{:>14} {:>8} {:>14} {:>8}\n", "eps", "impacts", "norm", "ratio");
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    const auto& r = s.rows[i];
    const double ratio = i > 0 && s.rows[i - 1].norm > 0.0 ? r.norm / s.rows[i - 1].norm : NAN;
    fmt::print("{:>14.6e} {:>8} {:>14.6e} {:>8.4f}\n", r.eps, r.impacts, r.norm, ratio);
  }
  if (out_dir) {
    fs::create_directories(*out_dir);
    write_file(in_dir(*out_dir, "sticky.csv"), [&](std::ostream& o) {
      o << "eps,impacts,norm\n";
      for (const auto& r : s.rows) fmt::print(o, "{:.17g},{},{:.17g}\n", r.eps, r.impacts, r.norm);
    });
  }
  return 0;
}

int cmd_sweep(const std::vector<std::string>& configs, const std::optional<std::string>& root) {
  std::vector<ScenarioConfig> cs;
  for (const std::string& path : configs) {
    ScenarioConfig c = load_scenario(path);
    if (root) c.out_dir = (fs::path(*root) / c.name).string();
    c.params.validate();
    cs.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (fs::path(cs[i].out_dir).lexically_normal() == fs::path(cs[j].out_dir).lexically_normal()) {
        throw std::invalid_argument(fmt::format("{} and {} share output directory {}", configs[j], configs[i],
                                                cs[i].out_dir));
      }
    }
  }
  std::vector<std::future<std::string>> jobs;
  for (const ScenarioConfig& c : cs) {
    jobs.push_back(std::async(std::launch::async, [c] {
      const RunResult r = run_scenario(c);
      write_outputs(c, r);
      std::ostringstream line;
      print_summary(line, c, r);
      return line.str();
    }));
  }
  int status = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    try {
      std::cout << jobs[i].get();
    } catch (const std::exception& e) {
      fmt::print(stderr, "{}: {}\n", configs[i], e.what());
      status = 1;
    }
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deformable bouncing ball simulations"};
  app.require_subcommand(1);

  ScenarioFlags sim_flags;
  auto* sim = app.add_subcommand("simulate", "run one scenario and write CSV output");
  sim_flags.attach(sim);

  ScenarioFlags asym_flags;
  std::size_t min_tail = 1000;
  auto* asym = app.add_subcommand("asymptotics", "long linear run and tail statistics of the impact sequence");
  asym_flags.attach(asym);
  asym->add_option("--min-tail", min_tail, "minimum number of tail impacts");

  RigidFlags rf;
  auto* rigid = app.add_subcommand("rigid", "rigid ball with a restitution law");
  rigid->add_option("--law", rf.law, "constant | one-fifth | stitched")
      ->check(CLI::IsMember({"constant", "one-fifth", "stitched"}));
  rigid->add_option("--r", rf.r, "constant restitution coefficient");
  rigid->add_option("--U", rf.U, "speed scale of the one-fifth law");
  rigid->add_option("--u0", rf.u0);
  rigid->add_option("--g", rf.g);
  rigid->add_option("--n", rf.n, "number of bounces");
  rigid->add_option("--gamma", rf.gamma, "for the stitched law");
  rigid->add_option("--mu", rf.mu, "for the stitched law");
  rigid->add_option("--out-dir", rf.out_dir);

  MapFlags mf;
  auto* maps = app.add_subcommand("maps", "iterate the asymptotic recurrences");
  maps->require_subcommand(1);
  maps->add_option("--out-dir", mf.out_dir);
  auto* quad = maps->add_subcommand("quadratic", "x' = x - alpha x^2");
  quad->add_option("--alpha", mf.alpha);
  quad->add_option("--x0", mf.x0);
  quad->add_option("--n", mf.n);
  quad->add_option("--out-dir", mf.out_dir);
  auto* power = maps->add_subcommand("power", "x' = x - alpha x^beta");
  power->add_option("--alpha", mf.alpha);
  power->add_option("--beta", mf.beta);
  power->add_option("--x0", mf.x0);
  power->add_option("--n", mf.n);
  power->add_option("--out-dir", mf.out_dir);
  auto* implicit = maps->add_subcommand("alpha-implicit", "f(a') = g(a)");
  implicit->add_option("--alpha0", mf.alpha0);
  implicit->add_option("--n", mf.n);
  implicit->add_option("--out-dir", mf.out_dir);

  double sg = 0.01, smu = 0.1, sydot0 = -0.1;
  std::vector<double> seps;
  std::size_t sgrid = 4000;
  std::optional<std::string> sout;
  auto* sticky = app.add_subcommand("sticky-sweep", "convergence of perturbed runs onto the sticky solution");
  sticky->add_option("--gamma", sg);
  sticky->add_option("--mu", smu);
  sticky->add_option("--ydot0", sydot0);
  sticky->add_option("--eps", seps, "perturbations (default 0.1 * 2^-k, k = 0..17)");
  sticky->add_option("--grid", sgrid, "quadrature intervals on (0, t_c)");
  sticky->add_option("--out-dir", sout);

  std::vector<std::string> sweep_cfgs;
  std::optional<std::string> sweep_root;
  auto* sweep = app.add_subcommand("sweep", "run several scenario files concurrently");
  sweep->add_option("configs", sweep_cfgs, "scenario files")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out-dir", sweep_root, "write each scenario to <dir>/<name>");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) return cmd_simulate(sim_flags);
    if (*asym) return cmd_asymptotics(asym_flags, min_tail);
    if (*rigid) return cmd_rigid(rf);
    if (*quad) {
      report_map(quadratic_map_iterate(mf.x0, mf.alpha, mf.n), mf);
      return 0;
    }
    if (*power) {
      report_map(power_map_iterate(mf.x0, mf.alpha, mf.beta, mf.n), mf);
      return 0;
    }
    if (*implicit) {
      report_map(alpha_implicit_map_iterate(mf.alpha0, [](std::size_t) { return 0.0; }, mf.n), mf);
      return 0;
    }
    if (*sticky) return cmd_sticky(sg, smu, sydot0, seps, sgrid, sout);
    if (*sweep) return cmd_sweep(sweep_cfgs, sweep_root);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
