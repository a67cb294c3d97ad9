#include "bounce/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/core.h>

namespace bounce {

namespace pt = boost::property_tree;

BallState ScenarioConfig::initial_state() const {
  if (cm_form) return BallState::from_cm(cm, 0.0);
  return direct;
}

double ScenarioConfig::resolved_sample_dt() const {
  if (sample_dt >= 0.0) return sample_dt;
  const CharacteristicTimes ct = characteristic_times(params.base);
  const double shortest = ct.T_xi ? std::min(ct.T_psi, *ct.T_xi) : std::min(ct.T_psi, std::numbers::pi);
  return shortest / 200.0;
}

NonlinearConfig ScenarioConfig::nonlinear_config() const {
  NonlinearConfig n;
  n.tol = nl_tol;
  n.t_max = engine.t_max;
  n.max_impacts = engine.max_impacts;
  n.tau_floor = engine.tau_floor;
  n.v_eps = engine.v_eps;
  n.a_eps = engine.a_eps;
  return n;
}

namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

double get_d(const pt::ptree& t, const char* key, double fallback) {
  const auto v = t.get_optional<std::string>(key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    const double d = std::stod(*v, &used);
    if (used != v->size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument(fmt::format("{}: '{}' is not a number", key, *v));
  }
}

bool get_b(const pt::ptree& t, const char* key, bool fallback) {
  const auto v = t.get_optional<std::string>(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1") return true;
  if (*v == "false" || *v == "0") return false;
  throw std::invalid_argument(fmt::format("{}: '{}' is not a boolean", key, *v));
}

std::size_t get_n(const pt::ptree& t, const char* key, std::size_t fallback) {
  const double d = get_d(t, key, static_cast<double>(fallback));
  if (!(d >= 0.0) || d != std::floor(d)) throw std::invalid_argument(fmt::format("{} must be a non-negative integer", key));
  return static_cast<std::size_t>(d);
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& text) {
  pt::ptree t;
  std::istringstream in(text);
  pt::read_ini(in, t);
  ScenarioConfig c;
  c.name = t.get<std::string>("model.name", c.name);
  const std::string kind = t.get<std::string>("model.kind", "linear");
  const auto mk = model_kind_from_string(kind);
  if (!mk) throw std::invalid_argument(fmt::format("model.kind: unknown model '{}'", kind));
  c.model = *mk;
  c.params.base.gamma = get_d(t, "model.gamma", c.params.base.gamma);
  c.params.base.mu = get_d(t, "model.mu", c.params.base.mu);
  c.params.rho = get_d(t, "model.rho", c.params.rho);
  c.params.a = get_d(t, "model.a", c.params.a);
  c.params.b = get_d(t, "model.b", c.params.b);

  const std::string form = t.get<std::string>("initial.form", "cm");
  if (form != "cm" && form != "direct") throw std::invalid_argument("initial.form must be cm or direct");
  c.cm_form = form == "cm";
  c.cm.psi = get_d(t, "initial.psi", c.cm.psi);
  c.cm.psidot = get_d(t, "initial.psidot", c.cm.psidot);
  c.cm.xi = get_d(t, "initial.xi", c.cm.xi);
  c.cm.xidot = get_d(t, "initial.xidot", c.cm.xidot);
  c.direct.x = get_d(t, "initial.x", c.direct.x);
  c.direct.xdot = get_d(t, "initial.xdot", c.direct.xdot);
  c.direct.y = get_d(t, "initial.y", c.direct.y);
  c.direct.ydot = get_d(t, "initial.ydot", c.direct.ydot);

  c.rigid.law = t.get<std::string>("rigid.law", c.rigid.law);
  c.rigid.r = get_d(t, "rigid.r", c.rigid.r);
  c.rigid.U = get_d(t, "rigid.U", c.rigid.U);
  c.rigid.u0 = get_d(t, "rigid.u0", c.rigid.u0);
  c.rigid.g = get_d(t, "rigid.g", c.rigid.g);
  c.rigid.n = get_n(t, "rigid.n", c.rigid.n);

  c.engine.t_max = get_d(t, "engine.t_max", c.engine.t_max);
  c.engine.max_impacts = get_n(t, "engine.max_impacts", c.engine.max_impacts);
  c.engine.tau_floor = get_d(t, "engine.tau_floor", c.engine.tau_floor);
  c.engine.v_eps = get_d(t, "engine.v_eps", c.engine.v_eps);
  c.engine.a_eps = get_d(t, "engine.a_eps", c.engine.a_eps);
  c.engine.max_sticky_events = get_n(t, "engine.max_sticky_events", c.engine.max_sticky_events);
  c.engine.max_samples = get_n(t, "engine.max_samples", c.engine.max_samples);
  c.engine.asymptotic_handoff = get_b(t, "engine.asymptotic_handoff", c.engine.asymptotic_handoff);
  c.nl_tol = get_d(t, "engine.nl_tol", c.nl_tol);

  c.out_dir = t.get<std::string>("output.dir", c.out_dir);
  c.sample_dt = get_d(t, "output.sample_dt", c.sample_dt);
  return c;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open {}", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string serialize_scenario(const ScenarioConfig& c) {
  std::string s;
  s += "[model]\n";
  s += fmt::format("name = {}\nkind = {}\n", c.name, to_string(c.model));
  s += fmt::format("gamma = {}\nmu = {}\nrho = {}\na = {}\nb = {}\n", num(c.params.base.gamma), num(c.params.base.mu),
                   num(c.params.rho), num(c.params.a), num(c.params.b));
  s += "\n[initial]\n";
  s += fmt::format("form = {}\n", c.cm_form ? "cm" : "direct");
  s += fmt::format("psi = {}\npsidot = {}\nxi = {}\nxidot = {}\n", num(c.cm.psi), num(c.cm.psidot), num(c.cm.xi),
                   num(c.cm.xidot));
  s += fmt::format("x = {}\nxdot = {}\ny = {}\nydot = {}\n", num(c.direct.x), num(c.direct.xdot), num(c.direct.y),
                   num(c.direct.ydot));
  s += "\n[rigid]\n";
  s += fmt::format("law = {}\nr = {}\nU = {}\nu0 = {}\ng = {}\nn = {}\n", c.rigid.law, num(c.rigid.r), num(c.rigid.U),
                   num(c.rigid.u0), num(c.rigid.g), c.rigid.n);
  s += "\n[engine]\n";
  s += fmt::format("t_max = {}\nmax_impacts = {}\ntau_floor = {}\nv_eps = {}\na_eps = {}\n", num(c.engine.t_max),
                   c.engine.max_impacts, num(c.engine.tau_floor), num(c.engine.v_eps), num(c.engine.a_eps));
  s += fmt::format("max_sticky_events = {}\nmax_samples = {}\nasymptotic_handoff = {}\nnl_tol = {}\n",
                   c.engine.max_sticky_events, c.engine.max_samples, c.engine.asymptotic_handoff, num(c.nl_tol));
  s += "\n[output]\n";
  s += fmt::format("dir = {}\nsample_dt = {}\n", c.out_dir, num(c.sample_dt));
  return s;
}

}  // namespace bounce
