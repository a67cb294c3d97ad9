#include "bounce/csv_io.hpp"

#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace bounce {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double to_d(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw std::runtime_error(fmt::format("line {}: '{}' is not a number", line, s));
}

void expect_header(std::istream& in, const char* header) {
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw std::runtime_error(fmt::format("bad header '{}', expected '{}'", line, header));
  }
}

}  // namespace

void write_events_csv(std::ostream& out, const std::vector<ContactEvent>& events) {
  out << kEventsHeader << '\n';
  for (const ContactEvent& e : events) {
    fmt::print(out, "{},{:.17g},{:.17g},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", e.n, e.t, e.tau,
               to_string(e.kind), e.xdot_pre, e.xdot_post, e.y, e.ydot, e.E);
  }
}

void write_trajectory_csv(std::ostream& out, const std::vector<BallState>& traj,
                          const std::function<double(const BallState&)>& energy_of) {
  out << kTrajectoryHeader << '\n';
  for (const BallState& s : traj) {
    fmt::print(out, "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", s.t, s.x, s.xdot, s.y, s.ydot, energy_of(s));
  }
}

void write_trajectory_csv(std::ostream& out, const std::vector<BallState>& traj, const ModelParams& p) {
  write_trajectory_csv(out, traj, [&p](const BallState& s) { return energy(s, p); });
}

void write_restitution_csv(std::ostream& out, const RestitutionSeries& r) {
  out << kRestitutionHeader << '\n';
  for (std::size_t n = 0; n < r.f.size(); ++n) {
    if (n < r.r.size()) {
      fmt::print(out, "{},{:.17g},{:.17g}\n", n + 1, r.f[n], r.r[n]);
    } else {
      fmt::print(out, "{},{:.17g},\n", n + 1, r.f[n]);
    }
  }
}

void write_summary_ini(std::ostream& out, const SimulationLog& log, std::optional<double> final_energy) {
  std::size_t counts[4] = {0, 0, 0, 0};
  for (const ContactEvent& e : log.events) ++counts[static_cast<int>(e.kind)];
  fmt::print(out, "[run]\nmodel = {}\ntermination = {}\nevents = {}\n", to_string(log.model),
             to_string(log.termination), log.events.size());
  fmt::print(out, "regular = {}\ngrazing = {}\nsticky_start = {}\nsticky_end = {}\n", counts[0], counts[1], counts[2],
             counts[3]);
  fmt::print(out, "gamma = {:.17g}\nmu = {:.17g}\n", log.params.gamma, log.params.mu);
  const BallState& f = log.final_state;
  fmt::print(out, "final_t = {:.17g}\nfinal_x = {:.17g}\nfinal_xdot = {:.17g}\nfinal_y = {:.17g}\nfinal_ydot = {:.17g}\n",
             f.t, f.x, f.xdot, f.y, f.ydot);
  if (final_energy) {
    fmt::print(out, "final_E = {:.17g}\n", *final_energy);
  } else if (log.model != ModelKind::Rigid) {
    fmt::print(out, "final_E = {:.17g}\n", energy(f, log.params));
  }
  if (log.asymptotics) {
    const TailStats& a = *log.asymptotics;
    fmt::print(out, "\n[asymptotics]\ncount = {}\nfirst_n = {}\nlast_n = {}\n", a.count, a.first_n, a.last_n);
    fmt::print(out, "n_tau_mu_over_3 = {:.17g}\nn_xdot_mu_over_3gamma = {:.17g}\nxdot_over_tau_gamma = {:.17g}\n",
               a.n_tau.mean, a.n_xdot.mean, a.xdot_over_tau.mean);
    fmt::print(out, "tau_exponent = {:.17g}\n", a.tau_exponent);
  }
}

std::vector<ContactEvent> read_events_csv(std::istream& in) {
  expect_header(in, kEventsHeader);
  std::vector<ContactEvent> out;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 9) throw std::runtime_error(fmt::format("line {}: expected 9 fields, got {}", lineno, f.size()));
    ContactEvent e;
    e.n = static_cast<std::size_t>(to_d(f[0], lineno));
    e.t = to_d(f[1], lineno);
    e.tau = to_d(f[2], lineno);
    const auto kind = contact_kind_from_string(f[3]);
    if (!kind) throw std::runtime_error(fmt::format("line {}: unknown kind '{}'", lineno, f[3]));
    e.kind = *kind;
    e.xdot_pre = to_d(f[4], lineno);
    e.xdot_post = to_d(f[5], lineno);
    e.y = to_d(f[6], lineno);
    e.ydot = to_d(f[7], lineno);
    e.E = to_d(f[8], lineno);
    out.push_back(e);
  }
  return out;
}

std::vector<BallState> read_trajectory_csv(std::istream& in) {
  expect_header(in, kTrajectoryHeader);
  std::vector<BallState> out;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 6) throw std::runtime_error(fmt::format("line {}: expected 6 fields, got {}", lineno, f.size()));
    out.push_back({to_d(f[0], lineno), to_d(f[1], lineno), to_d(f[2], lineno), to_d(f[3], lineno), to_d(f[4], lineno)});
  }
  return out;
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path));
  body(out);
  if (!out) throw std::runtime_error(fmt::format("write failed for {}", path));
}

}  // namespace bounce
