#include "bounce/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

namespace bounce {

namespace {

struct Accum {
  double sum = 0.0;
  double lo = INFINITY;
  double hi = -INFINITY;
  void add(double v) {
    sum += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  [[nodiscard]] RatioStats stats(std::size_t n) const { return {sum / static_cast<double>(n), hi - lo}; }
};

}  // namespace

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) throw InsufficientData("log-log fit needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

TailStats tail_statistics(const std::vector<ImpactSample>& samples, const ModelParams& p,
                          std::size_t min_count) {
  if (samples.empty()) throw InsufficientData("no impacts");
  const std::size_t last = samples.back().n;
  const std::size_t first = last / 10 + 1;

  Accum a_tau, a_xdot, a_ratio;
  std::vector<double> ns, taus;
  TailStats out;
  for (const ImpactSample& s : samples) {
    if (s.n < first || !(s.tau > 0.0) || !(s.xdot > 0.0)) continue;
    const double n = static_cast<double>(s.n);
    a_tau.add(n * s.tau * p.mu / 3.0);
    a_xdot.add(n * s.xdot * p.mu / (3.0 * p.gamma));
    a_ratio.add(s.xdot / (s.tau * p.gamma));
    ns.push_back(n);
    taus.push_back(s.tau);
  }
  out.count = ns.size();
  if (out.count < min_count) {
    throw InsufficientData(fmt::format("tail window holds {} impacts, need {}", out.count, min_count));
  }
  out.first_n = static_cast<std::size_t>(ns.front());
  out.last_n = static_cast<std::size_t>(ns.back());
  out.n_tau = a_tau.stats(out.count);
  out.n_xdot = a_xdot.stats(out.count);
  out.xdot_over_tau = a_ratio.stats(out.count);
  out.tau_exponent = loglog_slope(ns, taus);
  return out;
}

}  // namespace bounce
