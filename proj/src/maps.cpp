#include "bounce/maps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

#include "bounce/asymptotics.hpp"

namespace bounce {

namespace {

void fit_tail(MapSequence& m, double rate) {
  const std::size_t last = m.iterates.size() - 1;
  if (last < 2) return;
  const std::size_t first = std::max<std::size_t>(1, last / 10);
  m.window_first = first;
  std::vector<double> ns, xs;
  double lo = INFINITY, hi = -INFINITY, sum = 0.0;
  for (std::size_t k = first; k <= last; ++k) {
    const double x = m.iterates[k];
    if (!(x > 0.0)) continue;
    const double scaled = std::pow(static_cast<double>(k), rate) * x;
    lo = std::min(lo, scaled);
    hi = std::max(hi, scaled);
    sum += scaled;
    ns.push_back(static_cast<double>(k));
    xs.push_back(x);
  }
  if (ns.size() >= 2) m.fitted_exponent = loglog_slope(ns, xs);
  if (!ns.empty()) {
    m.scaled_mean = sum / static_cast<double>(ns.size());
    m.scaled_spread = hi - lo;
    m.scaled_final = std::pow(static_cast<double>(last), rate) * m.iterates[last];
  }
}

}  // namespace

MapSequence quadratic_map_iterate(double x0, const std::function<double(std::size_t)>& alpha, std::size_t n) {
  MapSequence m;
  m.rule = "x - alpha_n x^2";
  m.iterates.reserve(n + 1);
  m.iterates.push_back(x0);
  double x = x0;
  for (std::size_t k = 0; k < n; ++k) {
    x = x - alpha(k) * x * x;
    if (!(x > 0.0) || x > x0) {
      m.status = MapStatus::IterateEscaped;
      break;
    }
    m.iterates.push_back(x);
  }
  fit_tail(m, 1.0);
  return m;
}

MapSequence quadratic_map_iterate(double x0, double alpha, std::size_t n) {
  auto m = quadratic_map_iterate(x0, [alpha](std::size_t) { return alpha; }, n);
  m.rule = fmt::format("x - {} x^2", alpha);
  return m;
}

MapSequence power_map_iterate(double x0, double alpha, double beta, std::size_t n) {
  if (!(beta > 1.0)) throw std::invalid_argument("power map needs beta > 1");
  MapSequence m;
  m.rule = fmt::format("x - {} x^{}", alpha, beta);
  m.iterates.reserve(n + 1);
  m.iterates.push_back(x0);
  double x = x0;
  for (std::size_t k = 0; k < n; ++k) {
    x = x - alpha * std::pow(x, beta);
    if (!(x > 0.0) || x > x0) {
      m.status = MapStatus::IterateEscaped;
      break;
    }
    m.iterates.push_back(x);
  }
  fit_tail(m, 1.0 / (beta - 1.0));
  return m;
}

double alpha_map_f(double x) { return x * (6.0 + x * (-4.0 + x)); }

double alpha_map_g(double x) {
  const double d = 1.0 - x;
  return x * (6.0 + x * (-8.0 + 3.0 * x)) / (d * d * d);
}

double alpha_map_f_inverse(double v) {
  if (!(v >= 0.0) || v > 3.0) throw std::domain_error(fmt::format("f^-1 undefined at {}", v));
  double lo = 0.0, hi = 1.0;
  double x = std::clamp(v / 6.0, 0.0, 1.0);
  for (int it = 0; it < 100; ++it) {
    const double r = alpha_map_f(x) - v;
    if (r == 0.0) return x;
    if (r < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double fp = 6.0 + x * (-8.0 + 3.0 * x);
    double next = x - r / fp;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-16 * std::max(1e-300, std::abs(x))) return next;
    x = next;
  }
  return x;
}

MapSequence alpha_implicit_map_iterate(double alpha0, const std::function<double(std::size_t)>& b, std::size_t n) {
  MapSequence m;
  m.rule = "f(a') = g(a) + b_n";
  m.iterates.push_back(alpha0);
  double a = alpha0;
  for (std::size_t k = 0; k < n; ++k) {
    if (!(a >= 0.0 && a < 1.0)) {
      m.status = MapStatus::IterateEscaped;
      break;
    }
    const double v = alpha_map_g(a) + b(k);
    if (!(v >= 0.0 && v <= 3.0)) {
      m.status = MapStatus::NoRoot;
      break;
    }
    a = alpha_map_f_inverse(v);
    m.iterates.push_back(a);
  }
  fit_tail(m, 1.0);
  return m;
}

SumDiagnostic divergent_sum_check(const std::vector<double>& seq) {
  SumDiagnostic d;
  if (seq.empty()) return d;
  std::vector<double> partial(seq.size());
  double s = 0.0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    s += seq[i];
    partial[i] = s;
  }
  const std::size_t last = seq.size() - 1;
  const std::size_t first = last / 10;
  d.final_sum = s;
  d.decade_increment = partial[last] - partial[first];
  // Least squares of S_n against log n over the window.
  double sx = 0, sy = 0, sxx = 0, sxy = 0, cnt = 0;
  for (std::size_t i = std::max<std::size_t>(first, 1); i <= last; ++i) {
    const double lx = std::log(static_cast<double>(i));
    sx += lx;
    sy += partial[i];
    sxx += lx * lx;
    sxy += lx * partial[i];
    cnt += 1.0;
  }
  if (cnt >= 2.0) d.log_slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  d.diverges = d.decade_increment > 1e-8 * (1.0 + std::abs(s));
  return d;
}

}  // namespace bounce
