#include "bounce/root_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bounce {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double horner(std::span<const double> c, double s) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * s + *it;
  return v;
}

double bisect(std::span<const double> c, double lo, double hi, double plo) {
  for (int i = 0; i < 2000; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double pm = horner(c, mid);
    if (pm == 0.0) return mid;
    if ((pm < 0.0) == (plo < 0.0)) {
      lo = mid;
      plo = pm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> polynomial_real_roots(std::span<const double> c, double lo, double hi) {
  std::size_t n = c.size();
  while (n > 0 && c[n - 1] == 0.0) --n;
  std::vector<double> roots;
  if (n <= 1 || !(lo <= hi)) return roots;
  const auto p = c.first(n);
  if (n == 2) {
    const double r = -p[0] / p[1];
    if (r >= lo && r <= hi) roots.push_back(r);
    return roots;
  }

  // Real roots are separated by the critical points.
  std::vector<double> dc(n - 1);
  for (std::size_t i = 1; i < n; ++i) dc[i - 1] = static_cast<double>(i) * p[i];
  std::vector<double> knots{lo};
  for (double r : polynomial_real_roots(dc, lo, hi)) {
    if (r > knots.back()) knots.push_back(r);
  }
  if (hi > knots.back()) knots.push_back(hi);

  double a = knots.front();
  double pa = horner(p, a);
  if (pa == 0.0) roots.push_back(a);
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const double b = knots[i];
    const double pb = horner(p, b);
    if (pb == 0.0) {
      if (roots.empty() || roots.back() < b) roots.push_back(b);
    } else if (pa != 0.0 && ((pa < 0.0) != (pb < 0.0))) {
      roots.push_back(bisect(p, a, b, pa));
    }
    a = b;
    pa = pb;
  }
  return roots;
}

double first_positive_root(std::span<const double> c) {
  std::size_t n = c.size();
  while (n > 0 && c[n - 1] == 0.0) --n;
  if (n <= 1) return kInf;
  const auto p = c.first(n);
  // Cauchy bound on the modulus of every root.
  double bound = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) bound = std::max(bound, std::abs(p[i] / p[n - 1]));
  bound = 1.0 + bound;
  for (double r : polynomial_real_roots(p, 0.0, bound)) {
    if (r > 0.0) return r;
  }
  return kInf;
}

double refine_root(const std::function<std::array<double, 2>(double)>& fdf, double a, double b) {
  const double fa = fdf(a)[0];
  const double fb = fdf(b)[0];
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  double lo = fa < 0.0 ? a : b;
  double hi = fa < 0.0 ? b : a;

  double x = 0.5 * (a + b);
  double dxold = std::abs(b - a);
  double dx = dxold;
  auto [f, df] = fdf(x);
  for (int it = 0; it < 300; ++it) {
    if (f == 0.0) return x;
    const bool out_of_bracket = ((x - hi) * df - f) * ((x - lo) * df - f) > 0.0;
    if (out_of_bracket || std::abs(2.0 * f) > std::abs(dxold * df)) {
      dxold = dx;
      dx = 0.5 * (hi - lo);
      x = lo + dx;
      if (x == lo || x == hi) return x;
    } else {
      dxold = dx;
      dx = f / df;
      const double prev = x;
      x -= dx;
      if (x == prev) return x;
    }
    if (std::abs(dx) <= 0.5 * std::numeric_limits<double>::epsilon() * std::abs(x)) return x;
    const auto r = fdf(x);
    f = r[0];
    df = r[1];
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
  }
  return x;
}

namespace {

double departure_step(const GuardJet& j, const GuardSearchOptions& opt) {
  const double g1 = std::abs(j.g1) > opt.v_eps ? j.g1 : 0.0;
  if (g1 > 0.0) {
    const double c[] = {g1, 0.5 * j.g2, j.g3 / 6.0, -j.bound4 / 24.0};
    return first_positive_root(c);
  }
  if (g1 < 0.0) return 0.0;
  const double g2 = std::abs(j.g2) > opt.a_eps ? j.g2 : 0.0;
  if (g2 > 0.0) {
    const double c[] = {0.5 * g2, j.g3 / 6.0, -j.bound4 / 24.0};
    return first_positive_root(c);
  }
  if (g2 < 0.0 || !(j.g3 > 0.0)) return 0.0;
  const double c[] = {j.g3 / 6.0, -j.bound4 / 24.0};
  return first_positive_root(c);
}

GuardHit refine_guard(const std::function<GuardJet(double)>& jet, double a, double b) {
  const auto fdf = [&](double t) -> std::array<double, 2> {
    const GuardJet j = jet(t);
    return {j.g0, j.g1};
  };
  return {GuardOutcome::Root, refine_root(fdf, a, b)};
}

// Local minimum of g just after a, where g' <= 0 and g'' > 0.
double locate_minimum(const std::function<GuardJet(double)>& jet, double a, const GuardJet& ja) {
  if (ja.g1 >= 0.0) return a;
  double width = 2.0 * std::abs(ja.g1) / ja.g2;
  width = std::max(width, 1e-15 * std::max(1.0, std::abs(a)));
  double b = a + width;
  for (int i = 0; i < 200 && jet(b).g1 < 0.0; ++i) {
    width *= 2.0;
    b = a + width;
  }
  const auto fdf = [&](double t) -> std::array<double, 2> {
    const GuardJet j = jet(t);
    return {j.g1, j.g2};
  };
  return refine_root(fdf, a, b);
}

}  // namespace

GuardHit first_guard_root(const std::function<GuardJet(double)>& jet, double start,
                          const GuardSearchOptions& opt) {
  double a = start;
  GuardJet j = jet(a);
  double s = 0.0;

  if (opt.departing) {
    s = departure_step(j, opt);
    if (!(s > 0.0)) return {GuardOutcome::Stuck, start};
    if (start + s > opt.horizon) return {GuardOutcome::Horizon, opt.horizon};
    a = start + s;
    j = jet(a);
    if (j.g0 <= 0.0) return {GuardOutcome::Root, a};
  } else if (j.g0 <= 0.0) {
    return {GuardOutcome::Root, a};
  }

  for (int step = 0; step < opt.max_steps; ++step) {
    if (j.g1 < 0.0) {
      // Try to bracket the next root inside an interval where g is certainly decreasing.
      const double h = 2.0 * j.g0 / -j.g1;
      const double slope_bound =
          j.g1 + std::abs(j.g2) * h + 0.5 * std::abs(j.g3) * h * h + j.bound4 * h * h * h / 6.0;
      if (slope_bound < 0.0 && a + h <= opt.horizon) {
        const GuardJet jh = jet(a + h);
        if (jh.g0 <= 0.0) return refine_guard(jet, a, a + h);
      }
    }

    // Largest step over which the Taylor lower bound stays positive.
    const double c[] = {j.g0, j.g1, 0.5 * j.g2, j.g3 / 6.0, -j.bound4 / 24.0};
    s = first_positive_root(c);
    if (a + s > opt.horizon) return {GuardOutcome::Horizon, opt.horizon};

    if (s <= 1e-10 * std::max(1.0, std::abs(a))) {
      if (!(j.g2 > opt.a_eps)) return {GuardOutcome::Root, a};
      const double tm = locate_minimum(jet, a, j);
      const GuardJet jm = jet(tm);
      if (jm.g0 <= 0.0) {
        if (tm == a) return {GuardOutcome::Root, a};
        return refine_guard(jet, a, tm);
      }
      a = tm;
      j = jm;
      if (j.g1 < 0.0) j.g1 = 0.0;
      continue;
    }

    const double prev = a;
    a += s;
    j = jet(a);
    if (j.g0 == 0.0) return {GuardOutcome::Root, a};
    if (j.g0 < 0.0) return refine_guard(jet, prev, a);
  }
  return {GuardOutcome::Stuck, a};
}

}  // namespace bounce
