#pragma once

// Root location shared by the flight contact search and the sticky detachment
// search. Both look for the first zero of a smooth guard function g whose
// fourth derivative is bounded over the future by a quantity computable at
// the current point.

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace bounce {

/// Real roots of sum_i c[i] s^i in [lo, hi], ascending. Degree up to ~8.
std::vector<double> polynomial_real_roots(std::span<const double> c, double lo, double hi);

/// Smallest root in (0, inf), or +inf when there is none.
double first_positive_root(std::span<const double> c);

/// Safeguarded Newton on a bracket with f(a) and f(b) of opposite sign (or zero).
/// fdf(t) returns {f, f'}. Converges to full double precision in t.
double refine_root(const std::function<std::array<double, 2>(double)>& fdf, double a, double b);

/// g and its first three derivatives at a point, plus B with |g''''| <= B from
/// that point on.
struct GuardJet {
  double g0;
  double g1;
  double g2;
  double g3;
  double bound4;
};

struct GuardSearchOptions {
  double horizon;             ///< give up past this offset
  double v_eps = 1e-10;       ///< |g'| below this counts as zero at a departure
  double a_eps = 1e-10;       ///< |g''| likewise
  bool departing = false;     ///< g(start) == 0 and the search leaves the surface
  int max_steps = 100000;
};

enum class GuardOutcome { Root, Horizon, Stuck };

struct GuardHit {
  GuardOutcome outcome;
  double tau;  ///< root location, or where the search stopped
};

/// First root of g in (start, horizon], given g > 0 just after start.
/// Touching minima with g_min > 0 are passed over. `jet(t)` evaluates g at t.
GuardHit first_guard_root(const std::function<GuardJet(double)>& jet, double start,
                          const GuardSearchOptions& opt);

}  // namespace bounce
