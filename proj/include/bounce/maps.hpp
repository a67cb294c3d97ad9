#pragma once

// Scalar recurrences used by the asymptotic analysis.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace bounce {

enum class MapStatus { Completed, IterateEscaped, NoRoot };

struct MapSequence {
  std::string rule;
  std::vector<double> iterates;  ///< x_0 .. x_N
  MapStatus status = MapStatus::Completed;
  /// Power-law fit of x_n against n over the last decade of the run.
  std::size_t window_first = 0;
  double fitted_exponent = 0.0;
  /// n^s x_n at the last iterate and its mean over the window, s the expected decay rate.
  double scaled_final = 0.0;
  double scaled_mean = 0.0;
  double scaled_spread = 0.0;
};

/// x_{n+1} = x_n - alpha_n x_n^2. Stops with IterateEscaped if x leaves (0, x0].
MapSequence quadratic_map_iterate(double x0, const std::function<double(std::size_t)>& alpha, std::size_t n);
MapSequence quadratic_map_iterate(double x0, double alpha, std::size_t n);

/// x_{n+1} = x_n - alpha x_n^beta, beta > 1. Scaled by n^{1/(beta - 1)}.
MapSequence power_map_iterate(double x0, double alpha, double beta, std::size_t n);

/// 6x - 4x^2 + x^3
double alpha_map_f(double x);
/// (6x - 8x^2 + 3x^3)/(1 - x)^3
double alpha_map_g(double x);
/// Solves f(x) = v on [0, 1] for v in [0, 3].
double alpha_map_f_inverse(double v);

/// f(a_{n+1}) = g(a_n) + b_n. Stops with NoRoot once the right side leaves [0, f(1)].
MapSequence alpha_implicit_map_iterate(double alpha0, const std::function<double(std::size_t)>& b, std::size_t n);

struct SumDiagnostic {
  double final_sum = 0.0;
  double decade_increment = 0.0;  ///< S_N - S_{N/10}
  double log_slope = 0.0;         ///< fitted dS/d(log n) over the last decade
  bool diverges = false;
};

SumDiagnostic divergent_sum_check(const std::vector<double>& seq);

}  // namespace bounce
