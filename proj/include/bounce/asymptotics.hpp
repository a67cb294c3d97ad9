#pragma once

// Tail statistics of the impact sequence against the late-time laws
//   tau_n ~ 3/(mu n),  Xdot_n ~ 3 gamma/(mu n),  Xdot_n / tau_n -> gamma.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bounce/model.hpp"

namespace bounce {

struct InsufficientData : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RatioStats {
  double mean = 0.0;
  double spread = 0.0;  // max - min over the window
};

struct TailStats {
  std::size_t count = 0;
  std::size_t first_n = 0;
  std::size_t last_n = 0;
  RatioStats n_tau;          // n tau_n mu / 3
  RatioStats n_xdot;         // n Xdot_n mu / (3 gamma)
  RatioStats xdot_over_tau;  // Xdot_n / (tau_n gamma)
  double tau_exponent = 0.0; // slope of log tau_n against log n
};

/// One impact: its 1-based index, post-impact speed and the following flight time.
struct ImpactSample {
  std::size_t n;
  double xdot;
  double tau;
};

/// Statistics over the last decade n in (N/10, N] of the samples.
/// Throws InsufficientData if that window holds fewer than min_count samples.
TailStats tail_statistics(const std::vector<ImpactSample>& samples, const ModelParams& p,
                          std::size_t min_count = 100);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace bounce
