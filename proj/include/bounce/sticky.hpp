#pragma once

// Contact phase: the lower mass rests on the floor and the upper mass obeys
//   y'' + mu y' + y/2 = 1/2 - gamma,
// i.e. u = y - (1 - 2 gamma) is an oscillator with (c, k) = (mu, 1/2).

#include <stdexcept>
#include <vector>

#include "bounce/model.hpp"
#include "bounce/oscillator.hpp"

namespace bounce {

struct NotStickyOnset : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class StickySolution {
 public:
  StickySolution(const BallState& onset, const ModelParams& p);

  [[nodiscard]] const BallState& onset() const { return onset_; }
  [[nodiscard]] const ModelParams& params() const { return params_; }
  [[nodiscard]] DampingRegime regime() const { return osc_.regime(); }

  /// State at onset().t + tau, with x = xdot = 0.
  [[nodiscard]] BallState at(double tau) const;

  /// Floor force and its first three derivatives at tau.
  [[nodiscard]] std::array<double, 4> force_derivatives(double tau) const;
  [[nodiscard]] double force(double tau) const { return force_derivatives(tau)[0]; }

  /// Upper bound on |F''''| from tau onward.
  [[nodiscard]] double force_bound4(double tau) const;

  /// True when the force can never again reach zero after tau.
  [[nodiscard]] bool never_detaches_from(double tau) const;

 private:
  [[nodiscard]] std::array<double, 2> force_coefficients(int order) const;

  BallState onset_;
  ModelParams params_;
  DampedOscillator osc_;
  double u0_;
  double y_eq_;
};

/// Validates x = xdot = 0, F = 0 (within f_tol) and ydot < 4 gamma mu.
StickySolution build_sticky(const BallState& onset, const ModelParams& p, double f_tol = 1e-9);

/// Lower mass at rest on the floor with F <= 0, not necessarily at a sticky onset.
StickySolution make_resting_contact(const BallState& s, const ModelParams& p);

struct Detachment {
  enum class Status { Found, Never, Horizon };
  Status status;
  double tau;  ///< detachment offset when Found, otherwise where the search ended
};

/// First tau > 0 with F = 0 and F' > 0. Tangential zeros of F are stepped over.
Detachment find_detachment(const StickySolution& ss, double horizon);
Detachment find_detachment(const StickySolution& ss);

struct DurationCheck {
  bool ok;
  double duration;
  double floor;
};

DurationCheck min_duration_check(const StickySolution& ss, double floor);

/// Smallest finite sticky duration over onsets with ydot spread over (ydot_lo, 4 gamma mu).
double estimate_min_sticky_duration(const ModelParams& p, int samples = 200, double ydot_lo = -1.0);

}  // namespace bounce
