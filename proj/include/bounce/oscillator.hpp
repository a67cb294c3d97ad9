#pragma once

// Closed-form propagation of the scalar linear oscillator  u'' + c u' + k u = 0.
//
// The flight spring mode uses (c, k) = (2 mu, 1); the contact phase of the
// upper mass uses (c, k) = (mu, 1/2) about its fixed point.

#include <array>

namespace bounce {

enum class DampingRegime { Underdamped, Critical, Overdamped };

/// Entries of the 2x2 state-transition matrix Phi(tau) in "increment" form,
/// so that displacements over short intervals keep full relative precision:
///   u(tau)  = u0 + u0 * p11m1 + v0 * (tau + q12)
///   u'(tau) = v0 + u0 * p21   + v0 * p22m1
struct TransitionIncrements {
  double p11m1;  ///< Phi11 - 1
  double q12;    ///< Phi12 - tau
  double p21;    ///< Phi21
  double p22m1;  ///< Phi22 - 1
};

class DampedOscillator {
 public:
  DampedOscillator(double damping, double stiffness);

  [[nodiscard]] double damping() const { return c_; }
  [[nodiscard]] double stiffness() const { return k_; }
  [[nodiscard]] DampingRegime regime() const { return regime_; }

  /// Valid for any tau >= 0; large tau in the overdamped regime does not overflow.
  [[nodiscard]] TransitionIncrements increments(double tau) const;

  /// (u, u') at offset tau from (u0, v0).
  [[nodiscard]] std::array<double, 2> propagate(double u0, double v0, double tau) const;

  /// Coefficients (a_n, b_n) with u^(n) = a_n u + b_n u' along any solution.
  [[nodiscard]] std::array<double, 2> derivative_coefficients(int order) const;

  /// Quadratic form V = (u'^2 + k u^2)/2, non-increasing along solutions.
  [[nodiscard]] double lyapunov(double u, double v) const { return 0.5 * (v * v + k_ * u * u); }

  /// sup over all future times of |a u + b u'| given the current (u, u').
  [[nodiscard]] double linear_form_bound(double a, double b, double u, double v) const;

 private:
  double c_;
  double k_;
  double beta_;   // c / 2
  double w2_;     // k - beta^2
  DampingRegime regime_;
};

}  // namespace bounce
