#include "bounce/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bounce {

namespace {

// Relative half-width of the band around critical damping where cos/sin (or
// cosh/sinh) are replaced by their power series in (k - beta^2) tau^2.
constexpr double kCriticalBand = 2e-6;

// Short intervals are propagated with the matrix-exponential series, which
// keeps Phi - I accurate to full relative precision.
constexpr double kSeriesRadius = 0.5;

struct CosSin {
  double c;  // cos(w tau) or cosh
  double s;  // sin(w tau)/w or sinh/w, finite as w -> 0
};

CosSin cos_sinc_series(double w2, double tau) {
  const double z = -w2 * tau * tau;
  double term_c = 1.0;
  double term_s = 1.0;
  double c = 1.0;
  double s = 1.0;
  for (int j = 1; j < 40; ++j) {
    term_c *= z / ((2.0 * j - 1.0) * (2.0 * j));
    term_s *= z / ((2.0 * j) * (2.0 * j + 1.0));
    c += term_c;
    s += term_s;
    if (std::abs(term_c) < 1e-18 && std::abs(term_s) < 1e-18) break;
  }
  return {c, s * tau};
}

}  // namespace

DampedOscillator::DampedOscillator(double damping, double stiffness)
    : c_(damping), k_(stiffness), beta_(0.5 * damping), w2_(stiffness - 0.25 * damping * damping) {
  if (!(stiffness > 0.0) || !(damping >= 0.0)) {
    throw std::invalid_argument("DampedOscillator needs stiffness > 0 and damping >= 0");
  }
  if (std::abs(w2_) <= kCriticalBand * k_) {
    regime_ = DampingRegime::Critical;
  } else if (w2_ > 0.0) {
    regime_ = DampingRegime::Underdamped;
  } else {
    regime_ = DampingRegime::Overdamped;
  }
}

TransitionIncrements DampedOscillator::increments(double tau) const {
  if (tau == 0.0) return {0.0, 0.0, 0.0, 0.0};

  const double norm = std::max(1.0, k_ + c_);
  if (tau * norm <= kSeriesRadius) {
    // sum_{j>=1} (A tau)^j / j!  with A = [[0, 1], [-k, -c]]
    double m11 = 0.0, m12 = tau, m21 = -k_ * tau, m22 = -c_ * tau;
    double s11 = 0.0, s12 = 0.0, s21 = m21, s22 = m22;
    for (int j = 2; j < 60; ++j) {
      const double f = tau / j;
      const double n11 = (m11 * 0.0 + m12 * -k_) * f;
      const double n12 = (m11 * 1.0 + m12 * -c_) * f;
      const double n21 = (m21 * 0.0 + m22 * -k_) * f;
      const double n22 = (m21 * 1.0 + m22 * -c_) * f;
      m11 = n11;
      m12 = n12;
      m21 = n21;
      m22 = n22;
      s11 += m11;
      s12 += m12;
      s21 += m21;
      s22 += m22;
      const double term = std::max({std::abs(m11), std::abs(m12), std::abs(m21), std::abs(m22)});
      const double scale = std::max({std::abs(s11), std::abs(s12), std::abs(s21), std::abs(s22)});
      if (term <= 1e-18 * scale) break;
    }
    return {s11, s12, s21, s22};
  }

  double eb_c = 0.0;  // e^{-beta tau} C
  double eb_s = 0.0;  // e^{-beta tau} S
  const bool near_critical = regime_ == DampingRegime::Critical && std::abs(w2_) * tau * tau <= 1.0;
  if (near_critical) {
    const CosSin cs = cos_sinc_series(w2_, tau);
    const double eb = std::exp(-beta_ * tau);
    eb_c = eb * cs.c;
    eb_s = eb * cs.s;
  } else if (w2_ > 0.0) {
    const double w = std::sqrt(w2_);
    const double eb = std::exp(-beta_ * tau);
    eb_c = eb * std::cos(w * tau);
    eb_s = eb * std::sin(w * tau) / w;
  } else {
    // Factor the growing cosh/sinh into the decaying envelope.
    const double kappa = std::sqrt(-w2_);
    const double fast = beta_ + kappa;
    const double slow = k_ / fast;
    const double es = std::exp(-slow * tau);
    const double ef = std::exp(-fast * tau);
    eb_c = 0.5 * (es + ef);
    eb_s = 0.5 * (es - ef) / kappa;
  }
  const double p11 = eb_c + beta_ * eb_s;
  const double p12 = eb_s;
  const double p21 = -k_ * eb_s;
  const double p22 = eb_c - beta_ * eb_s;
  return {p11 - 1.0, p12 - tau, p21, p22 - 1.0};
}

std::array<double, 2> DampedOscillator::propagate(double u0, double v0, double tau) const {
  const TransitionIncrements d = increments(tau);
  return {u0 + (u0 * d.p11m1 + v0 * (tau + d.q12)), v0 + (u0 * d.p21 + v0 * d.p22m1)};
}

std::array<double, 2> DampedOscillator::derivative_coefficients(int order) const {
  double a = 1.0;
  double b = 0.0;
  for (int j = 0; j < order; ++j) {
    const double na = -k_ * b;
    const double nb = a - c_ * b;
    a = na;
    b = nb;
  }
  return {a, b};
}

double DampedOscillator::linear_form_bound(double a, double b, double u, double v) const {
  return std::sqrt(a * a / k_ + b * b) * std::sqrt(2.0 * lyapunov(u, v));
}

}  // namespace bounce
