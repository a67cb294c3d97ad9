#pragma once

// Free flight: psi is a parabola, xi a damped oscillator with (c, k) = (2 mu, 1).

#include "bounce/model.hpp"
#include "bounce/oscillator.hpp"

namespace bounce {

/// Lower-mass height and its first three time derivatives.
struct XDerivatives {
  double x;
  double xdot;
  double xddot;
  double xdddot;
};

class FlightSolution {
 public:
  FlightSolution(const BallState& origin, const ModelParams& p);

  [[nodiscard]] const BallState& origin() const { return origin_; }
  [[nodiscard]] const ModelParams& params() const { return params_; }
  [[nodiscard]] DampingRegime regime() const { return spring_.regime(); }
  [[nodiscard]] const DampedOscillator& spring() const { return spring_; }

  /// State at absolute time origin().t + tau.
  [[nodiscard]] BallState at(double tau) const;
  [[nodiscard]] CmCoords cm_at(double tau) const;
  [[nodiscard]] XDerivatives x_derivatives(double tau) const;

  /// (xi, xidot) at offset tau.
  [[nodiscard]] std::array<double, 2> spring_state(double tau) const;

  /// k-th derivative of y at tau, k in 0..4.
  [[nodiscard]] double y_derivative(int k, double tau) const;

  /// Upper bound on |x''''| from offset tau onward.
  [[nodiscard]] double fourth_derivative_bound(double tau) const;

 private:
  BallState origin_;
  ModelParams params_;
  CmCoords cm0_;
  DampedOscillator spring_;
  std::array<double, 2> c3_;
  std::array<double, 2> c4_;
  double b4_norm_;
};

FlightSolution build_flight(const BallState& s, const ModelParams& p);
BallState eval_flight(const FlightSolution& f, double tau);
XDerivatives eval_flight_derivatives(const FlightSolution& f, double tau);

}  // namespace bounce
