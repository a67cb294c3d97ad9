#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "bounce/flight.hpp"
#include "oracles.hpp"

using namespace bounce;

namespace {

double max_diff(const BallState& a, const BallState& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.xdot - b.xdot), std::abs(a.y - b.y), std::abs(a.ydot - b.ydot)});
}

}  // namespace

TEST(Flight, AgreesWithNumericIntegration) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> tau(0.0, 10.0);
  for (const ModelParams p : {ModelParams{0.01, 0.1}, ModelParams{0.05, 0.0}, ModelParams{0.01, 1.0},
                              ModelParams{1e-5, 2.0}}) {
    for (int i = 0; i < 50; ++i) {
      const BallState s = oracle::random_state(rng);
      const double t = tau(rng);
      const BallState a = FlightSolution(s, p).at(t);
      const BallState b = oracle::integrate_flight(s, p, t);
      EXPECT_LT(max_diff(a, b), 1e-10) << "gamma=" << p.gamma << " mu=" << p.mu << " tau=" << t;
      EXPECT_DOUBLE_EQ(a.t, s.t + t);
    }
  }
}

TEST(Flight, OriginIsReproducedExactly) {
  const BallState s{3.0, 0.2, -0.1, 1.1, 0.3};
  const FlightSolution f(s, {0.01, 0.1});
  EXPECT_EQ(f.at(0.0), s);
}

TEST(Flight, SemigroupProperty) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> tau(0.0, 5.0);
  const ModelParams p{0.02, 0.3};
  for (int i = 0; i < 300; ++i) {
    const BallState s = oracle::random_state(rng);
    const double t1 = tau(rng), t2 = tau(rng);
    const BallState direct = FlightSolution(s, p).at(t1 + t2);
    const BallState two = FlightSolution(FlightSolution(s, p).at(t1), p).at(t2);
    EXPECT_LT(max_diff(direct, two), 1e-12);
  }
}

TEST(Flight, EnergyDecaysAtTheDampingRate) {
  // dE/dt = -2 mu xidot^2
  std::mt19937_64 rng(33);
  const ModelParams p{0.01, 0.2};
  for (int i = 0; i < 50; ++i) {
    const FlightSolution f(oracle::random_state(rng), p);
    double prev = static_cast<double>(oracle::energy_ld(f.at(0.0), p));
    for (double t = 0.01; t < 5.0; t += 0.01) {
      const double e = static_cast<double>(oracle::energy_ld(f.at(t), p));
      EXPECT_LE(e, prev + 1e-15);
      const CmCoords c = f.cm_at(t - 0.005);
      EXPECT_NEAR((e - prev) / 0.01, -2.0 * p.mu * c.xidot * c.xidot, 1e-5);
      prev = e;
    }
  }
}

TEST(Flight, ConservativeWhenUndamped) {
  const ModelParams p{0.01, 0.0};
  const BallState s{0.0, 0.3, 0.1, 1.2, -0.2};
  const FlightSolution f(s, p);
  for (double t = 0.0; t < 50.0; t += 0.7) EXPECT_NEAR(energy(f.at(t), p), energy(s, p), 1e-14);
}

TEST(Flight, DerivativesSatisfyTheEquationsOfMotion) {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> tau(0.0, 4.0);
  for (const ModelParams p : {ModelParams{0.01, 0.1}, ModelParams{0.1, 1.5}}) {
    for (int i = 0; i < 100; ++i) {
      const FlightSolution f(oracle::random_state(rng), p);
      const double t = tau(rng);
      const BallState s = f.at(t);
      const XDerivatives d = f.x_derivatives(t);
      const auto h = oracle::x_higher(s, p);
      EXPECT_NEAR(d.x, s.x, 1e-15);
      EXPECT_NEAR(d.xdot, s.xdot, 1e-15);
      EXPECT_NEAR(d.xddot, h[0], 1e-13);
      EXPECT_NEAR(d.xdddot, h[2], 1e-13);
      EXPECT_NEAR(f.y_derivative(0, t), s.y, 1e-15);
      EXPECT_NEAR(f.y_derivative(1, t), s.ydot, 1e-15);
      EXPECT_NEAR(f.y_derivative(2, t), h[1], 1e-13);
      EXPECT_NEAR(f.y_derivative(3, t), -h[2], 1e-13);
    }
  }
}

TEST(Flight, ResidualOfTheDifferentialEquation) {
  // Centered differences of the closed form reproduce the right-hand side.
  const ModelParams p{0.03, 0.4};
  const FlightSolution f({0.0, 0.1, 0.2, 0.9, -0.1}, p);
  const double h = 1e-4;
  for (double t = 0.1; t < 6.0; t += 0.3) {
    const BallState a = f.at(t - h), b = f.at(t), c = f.at(t + h);
    oracle::State4 d{};
    oracle::flight_rhs({b.x, b.xdot, b.y, b.ydot}, d, p.gamma, p.mu);
    EXPECT_NEAR((c.x - 2.0 * b.x + a.x) / (h * h), d[1], 1e-6);
    EXPECT_NEAR((c.y - 2.0 * b.y + a.y) / (h * h), d[3], 1e-6);
    EXPECT_NEAR((c.x - a.x) / (2.0 * h), b.xdot, 1e-8);
  }
}

TEST(Flight, FourthDerivativeBoundHolds) {
  std::mt19937_64 rng(35);
  for (const ModelParams p : {ModelParams{0.01, 0.1}, ModelParams{0.01, 3.0}}) {
    for (int i = 0; i < 30; ++i) {
      const FlightSolution f(oracle::random_state(rng), p);
      const double bound = f.fourth_derivative_bound(0.0);
      for (double t = 0.0; t < 20.0; t += 0.05) {
        EXPECT_LE(std::abs(f.y_derivative(4, t)), bound * (1.0 + 1e-12));
      }
    }
  }
}

TEST(Flight, AllDampingRegimes) {
  EXPECT_EQ(FlightSolution({}, {0.01, 0.5}).regime(), DampingRegime::Underdamped);
  EXPECT_EQ(FlightSolution({}, {0.01, 1.0}).regime(), DampingRegime::Critical);
  EXPECT_EQ(FlightSolution({}, {0.01, 2.0}).regime(), DampingRegime::Overdamped);
}

TEST(Flight, FreeFunctionsForwardToTheSolution) {
  const BallState s{0.0, 0.1, 0.0, 1.0, 0.0};
  const ModelParams p{0.01, 0.1};
  const FlightSolution f = build_flight(s, p);
  EXPECT_EQ(eval_flight(f, 1.3), f.at(1.3));
  EXPECT_EQ(eval_flight_derivatives(f, 1.3).xddot, f.x_derivatives(1.3).xddot);
}
