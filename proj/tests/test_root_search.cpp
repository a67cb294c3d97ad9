#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "bounce/root_search.hpp"

using namespace bounce;

TEST(PolynomialRoots, KnownFactorisation) {
  // (s - 0.5)(s - 1)(s - 2)(s + 1) = s^4 - 2.5 s^3 + 2.5 s - 1
  const double c[] = {-1.0, 2.5, 0.0, -2.5, 1.0};
  const auto r = polynomial_real_roots(c, -5.0, 5.0);
  ASSERT_EQ(r.size(), 4u);
  EXPECT_NEAR(r[0], -1.0, 1e-14);
  EXPECT_NEAR(r[1], 0.5, 1e-14);
  EXPECT_NEAR(r[2], 1.0, 1e-14);
  EXPECT_NEAR(r[3], 2.0, 1e-14);
  const auto part = polynomial_real_roots(c, 0.0, 1.5);
  ASSERT_EQ(part.size(), 2u);
}

TEST(PolynomialRoots, DegenerateInputs) {
  const double constant[] = {3.0};
  EXPECT_TRUE(polynomial_real_roots(constant, 0.0, 1.0).empty());
  const double linear[] = {-1.0, 2.0, 0.0, 0.0};
  const auto r = polynomial_real_roots(linear, 0.0, 1.0);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_DOUBLE_EQ(r[0], 0.5);
  const double none[] = {1.0, 0.0, 1.0};
  EXPECT_TRUE(polynomial_real_roots(none, -10.0, 10.0).empty());
}

TEST(PolynomialRoots, FirstPositiveRoot) {
  const double c[] = {-6.0, 11.0, -6.0, 1.0};  // roots 1, 2, 3
  EXPECT_NEAR(first_positive_root(c), 1.0, 1e-14);
  const double none[] = {1.0, 1.0};
  EXPECT_TRUE(std::isinf(first_positive_root(none)));
}

TEST(PolynomialRoots, RandomCubicsAgreeWithConstruction) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    std::vector<double> roots{u(rng), u(rng), u(rng)};
    std::sort(roots.begin(), roots.end());
    if (roots[1] - roots[0] < 1e-3 || roots[2] - roots[1] < 1e-3) continue;
    const double a = roots[0], b = roots[1], d = roots[2];
    const double c[] = {-a * b * d, a * b + a * d + b * d, -(a + b + d), 1.0};
    const auto r = polynomial_real_roots(c, -4.0, 4.0);
    ASSERT_EQ(r.size(), 3u);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(r[k], roots[k], 1e-9);
  }
}

TEST(RefineRoot, ConvergesOnSmoothFunctions) {
  auto f = [](double t) -> std::array<double, 2> { return {std::cos(t) - t, -std::sin(t) - 1.0}; };
  EXPECT_NEAR(refine_root(f, 0.0, 1.0), 0.7390851332151607, 1e-15);
  EXPECT_NEAR(refine_root(f, 1.0, 0.0), 0.7390851332151607, 1e-15);
}

TEST(RefineRoot, BisectionLandingOnThePreviousIterateKeepsGoing) {
  // The first bisection reproduces the starting midpoint.
  auto f = [](double t) -> std::array<double, 2> {
    return {7.05663e-05 - 0.0023 * t - 0.005 * t * t, -0.0023 - 0.01 * t};
  };
  const double r = refine_root(f, 0.0, 0.038);
  EXPECT_NEAR(f(r)[0], 0.0, 1e-18);
}

TEST(RefineRoot, EndpointRoots) {
  auto f = [](double t) -> std::array<double, 2> { return {t - 1.0, 1.0}; };
  EXPECT_EQ(refine_root(f, 1.0, 2.0), 1.0);
  EXPECT_EQ(refine_root(f, 0.0, 1.0), 1.0);
}

namespace {

// g(t) = A cos(w t) + offset with |g''''| <= A w^4.
std::function<GuardJet(double)> cosine_guard(double A, double w, double offset) {
  return [=](double t) {
    const double c = std::cos(w * t), s = std::sin(w * t);
    return GuardJet{A * c + offset, -A * w * s, -A * w * w * c, A * w * w * w * s, A * w * w * w * w};
  };
}

}  // namespace

TEST(GuardSearch, FindsFirstCrossing) {
  const auto g = cosine_guard(1.0, 1.0, 0.0);
  const GuardHit h = first_guard_root(g, 0.0, {100.0});
  ASSERT_EQ(h.outcome, GuardOutcome::Root);
  EXPECT_NEAR(h.tau, std::numbers::pi / 2.0, 1e-14);
}

TEST(GuardSearch, PassesOverMinimaThatStayPositive) {
  const auto g = cosine_guard(1.0, 1.0, 1.0 + 1e-9);
  const GuardHit h = first_guard_root(g, 0.0, {50.0});
  EXPECT_EQ(h.outcome, GuardOutcome::Horizon);
}

TEST(GuardSearch, CatchesAShallowDip) {
  // The minimum dips 1e-9 below zero around t = pi.
  const auto g = cosine_guard(1.0, 1.0, 1.0 - 1e-9);
  const GuardHit h = first_guard_root(g, 0.0, {50.0});
  ASSERT_EQ(h.outcome, GuardOutcome::Root);
  EXPECT_LT(std::abs(h.tau - std::numbers::pi), 1e-4);
  EXPECT_LE(g(h.tau).g0, 1e-15);
}

TEST(GuardSearch, DepartureFromTheSurface) {
  // g = sin t leaves zero upward and returns at pi.
  auto g = [](double t) {
    return GuardJet{std::sin(t), std::cos(t), -std::sin(t), -std::cos(t), 1.0};
  };
  GuardSearchOptions opt{10.0};
  opt.departing = true;
  const GuardHit h = first_guard_root(g, 0.0, opt);
  ASSERT_EQ(h.outcome, GuardOutcome::Root);
  EXPECT_NEAR(h.tau, std::numbers::pi, 1e-14);
}

TEST(GuardSearch, DepartureIntoTheSurfaceIsStuck) {
  auto g = [](double t) {
    return GuardJet{-std::sin(t), -std::cos(t), std::sin(t), std::cos(t), 1.0};
  };
  GuardSearchOptions opt{10.0};
  opt.departing = true;
  EXPECT_EQ(first_guard_root(g, 0.0, opt).outcome, GuardOutcome::Stuck);
}

TEST(GuardSearch, RandomSinusoidsAgainstDenseScan) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> amp(0.1, 2.0), w(0.2, 5.0), off(-0.5, 0.5);
  for (int i = 0; i < 200; ++i) {
    const double A = amp(rng), W = w(rng), O = off(rng);
    const auto g = cosine_guard(A, W, O);
    if (g(0.0).g0 <= 0.0) continue;
    double expect = -1.0;
    for (double t = 1e-4; t < 20.0; t += 1e-4) {
      if (g(t).g0 <= 0.0) {
        expect = t;
        break;
      }
    }
    const GuardHit h = first_guard_root(g, 0.0, {20.0});
    if (expect < 0.0) {
      EXPECT_EQ(h.outcome, GuardOutcome::Horizon);
    } else {
      ASSERT_EQ(h.outcome, GuardOutcome::Root);
      EXPECT_NEAR(h.tau, expect, 1.1e-4);
    }
  }
}
