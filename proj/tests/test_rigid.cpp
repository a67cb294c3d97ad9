#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "bounce/experiments.hpp"
#include "bounce/maps.hpp"
#include "bounce/rigid.hpp"

using namespace bounce;

TEST(Rigid, ConstantRestitutionPartialSums) {
  for (double r : {0.3, 0.5, 0.9}) {
    const double u0 = 1.7, g = 0.8;
    const RigidBounce run = rigid_bounce(u0, g, RestitutionModel::constant(r), 60);
    ASSERT_EQ(run.cumulative.size(), 60u);
    for (std::size_t n = 1; n <= 60; ++n) {
      const double expect = 2.0 * u0 * (1.0 - std::pow(r, static_cast<double>(n))) / (g * (1.0 - r));
      EXPECT_NEAR(run.cumulative[n - 1] / expect, 1.0, 1e-13) << "r=" << r << " n=" << n;
    }
  }
  const RigidBounce half = rigid_bounce(1.0, 1.0, RestitutionModel::constant(0.5), 200);
  EXPECT_NEAR(half.cumulative.back(), 4.0, 1e-12);
}

TEST(Rigid, OneFifthLawSpeedsDecayLikeNToTheMinusFive) {
  // u_{n+1} = u_n - U^{-1/5} u_n^{6/5}, so u_n n^5 -> 5^5 U.
  const double U = 2.0;
  const RigidBounce run = rigid_bounce(1.0, 1.0, RestitutionModel::one_fifth(U), 200000);
  const std::size_t N = run.speeds.size() - 1;
  std::vector<double> ns, us;
  for (std::size_t n = N / 10; n <= N; n += 97) {
    ns.push_back(static_cast<double>(n));
    us.push_back(run.speeds[n]);
  }
  EXPECT_NEAR(loglog_slope(ns, us), -5.0, 0.05);
  EXPECT_NEAR(std::pow(static_cast<double>(N), 5.0) * run.speeds[N] / (3125.0 * U), 1.0, 0.01);
  // The total time converges: the tail is bounded by the integral of 2 * 3125 U / n^5.
  const double tail_bound = 2.0 * 3125.0 * U * 1.01 / (4.0 * std::pow(static_cast<double>(N), 4.0));
  const RigidBounce longer = rigid_bounce(1.0, 1.0, RestitutionModel::one_fifth(U), 2 * N);
  EXPECT_LT(longer.cumulative.back() - run.cumulative.back(), tail_bound);
}

TEST(Rigid, OneFifthMatchesThePowerMap) {
  const RigidBounce run = rigid_bounce(0.5, 1.0, RestitutionModel::one_fifth(1.0), 500);
  const MapSequence m = power_map_iterate(0.5, 1.0, 1.2, 500);
  ASSERT_EQ(m.iterates.size(), run.speeds.size());
  for (std::size_t k = 0; k < m.iterates.size(); ++k) EXPECT_NEAR(m.iterates[k], run.speeds[k], 1e-15);
}

TEST(Rigid, SpringRestitution) {
  EXPECT_EQ(spring_restitution(0.0), 1.0);
  EXPECT_NEAR(spring_restitution(0.01), 0.969071, 1e-6);
  EXPECT_NEAR(spring_restitution(0.5), std::exp(-0.5 * std::numbers::pi / std::sqrt(0.75)), 1e-15);
  EXPECT_THROW(spring_restitution(1.0), std::domain_error);
  EXPECT_THROW(spring_restitution(-0.1), std::domain_error);
}

TEST(Rigid, StitchedLawIsContinuous) {
  const ModelParams p{0.01, 0.1};
  const double r_high = spring_restitution(p.mu);
  const double u_c = 3.0 * p.gamma * (1.0 - r_high) / p.mu;
  EXPECT_NEAR(stitched_restitution(u_c * (1.0 - 1e-12), p), r_high, 1e-12);
  EXPECT_EQ(stitched_restitution(2.0 * u_c, p), r_high);
  EXPECT_NEAR(stitched_restitution(0.5 * u_c, p), 1.0 - p.mu * 0.5 * u_c / (3.0 * p.gamma), 1e-15);
  EXPECT_EQ(stitched_restitution(0.0, p), 1.0);
  EXPECT_EQ(stitched_restitution(0.3, {0.01, 0.0}), 1.0);
  EXPECT_THROW(stitched_restitution(0.1, {0.01, 1.0}), std::domain_error);
  EXPECT_THROW(RestitutionModel::stitched({0.01, 1.5}).r(0.1), std::domain_error);
}

TEST(Rigid, StitchedSpeedsFallBelowTheCrossover) {
  const ModelParams p{0.01, 0.1};
  const RigidBounce run = rigid_bounce(1.0, p.gamma, RestitutionModel::stitched(p), 2000);
  for (std::size_t k = 1; k < run.speeds.size(); ++k) EXPECT_LT(run.speeds[k], run.speeds[k - 1]);
  // Below u_c the law is x - (mu / 3 gamma) x^2, so u_n ~ 3 gamma / (mu n).
  const double N = static_cast<double>(run.speeds.size() - 1);
  EXPECT_NEAR(N * run.speeds.back() * p.mu / (3.0 * p.gamma), 1.0, 0.02);
}

TEST(Rigid, InputValidation) {
  const auto m = RestitutionModel::constant(0.5);
  EXPECT_THROW(rigid_bounce(0.0, 1.0, m, 10), std::invalid_argument);
  EXPECT_THROW(rigid_bounce(1.0, -1.0, m, 10), std::invalid_argument);
  EXPECT_THROW(rigid_bounce(1.0, 1.0, m, 0), std::invalid_argument);
}

TEST(Rigid, LogCarriesOneRegularContactPerBounce) {
  const RigidBounce run = rigid_bounce(1.0, 2.0, RestitutionModel::constant(0.5), 5);
  const SimulationLog log = rigid_log(run, 2.0);
  ASSERT_EQ(log.events.size(), 5u);
  EXPECT_EQ(log.model, ModelKind::Rigid);
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_EQ(log.events[k].n, k + 1);
    EXPECT_EQ(log.events[k].kind, ContactKind::Regular);
    EXPECT_NEAR(log.events[k].t, run.cumulative[k], 1e-15);
    EXPECT_EQ(log.events[k].xdot_post, -0.5 * log.events[k].xdot_pre);
  }
  EXPECT_THROW(asymptotic_report(log), InsufficientData);
}
