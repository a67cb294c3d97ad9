#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "bounce/asymptotics.hpp"
#include "bounce/experiments.hpp"
#include "bounce/rigid.hpp"

using namespace bounce;

namespace {

std::vector<ImpactSample> synthetic_tail(const ModelParams& p, std::size_t N, double wobble) {
  std::vector<ImpactSample> s;
  for (std::size_t n = 1; n <= N; ++n) {
    const double w = 1.0 + wobble * std::sin(static_cast<double>(n));
    s.push_back({n, 3.0 * p.gamma / (p.mu * n) * w, 3.0 / (p.mu * n) * w});
  }
  return s;
}

SimulationLog drop(double gamma, double mu, double psi0, std::size_t impacts) {
  EngineConfig cfg;
  cfg.max_impacts = impacts;
  cfg.t_max = 1e6;
  cfg.sample_dt = 0.0;
  return run_simulation(BallState::from_cm({psi0, 0.0, 0.0, 0.0}), {gamma, mu}, cfg);
}

}  // namespace

TEST(Tail, ExactLawsGiveUnitRatios) {
  const ModelParams p{0.01, 0.1};
  const TailStats t = tail_statistics(synthetic_tail(p, 10000, 0.0), p);
  EXPECT_EQ(t.first_n, 1001u);
  EXPECT_EQ(t.last_n, 10000u);
  EXPECT_EQ(t.count, 9000u);
  EXPECT_NEAR(t.n_tau.mean, 1.0, 1e-14);
  EXPECT_NEAR(t.n_xdot.mean, 1.0, 1e-14);
  EXPECT_NEAR(t.xdot_over_tau.mean, 1.0, 1e-14);
  EXPECT_LT(t.n_tau.spread, 1e-13);
  EXPECT_NEAR(t.tau_exponent, -1.0, 1e-12);
}

TEST(Tail, SpreadReflectsScatter) {
  const ModelParams p{0.02, 0.3};
  const TailStats t = tail_statistics(synthetic_tail(p, 5000, 0.01), p);
  EXPECT_NEAR(t.n_tau.spread, 0.02, 1e-4);
  EXPECT_NEAR(t.n_tau.mean, 1.0, 1e-3);
  EXPECT_NEAR(t.xdot_over_tau.mean, 1.0, 1e-14);
}

TEST(Tail, TooShortATailThrows) {
  const ModelParams p{0.01, 0.1};
  EXPECT_THROW(tail_statistics(synthetic_tail(p, 500, 0.0), p, 451), InsufficientData);
  EXPECT_THROW(tail_statistics({}, p), InsufficientData);
  EXPECT_EQ(tail_statistics(synthetic_tail(p, 500, 0.0), p, 450).count, 450u);
}

TEST(Tail, LogLogSlope) {
  std::vector<double> x, y;
  for (int i = 1; i < 50; ++i) {
    x.push_back(i);
    y.push_back(7.0 * std::pow(i, -2.5));
  }
  EXPECT_NEAR(loglog_slope(x, y), -2.5, 1e-12);
  EXPECT_THROW(loglog_slope({1.0}, {1.0}), InsufficientData);
}

TEST(Restitution, SyntheticLogUsesEverySecondFlight) {
  SimulationLog log;
  // Drop, then flights alternating a short one and a long one shrinking by 0.8.
  double f = 2.0;
  log.events.push_back({1, 0.0, 5.0});
  for (std::size_t k = 0; k < 10; ++k) {
    log.events.push_back({log.events.size() + 1, 0.0, 0.01});
    log.events.push_back({log.events.size() + 1, 0.0, f});
    f *= 0.8;
  }
  const RestitutionSeries r = restitution_from_flights(log);
  ASSERT_EQ(r.f.size(), 10u);
  EXPECT_EQ(r.f.front(), 2.0);
  for (double v : r.r) EXPECT_NEAR(v, 0.8, 1e-15);
  EXPECT_NEAR(r.plateau, 0.8, 1e-15);
  EXPECT_EQ(r.plateau_len, 9u);
}

TEST(Restitution, NeedsTwoFlights) {
  SimulationLog log;
  log.events.resize(3);
  EXPECT_THROW(restitution_from_flights(log), InsufficientData);
}

TEST(Restitution, PlateauMatchesTheSpringLaw) {
  for (double mu : {0.005, 0.01, 0.02}) {
    const SimulationLog log = drop(1e-5, mu, 0.25, 120);
    const RestitutionSeries r = restitution_from_flights(log);
    EXPECT_GE(r.plateau_len, 10u) << mu;
    EXPECT_NEAR(r.plateau, spring_restitution(mu), 1e-3) << mu;
  }
}

TEST(Restitution, UndampedBallKeepsItsEnergy) {
  // Flights still vary as energy moves between the two modes.
  const ModelParams p{1e-5, 0.0};
  const SimulationLog log = drop(p.gamma, p.mu, 0.25, 200);
  const double e0 = energy(log.initial, p);
  for (const ContactEvent& e : log.events) EXPECT_NEAR(e.E, e0, 1e-14);
  EXPECT_EQ(spring_restitution(0.0), 1.0);
}

TEST(Rms, ConstantShift) {
  const std::vector<double> a(101, 2.0), b(101, 2.25);
  EXPECT_NEAR(rms_difference(a, b, 0.1), 0.25, 1e-15);
  EXPECT_EQ(rms_difference(a, a, 0.1), 0.0);
  EXPECT_THROW(rms_difference(a, std::vector<double>(5), 0.1), std::invalid_argument);
}

TEST(Rms, TrapezoidOfALine) {
  // a - b = t on [0, 1]: rms = 1/sqrt(3), trapezoid error h^2/12 on t^2.
  std::vector<double> a, b;
  const std::size_t n = 1001;
  for (std::size_t i = 0; i < n; ++i) {
    a.push_back(i / 1000.0);
    b.push_back(0.0);
  }
  EXPECT_NEAR(rms_difference(a, b, 1e-3), 1.0 / std::sqrt(3.0), 1e-6);
}

TEST(StickyProtocol, InitialCondition) {
  const ModelParams p{0.01, 0.1};
  const BallState s = sticky_initial_condition(0.02, p, -0.1);
  EXPECT_EQ(s.x, 0.0);
  EXPECT_EQ(s.xdot, 0.02);
  EXPECT_NEAR(s.y, 1.0 + 0.02 + 0.02, 1e-15);
  EXPECT_EQ(s.ydot, -0.1);
  EXPECT_NEAR(floor_force(sticky_initial_condition(0.0, p), p), 0.0, 1e-15);
}

TEST(StickyProtocol, SweepNormShrinksWithEps) {
  const ModelParams p{0.01, 0.1};
  const StickySweep sw = sticky_sweep({0.0, 0.02, 0.01, 0.005}, p, -0.1, 800);
  EXPECT_NEAR(sw.t_c, 5.3408, 1e-3);
  ASSERT_EQ(sw.rows.size(), 4u);
  EXPECT_EQ(sw.rows[0].norm, 0.0);
  EXPECT_EQ(sw.rows[0].impacts, 0u);
  EXPECT_EQ(sw.grid_t.size(), 801u);
  EXPECT_LT(sw.rows[2].norm, sw.rows[1].norm);
  EXPECT_LT(sw.rows[3].norm, sw.rows[2].norm);
  EXPECT_GT(sw.rows[3].impacts, sw.rows[1].impacts);
}

TEST(Asymptotics, ReportOnALongRun) {
  const ModelParams p{0.01, 0.1};
  const SimulationLog log = drop(p.gamma, p.mu, 1.0, 20000);
  ASSERT_EQ(log.termination, Termination::ImpactLimit);
  const TailStats t = asymptotic_report(log);
  EXPECT_NEAR(t.n_tau.mean, 1.0, 0.02);
  EXPECT_NEAR(t.n_xdot.mean, 1.0, 0.02);
  EXPECT_NEAR(t.xdot_over_tau.mean, 1.0, 1e-3);
  EXPECT_NEAR(t.tau_exponent, -1.0, 0.01);
}

TEST(Asymptotics, ReportRefusesOtherRuns) {
  SimulationLog log = drop(0.01, 0.1, 1.0, 50);
  log.termination = Termination::TimeLimit;
  EXPECT_THROW(asymptotic_report(log), InsufficientData);
  log.termination = Termination::ImpactLimit;
  EXPECT_THROW(asymptotic_report(log), InsufficientData);
  log.model = ModelKind::Nonlinear;
  EXPECT_THROW(asymptotic_report(log, 1), InsufficientData);
}
