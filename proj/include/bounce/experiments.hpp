#pragma once

// Estimators and numerical protocols built on the engine.

#include <vector>

#include "bounce/asymptotics.hpp"
#include "bounce/engine.hpp"
#include "bounce/rigid.hpp"

namespace bounce {

struct RestitutionSeries {
  std::vector<double> f;  ///< macroscopic flight times f_1, f_2, ...
  std::vector<double> r;  ///< r_n = f_{n+1}/f_n
  double plateau = 0.0;   ///< mean of the leading run of r_n within 1e-3 of r_1
  std::size_t plateau_len = 0;
};

/// Macroscopic flights are every second flight, f_n = tau_{2n}, counting flights from the
/// first contact. The initial drop is not a flight.
RestitutionSeries restitution_from_flights(const SimulationLog& log);

/// X0 = 0, X0dot = eps, Y0 = 1 + 2 gamma - 2 mu Y0dot.
BallState sticky_initial_condition(double eps, const ModelParams& p, double ydot0 = -0.1);

/// sqrt( (1/T) int_0^T (a - b)^2 dt ) on a uniform grid with spacing dt, trapezoid rule.
double rms_difference(const std::vector<double>& a, const std::vector<double>& b, double dt);

struct StickySweepRow {
  double eps;
  std::size_t impacts;  ///< contacts in (0, t_c)
  double norm;
};

struct StickySweep {
  double t_c = 0.0;  ///< duration of the sticky event of the eps = 0 run
  std::vector<double> grid_t;
  std::vector<double> y_s;
  std::vector<StickySweepRow> rows;
};

/// Throws InsufficientData if the eps = 0 run never detaches.
StickySweep sticky_sweep(const std::vector<double>& epsilons, const ModelParams& p, double ydot0 = -0.1,
                         std::size_t grid = 4000, EngineConfig cfg = {});

/// Requires a linear-model log ended by AsymptoticFloor or ImpactLimit with a long enough tail.
TailStats asymptotic_report(const SimulationLog& log, std::size_t min_tail = 1000);

/// Rigid run as an event log: one Regular contact per bounce.
SimulationLog rigid_log(const RigidBounce& run, double g);

}  // namespace bounce
