#pragma once

// Nonlinear spring:  psi'' = -gamma,  xi'' = -rho xi |xi|^a - 2 mu xi' |xi|^b.
// psi stays a parabola; xi is integrated with an adaptive Dormand-Prince 5(4) pair.

#include <optional>
#include <stdexcept>

#include "bounce/engine.hpp"
#include "bounce/model.hpp"

namespace bounce {

struct StepFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonlinearParams {
  ModelParams base;
  double rho = 1.0;
  double a = 0.0;
  double b = 0.0;

  void validate() const;

  bool operator==(const NonlinearParams&) const = default;
};

struct NonlinearConfig {
  double tol = 1e-12;
  double h_max = 0.1;
  double t_max = 1e4;
  std::size_t max_impacts = 100000;
  double tau_floor = 1e-9;
  double v_eps = 1e-10;
  double a_eps = 1e-10;

  bool operator==(const NonlinearConfig&) const = default;
};

double nonlinear_energy(const BallState& s, const NonlinearParams& p);
double nonlinear_equilibrium_xi(const NonlinearParams& p);

/// xi'' at (xi, xidot).
double nonlinear_spring_acceleration(double xi, double xidot, const NonlinearParams& p);

struct NonlinearStep {
  BallState state;
  double dt_used;
  double error_estimate;  ///< scaled local error of the accepted step, <= 1
  double dt_next;
};

/// One accepted adaptive step starting with dt_suggestion.
NonlinearStep nonlinear_flight_step(const BallState& s, const NonlinearParams& p, double dt_suggestion,
                                    const NonlinearConfig& cfg = {});

/// Single fixed step of size h, no error control.
BallState nonlinear_fixed_step(const BallState& s, const NonlinearParams& p, double h);

/// First x = 0 after s; nullopt past cfg.t_max.
std::optional<ContactHit> nonlinear_find_contact(const BallState& s, const NonlinearParams& p,
                                                 const NonlinearConfig& cfg);

SimulationLog nonlinear_run(const BallState& initial, const NonlinearParams& p, const NonlinearConfig& cfg);

struct AlphaFit {
  double alpha_hat;
  double alpha_theory;
  double spread;
  std::size_t count;
};

/// mu (3 gamma)^{-1} (gamma/rho)^{b/(a+1)}
double nonlinear_alpha_theory(const NonlinearParams& p);

/// Mean of (Xdot_n - Xdot_{n+1}) / Xdot_n^2 over the last decade of regular impacts.
AlphaFit nonlinear_asymptotic_alpha(const SimulationLog& run, const NonlinearParams& p, std::size_t min_tail = 100);

}  // namespace bounce
