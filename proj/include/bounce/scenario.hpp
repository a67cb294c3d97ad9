#pragma once

// Scenario files: flat INI sections [model], [initial], [rigid], [engine], [output].

#include <string>

#include "bounce/engine.hpp"
#include "bounce/nonlinear.hpp"

namespace bounce {

struct RigidSettings {
  std::string law = "constant";  ///< constant | one-fifth | stitched
  double r = 0.5;
  double U = 1.0;
  double u0 = 1.0;
  double g = 1.0;
  std::size_t n = 30;

  bool operator==(const RigidSettings&) const = default;
};

struct ScenarioConfig {
  std::string name = "scenario";
  ModelKind model = ModelKind::Linear;
  NonlinearParams params;  ///< base gamma, mu; rho, a, b used by the nonlinear model only

  bool cm_form = true;     ///< initial condition given as (psi, psidot, xi, xidot)
  CmCoords cm;
  BallState direct{0.0, 0.0, 0.0, 1.0, 0.0};

  RigidSettings rigid;
  EngineConfig engine;
  double nl_tol = 1e-12;

  std::string out_dir = "out";
  double sample_dt = -1.0;  ///< < 0: 200 samples per min(T_psi, T_xi); 0: no trajectory

  [[nodiscard]] BallState initial_state() const;
  /// Trajectory spacing after resolving the automatic default.
  [[nodiscard]] double resolved_sample_dt() const;
  [[nodiscard]] NonlinearConfig nonlinear_config() const;

  bool operator==(const ScenarioConfig&) const = default;
};

ScenarioConfig parse_scenario(const std::string& text);
ScenarioConfig load_scenario(const std::string& path);
std::string serialize_scenario(const ScenarioConfig& c);

}  // namespace bounce
