#include "bounce/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <fmt/core.h>

namespace bounce {

void ModelParams::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument(fmt::format("gamma must be positive and finite, got {}", gamma));
  }
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw std::invalid_argument(fmt::format("mu must be non-negative and finite, got {}", mu));
  }
}

CmCoords BallState::cm() const {
  return {0.5 * (y + x - 1.0), 0.5 * (ydot + xdot), 0.5 * (y - x - 1.0), 0.5 * (ydot - xdot)};
}

BallState BallState::from_cm(const CmCoords& c, double t) {
  return {t, c.psi - c.xi, c.psidot - c.xidot, c.psi + c.xi + 1.0, c.psidot + c.xidot};
}

CmCoords to_cm_coords(const BallState& s) { return s.cm(); }

Accelerations flight_accelerations(const BallState& s, const ModelParams& p) {
  const double g = p.gamma;
  const double m = p.mu;
  return {-m * s.xdot - 0.5 * s.x - g - 0.5 + 0.5 * s.y + m * s.ydot,
          -m * s.ydot - 0.5 * s.y - g + 0.5 + 0.5 * s.x + m * s.xdot};
}

double energy(const BallState& s, const ModelParams& p) {
  const CmCoords c = s.cm();
  return 0.5 * c.xidot * c.xidot + 0.5 * c.xi * c.xi + 0.5 * c.psidot * c.psidot + p.gamma * c.psi;
}

double floor_force(const BallState& s, const ModelParams& p) {
  return 0.5 * s.y + p.mu * s.ydot - p.gamma - 0.5;
}

double equilibrium_energy(const ModelParams& p) { return -0.5 * p.gamma * p.gamma; }

BallState static_equilibrium(const ModelParams& p, double t) {
  return {t, 0.0, 0.0, 1.0 - 2.0 * p.gamma, 0.0};
}

double anomaly_energy_barrier(const ModelParams& p) {
  const double m2 = p.mu * p.mu;
  return p.gamma * p.gamma * (3.0 - 2.0 * m2) / (2.0 * (1.0 + 2.0 * m2));
}

double spring_collapse_energy(const ModelParams& p) { return (1.0 - 4.0 * p.gamma) / 8.0; }

CharacteristicTimes characteristic_times(const ModelParams& p) {
  CharacteristicTimes ct{};
  ct.T_psi = std::sqrt(1.0 / (2.0 * p.gamma));
  if (p.mu < 1.0) {
    ct.T_xi = std::numbers::pi / std::sqrt(1.0 - p.mu * p.mu);
  }
  ct.T_d = p.mu > 0.0 ? 1.0 / p.mu : std::numeric_limits<double>::infinity();
  return ct;
}

}  // namespace bounce
