#pragma once

// Domain types of the two-mass deformable ball in nondimensional units:
// lengths in units of the rest length L, times in units of sqrt(m / 2k).

#include <optional>

namespace bounce {

/// Tolerance for the floor constraint x >= 0. Root refinement leaves residue
/// of this order on the guard surface itself.
inline constexpr double kFloorTolerance = 1e-12;

/// Nondimensional gravity (gamma = g m / 2 L k) and damping (mu = nu / sqrt(2 k m)).
struct ModelParams {
  double gamma = 0.01;
  double mu = 0.01;

  /// Throws std::invalid_argument unless gamma > 0 and mu >= 0.
  /// mu == 0 is accepted as the conservative limit.
  void validate() const;

  /// True iff the upper mass sits above the floor at equilibrium (gamma < 1/2).
  [[nodiscard]] bool physical() const { return gamma < 0.5; }

  bool operator==(const ModelParams&) const = default;
};

/// Half-sum / half-difference coordinates that decouple the flight dynamics.
struct CmCoords {
  double psi = 0.0;
  double psidot = 0.0;
  double xi = 0.0;
  double xidot = 0.0;

  bool operator==(const CmCoords&) const = default;
};

/// Phase point of the two masses. (x, xdot, y, ydot) is the canonical storage;
/// the CM view is always derived.
struct BallState {
  double t = 0.0;
  double x = 0.0;
  double xdot = 0.0;
  double y = 1.0;
  double ydot = 0.0;

  [[nodiscard]] CmCoords cm() const;
  static BallState from_cm(const CmCoords& c, double t = 0.0);

  [[nodiscard]] bool satisfies_floor() const { return x >= -kFloorTolerance; }

  bool operator==(const BallState&) const = default;
};

CmCoords to_cm_coords(const BallState& s);

struct Accelerations {
  double xddot;
  double yddot;
};

/// Free-flight accelerations from the coupled equations of motion.
Accelerations flight_accelerations(const BallState& s, const ModelParams& p);

/// E = xidot^2/2 + xi^2/2 + psidot^2/2 + gamma psi.
double energy(const BallState& s, const ModelParams& p);

/// Net spring + gravity force on the lower mass: F = y/2 + mu ydot - gamma - 1/2.
double floor_force(const BallState& s, const ModelParams& p);

/// Energy of the static equilibrium, -gamma^2/2. Lower bound of every reachable state.
double equilibrium_energy(const ModelParams& p);

/// x = xdot = ydot = 0, y = 1 - 2 gamma.
BallState static_equilibrium(const ModelParams& p, double t = 0.0);

/// Below this energy neither grazing nor sticky contacts can occur.
double anomaly_energy_barrier(const ModelParams& p);

/// Energy below which the spring can never shrink to zero length, (1 - 4 gamma)/8.
/// Diagnostic only; the engine never enforces it.
double spring_collapse_energy(const ModelParams& p);

struct CharacteristicTimes {
  double T_psi;                 ///< free-fall time sqrt(1/(2 gamma))
  std::optional<double> T_xi;   ///< half spring period pi/sqrt(1 - mu^2), mu < 1 only
  double T_d;                   ///< damping e-folding time 1/mu (infinite for mu == 0)
};

CharacteristicTimes characteristic_times(const ModelParams& p);

}  // namespace bounce
