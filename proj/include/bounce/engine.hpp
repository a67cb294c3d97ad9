#pragma once

// Event-driven simulation: closed-form flights, contact search on x(t) = 0,
// collision map, contact classification and sticky phases.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "bounce/asymptotics.hpp"
#include "bounce/flight.hpp"
#include "bounce/model.hpp"

namespace bounce {

enum class ContactKind { Regular, Grazing, StickyStart, StickyEnd };
enum class Termination { TimeLimit, ImpactLimit, AsymptoticFloor, InfiniteSticky };
enum class ModelKind { Linear, Nonlinear, Rigid };

std::string_view to_string(ContactKind k);
std::string_view to_string(Termination t);
std::string_view to_string(ModelKind m);
std::optional<ContactKind> contact_kind_from_string(std::string_view s);
std::optional<Termination> termination_from_string(std::string_view s);
std::optional<ModelKind> model_kind_from_string(std::string_view s);

struct ContactEvent {
  std::size_t n = 0;     ///< 1-based contact index
  double t = 0.0;
  double tau = 0.0;      ///< time since the previous event (or since the start)
  ContactKind kind = ContactKind::Regular;
  double xdot_pre = 0.0;
  double xdot_post = 0.0;
  double y = 0.0;
  double ydot = 0.0;
  double E = 0.0;

  [[nodiscard]] BallState pre_state() const { return {t, 0.0, xdot_pre, y, ydot}; }
  [[nodiscard]] BallState post_state() const { return {t, 0.0, xdot_post, y, ydot}; }
};

struct DegenerateContact : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two successive regular impacts slower than this multiple of v_eps also end a
/// run at the asymptotic floor.
inline constexpr double kFloorSpeedFactor = 100.0;

struct EngineConfig {
  double t_max = 1e4;
  std::size_t max_impacts = 1000000;
  double tau_floor = 1e-9;
  double v_eps = 1e-10;
  double a_eps = 1e-10;
  /// Empirical ceiling on sticky events per run; exceeding it is an error.
  std::size_t max_sticky_events = 64;
  /// Trajectory sample spacing; 0 disables sampling.
  double sample_dt = 0.0;
  std::size_t max_samples = 5000000;
  /// After AsymptoticFloor, continue the post-impact speed with the terminal map.
  bool asymptotic_handoff = false;

  bool operator==(const EngineConfig&) const = default;
};

struct SimulationLog {
  ModelKind model = ModelKind::Linear;
  ModelParams params;
  BallState initial;
  std::vector<ContactEvent> events;
  std::vector<BallState> trajectory;
  Termination termination = Termination::TimeLimit;
  BallState final_state;
  std::optional<TailStats> asymptotics;
  std::vector<double> handoff_xdot;
};

struct ContactHit {
  double tau;
  BallState state;  ///< at the contact, x set to 0
};

/// First contact of the flight within cfg.t_max; nullopt when the flight outlives it.
std::optional<ContactHit> find_next_contact(const FlightSolution& f, const ModelParams& p,
                                            const EngineConfig& cfg);

/// xdot -> -xdot with everything else unchanged.
BallState collide(const BallState& s);

ContactKind classify_contact(const BallState& s, const ModelParams& p, const EngineConfig& cfg);

SimulationLog run_simulation(const BallState& initial, const ModelParams& p, const EngineConfig& cfg = {});

struct JumpReport {
  std::array<double, 5> expected;  ///< [xdot], [xddot], [yddot], [xdddot], [ydddot]
  std::array<double, 5> observed;
  double max_error;
};

/// Derivative jumps across a regular impact, from the flights on either side.
JumpReport jump_relations_check(const ContactEvent& e, const FlightSolution& f_pre, const FlightSolution& f_post);

}  // namespace bounce

namespace bounce {

/// Regular impacts followed by another contact, paired with the flight that follows.
std::vector<ImpactSample> impact_samples(const SimulationLog& log);

}  // namespace bounce
