#pragma once

// CSV and summary output consumed by the plotting scripts.
//   events.csv:      n,t,tau,kind,xdot_pre,xdot_post,y,ydot,E
//   traj.csv:        t,x,xdot,y,ydot,E
//   restitution.csv: n,f,r
// Floats carry 17 significant digits; lines end with LF.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bounce/engine.hpp"
#include "bounce/experiments.hpp"

namespace bounce {

inline constexpr const char* kEventsHeader = "n,t,tau,kind,xdot_pre,xdot_post,y,ydot,E";
inline constexpr const char* kTrajectoryHeader = "t,x,xdot,y,ydot,E";
inline constexpr const char* kRestitutionHeader = "n,f,r";

void write_events_csv(std::ostream& out, const std::vector<ContactEvent>& events);
void write_trajectory_csv(std::ostream& out, const std::vector<BallState>& traj, const ModelParams& p);
/// `energy_of` lets the nonlinear model supply its own energy.
void write_trajectory_csv(std::ostream& out, const std::vector<BallState>& traj,
                          const std::function<double(const BallState&)>& energy_of);
void write_restitution_csv(std::ostream& out, const RestitutionSeries& r);
/// final_E defaults to the linear energy of the final state.
void write_summary_ini(std::ostream& out, const SimulationLog& log, std::optional<double> final_energy = {});

/// Throws std::runtime_error on a header or field mismatch.
std::vector<ContactEvent> read_events_csv(std::istream& in);
std::vector<BallState> read_trajectory_csv(std::istream& in);

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body);

}  // namespace bounce
