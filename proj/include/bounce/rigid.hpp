#pragma once

// Rigid ball bouncing with a restitution law u_{n+1} = r(u_n) u_n.

#include <functional>
#include <string>
#include <vector>

#include "bounce/model.hpp"

namespace bounce {

struct RestitutionModel {
  std::string name;
  std::function<double(double)> r;  ///< r(u), u >= 0

  static RestitutionModel constant(double r);
  /// r(u) = 1 - (u/U)^{1/5}
  static RestitutionModel one_fifth(double U);
  static RestitutionModel stitched(const ModelParams& p);
};

struct RigidBounce {
  std::vector<double> speeds;        ///< u_0 .. u_n
  std::vector<double> flight_times;  ///< tau_k = 2 u_k / g, k < n
  std::vector<double> cumulative;    ///< partial sums of flight_times
};

RigidBounce rigid_bounce(double u0, double g, const RestitutionModel& model, std::size_t n);

/// exp(-mu pi / sqrt(1 - mu^2)) above u_c = 3 gamma (1 - that)/mu, 1 - mu u/(3 gamma) below.
/// Throws std::domain_error for mu >= 1.
double stitched_restitution(double u, const ModelParams& p);

/// exp(-mu pi / sqrt(1 - mu^2)); std::domain_error for mu >= 1.
double spring_restitution(double mu);

}  // namespace bounce
