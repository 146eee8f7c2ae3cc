#pragma once

#include <limits>
#include <span>

#include "formplan/environment.hpp"
#include "formplan/path.hpp"

namespace formplan {

/// Sentinel for paths that dip to or below ground level. Ranks above every finite cost.
inline constexpr double kInfiniteCost = std::numeric_limits<double>::infinity();

struct CostBreakdown {
  double j1 = 0.0;     // path length, m
  double j2 = 0.0;     // obstacle violation, in [0, 1]
  double j3 = 0.0;     // altitude band excess, m (or kInfiniteCost)
  double total = 0.0;  // weighted sum

  [[nodiscard]] bool feasible() const { return j2 == 0.0 && j3 == 0.0; }
  friend bool operator==(const CostBreakdown&, const CostBreakdown&) = default;
};

/// Sum of segment lengths.
double path_length(const CandidatePath& path);

/// Mean over segments of the mean over obstacles of max(1 - d/r_s, 0), where d is the
/// distance from the segment midpoint to the obstacle base center and
/// r_s = inflation + safe_distance(obstacle, midpoint altitude).
/// inflation is r_Q + r_F for the formation centroid. Returns 0 with no obstacles.
double violation_cost(const CandidatePath& path, std::span<const CylinderObstacle> obstacles,
                      double inflation);
double violation_cost(const CandidatePath& path, std::span<const CylinderObstacle> obstacles,
                      const FormationSpec& formation);

/// Per-waypoint excess outside [band.min, band.max], summed over the free waypoints.
/// Any free waypoint at z <= 0 yields kInfiniteCost. The fixed start and target are not
/// counted; `formplan validate` reports them when they lie outside the band.
double altitude_cost(const CandidatePath& path, const AltitudeBand& band);

/// Weighted total. An infinite j3 makes the total infinite whatever the weights.
CostBreakdown combine(double j1, double j2, double j3, const CostWeights& weights);

/// Full cost of a candidate centroid path. Throws std::invalid_argument if the path
/// endpoints differ from the scenario start and target.
CostBreakdown evaluate(const CandidatePath& path, const Scenario& scenario);

}  // namespace formplan
