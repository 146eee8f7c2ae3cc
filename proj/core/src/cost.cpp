#include "formplan/cost.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace formplan {

double path_length(const CandidatePath& path) {
  double sum = 0.0;
  for (std::size_t l = 0; l + 1 < path.size(); ++l) sum += distance(path[l], path[l + 1]);
  return sum;
}

double violation_cost(const CandidatePath& path, std::span<const CylinderObstacle> obstacles,
                      double inflation) {
  if (obstacles.empty()) return 0.0;
  const auto segments = path.segment_count();
  double sum_segments = 0.0;
  for (std::size_t l = 0; l < segments; ++l) {
    const Point3 mid = 0.5 * (path[l] + path[l + 1]);
    double sum_obstacles = 0.0;
    for (const auto& o : obstacles) {
      const double d = distance(mid, o.base_center);
      const double r_safe = inflation + safe_distance(o, mid.z);
      sum_obstacles += std::max(1.0 - d / r_safe, 0.0);
    }
    sum_segments += sum_obstacles / static_cast<double>(obstacles.size());
  }
  return sum_segments / static_cast<double>(segments);
}

double violation_cost(const CandidatePath& path, std::span<const CylinderObstacle> obstacles,
                      const FormationSpec& formation) {
  return violation_cost(path, obstacles, formation.quad_radius() + formation.radius());
}

double altitude_cost(const CandidatePath& path, const AltitudeBand& band) {
  double sum = 0.0;
  for (const auto& p : path.free_waypoints()) {
    if (p.z <= 0.0) return kInfiniteCost;
    if (p.z > band.max)
      sum += p.z - band.max;
    else if (p.z < band.min)
      sum += band.min - p.z;
  }
  return sum;
}

CostBreakdown combine(double j1, double j2, double j3, const CostWeights& weights) {
  CostBreakdown c{j1, j2, j3, 0.0};
  c.total = std::isinf(j3) ? kInfiniteCost
                           : weights.length * j1 + weights.violation * j2 + weights.altitude * j3;
  return c;
}

CostBreakdown evaluate(const CandidatePath& path, const Scenario& scenario) {
  if (path.start() != scenario.start || path.target() != scenario.target)
    throw std::invalid_argument("path endpoints do not match the scenario start/target");
  return combine(path_length(path), violation_cost(path, scenario.obstacles, scenario.formation),
                 altitude_cost(path, scenario.altitude), scenario.weights);
}

}  // namespace formplan
