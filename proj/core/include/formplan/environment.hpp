#pragma once

#include <vector>

#include "formplan/formation.hpp"
#include "formplan/geometry.hpp"
#include "formplan/pso_config.hpp"

namespace formplan {

/// Axis-aligned search box; min_corner < max_corner on every axis.
struct OperationSpace {
  Point3 min_corner;
  Point3 max_corner;

  [[nodiscard]] bool contains(const Point3& p) const;
  /// Bounds along axis 0 (x), 1 (y) or 2 (z).
  [[nodiscard]] double lower(int axis) const;
  [[nodiscard]] double upper(int axis) const;

  friend bool operator==(const OperationSpace&, const OperationSpace&) = default;
};

/// Vertical cylinder standing on base_center.
struct CylinderObstacle {
  Point3 base_center;
  double radius = 0.0;
  double height = 0.0;

  [[nodiscard]] double top_altitude() const { return base_center.z + height; }

  friend bool operator==(const CylinderObstacle&, const CylinderObstacle&) = default;
};

/// Distance from the cylinder axis base to its surface seen from probe_altitude;
/// above the top the lid altitude is used instead.
double safe_distance(const CylinderObstacle& obstacle, double probe_altitude);

struct AltitudeBand {
  double min = 0.0;
  double max = 0.0;

  friend bool operator==(const AltitudeBand&, const AltitudeBand&) = default;
};

/// Weights of path length, obstacle violation and altitude cost.
struct CostWeights {
  double length = 1.0;
  double violation = 100.0;
  double altitude = 10.0;

  friend bool operator==(const CostWeights&, const CostWeights&) = default;
};

struct Scenario {
  OperationSpace operation_space;
  Point3 start;
  Point3 target;
  std::vector<CylinderObstacle> obstacles;
  FormationSpec formation{{Point3{}}, 0.5};
  AltitudeBand altitude;
  CostWeights weights;
  PsoConfig pso;

  /// Checks every cross-field invariant; throws ValidationError on the first violation.
  void validate() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

}  // namespace formplan
