#include "formplan/environment.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "formplan/errors.hpp"

namespace formplan {

namespace {

double axis(const Point3& p, int a) {
  switch (a) {
    case 0: return p.x;
    case 1: return p.y;
    case 2: return p.z;
  }
  throw std::out_of_range("axis index must be 0, 1 or 2");
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

}  // namespace

bool OperationSpace::contains(const Point3& p) const {
  for (int a = 0; a < 3; ++a)
    if (axis(p, a) < lower(a) || axis(p, a) > upper(a)) return false;
  return true;
}

double OperationSpace::lower(int a) const { return axis(min_corner, a); }
double OperationSpace::upper(int a) const { return axis(max_corner, a); }

double safe_distance(const CylinderObstacle& obstacle, double probe_altitude) {
  const double z = std::min(probe_altitude, obstacle.top_altitude());
  const double dz = z - obstacle.base_center.z;
  return std::sqrt(obstacle.radius * obstacle.radius + dz * dz);
}

void Scenario::validate() const {
  const auto& box = operation_space;
  require(box.min_corner.is_finite() && box.max_corner.is_finite(),
          "operation_space corners must be finite");
  for (int a = 0; a < 3; ++a)
    require(box.lower(a) < box.upper(a),
            "operation_space.min must be strictly below operation_space.max on every axis");
  require(start.is_finite() && box.contains(start), "start lies outside the operation space");
  require(target.is_finite() && box.contains(target), "target lies outside the operation space");

  for (std::size_t k = 0; k < obstacles.size(); ++k) {
    const auto& o = obstacles[k];
    const std::string tag = "obstacles[" + std::to_string(k) + "]";
    require(o.base_center.is_finite(), tag + ".center must be finite");
    require(o.radius > 0.0 && std::isfinite(o.radius), tag + ".radius must be positive");
    require(o.height > 0.0 && std::isfinite(o.height), tag + ".height must be positive");
    require(o.base_center.x - o.radius >= box.min_corner.x &&
                o.base_center.x + o.radius <= box.max_corner.x &&
                o.base_center.y - o.radius >= box.min_corner.y &&
                o.base_center.y + o.radius <= box.max_corner.y,
            tag + " footprint extends outside the operation space");
  }

  require(std::isfinite(altitude.min) && std::isfinite(altitude.max) && altitude.min < altitude.max,
          "altitude.min must be below altitude.max");

  const double betas[] = {weights.length, weights.violation, weights.altitude};
  bool any_positive = false;
  for (double b : betas) {
    require(std::isfinite(b) && b >= 0.0, "cost weights must be finite and non-negative");
    any_positive = any_positive || b > 0.0;
  }
  require(any_positive, "at least one cost weight must be positive");

  try {
    pso.validate();
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
}

}  // namespace formplan
