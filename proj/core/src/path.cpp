#include "formplan/path.hpp"

#include <stdexcept>

namespace formplan {

CandidatePath::CandidatePath(std::vector<Point3> waypoints) : waypoints_(std::move(waypoints)) {
  if (waypoints_.size() < 3)
    throw std::invalid_argument("path needs a start, a target and at least one free waypoint");
  for (const auto& p : waypoints_)
    if (!p.is_finite()) throw std::invalid_argument("path waypoint has non-finite component");
}

}  // namespace formplan
