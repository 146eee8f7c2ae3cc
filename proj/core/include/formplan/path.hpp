#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "formplan/geometry.hpp"

namespace formplan {

/// Ordered waypoints: start, v >= 1 free waypoints, target. Segment count is v + 1.
class CandidatePath {
 public:
  /// Throws std::invalid_argument if fewer than three waypoints or any is non-finite.
  explicit CandidatePath(std::vector<Point3> waypoints);

  [[nodiscard]] std::span<const Point3> waypoints() const { return waypoints_; }
  [[nodiscard]] std::span<const Point3> free_waypoints() const {
    return std::span<const Point3>(waypoints_).subspan(1, waypoints_.size() - 2);
  }
  [[nodiscard]] const Point3& start() const { return waypoints_.front(); }
  [[nodiscard]] const Point3& target() const { return waypoints_.back(); }
  [[nodiscard]] std::size_t size() const { return waypoints_.size(); }
  [[nodiscard]] std::size_t segment_count() const { return waypoints_.size() - 1; }
  [[nodiscard]] const Point3& operator[](std::size_t i) const { return waypoints_[i]; }

  friend bool operator==(const CandidatePath&, const CandidatePath&) = default;

 private:
  std::vector<Point3> waypoints_;
};

}  // namespace formplan
