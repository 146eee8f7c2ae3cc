#pragma once

#include <span>
#include <vector>

#include "formplan/geometry.hpp"
#include "formplan/path.hpp"

namespace formplan {

/// Frame in which the per-UAV offsets are expressed.
enum class OffsetFrame { inertial, formation };

/// Rigid formation: each UAV's offset from the centroid plus the airframe radius.
class FormationSpec {
 public:
  /// Throws std::invalid_argument on an empty offset list, non-finite offsets
  /// or a non-positive quad radius.
  FormationSpec(std::vector<Point3> offsets, double quad_radius,
                OffsetFrame frame = OffsetFrame::inertial);

  [[nodiscard]] std::span<const Point3> offsets() const { return offsets_; }
  [[nodiscard]] double quad_radius() const { return quad_radius_; }
  [[nodiscard]] OffsetFrame frame() const { return frame_; }
  [[nodiscard]] std::size_t uav_count() const { return offsets_.size(); }
  /// max |offset|; always recomputed from the offsets.
  [[nodiscard]] double radius() const { return formation_radius(offsets_); }

  friend bool operator==(const FormationSpec&, const FormationSpec&) = default;

 private:
  std::vector<Point3> offsets_;
  double quad_radius_;
  OffsetFrame frame_;
};

/// Desired-minus-actual position error, in the inertial and in the formation frame.
struct TrackingError {
  Point3 inertial;
  Point3 formation;
};

/// Per-UAV paths T_n = T_F + dT_n. In formation-frame mode the offset at waypoint l
/// is rotated by R_OF(attitude[l]); an empty attitude span means identity throughout.
/// Throws std::invalid_argument if attitude is non-empty and its size differs from
/// the path size.
std::vector<CandidatePath> derive_paths(const CandidatePath& centroid_path,
                                        const FormationSpec& spec,
                                        std::span<const EulerAngles> attitude = {});

TrackingError tracking_error(const Point3& desired, const Point3& actual,
                             const EulerAngles& attitude);

}  // namespace formplan
