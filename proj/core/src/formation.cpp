#include "formplan/formation.hpp"

#include <stdexcept>

namespace formplan {

FormationSpec::FormationSpec(std::vector<Point3> offsets, double quad_radius, OffsetFrame frame)
    : offsets_(std::move(offsets)), quad_radius_(quad_radius), frame_(frame) {
  if (offsets_.empty()) throw std::invalid_argument("empty formation");
  for (const auto& o : offsets_)
    if (!o.is_finite()) throw std::invalid_argument("formation offset has non-finite component");
  if (!(quad_radius_ > 0.0) || !std::isfinite(quad_radius_))
    throw std::invalid_argument("quad radius must be positive");
}

std::vector<CandidatePath> derive_paths(const CandidatePath& centroid_path,
                                        const FormationSpec& spec,
                                        std::span<const EulerAngles> attitude) {
  if (!attitude.empty() && attitude.size() != centroid_path.size())
    throw std::invalid_argument("attitude profile length differs from path length");

  std::vector<CandidatePath> out;
  out.reserve(spec.uav_count());
  for (const auto& offset : spec.offsets()) {
    std::vector<Point3> waypoints;
    waypoints.reserve(centroid_path.size());
    for (std::size_t l = 0; l < centroid_path.size(); ++l) {
      Point3 delta = offset;
      if (spec.frame() == OffsetFrame::formation && !attitude.empty())
        delta = rotation_from_euler(attitude[l]).apply(offset);
      waypoints.push_back(centroid_path[l] + delta);
    }
    out.emplace_back(std::move(waypoints));
  }
  return out;
}

TrackingError tracking_error(const Point3& desired, const Point3& actual,
                             const EulerAngles& attitude) {
  const Point3 inertial = desired - actual;
  return {inertial, rotation_from_euler(attitude).transpose().apply(inertial)};
}

}  // namespace formplan
