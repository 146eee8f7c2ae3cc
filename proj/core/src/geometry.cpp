#include "formplan/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace formplan {

Point3 checked_point(double x, double y, double z) {
  Point3 p{x, y, z};
  if (!p.is_finite()) throw std::invalid_argument("point has non-finite component");
  return p;
}

double normalize_angle(double radians) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::remainder(radians, two_pi);  // [-pi, pi]
  if (a <= -std::numbers::pi) a += two_pi;
  return a;
}

EulerAngles::EulerAngles(double roll, double pitch, double yaw) {
  if (!std::isfinite(roll) || !std::isfinite(pitch) || !std::isfinite(yaw))
    throw std::invalid_argument("Euler angles must be finite");
  roll_ = normalize_angle(roll);
  pitch_ = normalize_angle(pitch);
  yaw_ = normalize_angle(yaw);
}

RotationMatrix::RotationMatrix() : m_{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}} {}

Point3 RotationMatrix::apply(const Point3& p) const {
  return {m_[0][0] * p.x + m_[0][1] * p.y + m_[0][2] * p.z,
          m_[1][0] * p.x + m_[1][1] * p.y + m_[1][2] * p.z,
          m_[2][0] * p.x + m_[2][1] * p.y + m_[2][2] * p.z};
}

RotationMatrix RotationMatrix::transpose() const {
  Rows t{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) t[c][r] = m_[r][c];
  return RotationMatrix(t);
}

RotationMatrix RotationMatrix::operator*(const RotationMatrix& rhs) const {
  Rows out{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      out[r][c] = m_[r][0] * rhs.m_[0][c] + m_[r][1] * rhs.m_[1][c] + m_[r][2] * rhs.m_[2][c];
  return RotationMatrix(out);
}

double RotationMatrix::determinant() const {
  return m_[0][0] * (m_[1][1] * m_[2][2] - m_[1][2] * m_[2][1]) -
         m_[0][1] * (m_[1][0] * m_[2][2] - m_[1][2] * m_[2][0]) +
         m_[0][2] * (m_[1][0] * m_[2][1] - m_[1][1] * m_[2][0]);
}

RotationMatrix rotation_from_euler(const EulerAngles& angles) {
  const double sphi = std::sin(angles.roll()), cphi = std::cos(angles.roll());
  const double sth = std::sin(angles.pitch()), cth = std::cos(angles.pitch());
  const double spsi = std::sin(angles.yaw()), cpsi = std::cos(angles.yaw());
  return RotationMatrix(RotationMatrix::Rows{{
      {cpsi * cth, cpsi * sth * sphi - spsi * cphi, cpsi * sth * cphi + spsi * sphi},
      {spsi * cth, spsi * sth * sphi + cpsi * cphi, spsi * sth * cphi - cpsi * sphi},
      {-sth, cth * sphi, cth * cphi},
  }});
}

Point3 centroid(std::span<const Point3> positions) {
  if (positions.empty()) throw std::invalid_argument("empty formation");
  Point3 sum;
  for (const auto& p : positions) sum += p;
  const auto n = static_cast<double>(positions.size());
  return {sum.x / n, sum.y / n, sum.z / n};
}

double formation_radius(std::span<const Point3> offsets) {
  if (offsets.empty()) throw std::invalid_argument("empty formation");
  double r = 0.0;
  for (const auto& o : offsets) r = std::max(r, o.norm());
  return r;
}

}  // namespace formplan
