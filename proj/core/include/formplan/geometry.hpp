#pragma once

#include <array>
#include <cmath>
#include <span>

namespace formplan {

/// A position (or displacement) in meters, expressed in the inertial frame.
struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Point3& operator+=(const Point3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Point3& operator-=(const Point3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }

  [[nodiscard]] double norm() const { return std::sqrt(x * x + y * y + z * z); }
  [[nodiscard]] bool is_finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }

  friend constexpr bool operator==(const Point3&, const Point3&) = default;
};

constexpr Point3 operator+(Point3 a, const Point3& b) { return a += b; }
constexpr Point3 operator-(Point3 a, const Point3& b) { return a -= b; }
constexpr Point3 operator*(double s, const Point3& p) { return {s * p.x, s * p.y, s * p.z}; }

inline double distance(const Point3& a, const Point3& b) { return (a - b).norm(); }

/// Throws std::invalid_argument if any component is NaN or infinite.
Point3 checked_point(double x, double y, double z);

/// Roll/pitch/yaw in radians, each normalized to (-pi, pi].
class EulerAngles {
 public:
  EulerAngles() = default;
  /// Throws std::invalid_argument on non-finite input.
  EulerAngles(double roll, double pitch, double yaw);

  [[nodiscard]] double roll() const { return roll_; }
  [[nodiscard]] double pitch() const { return pitch_; }
  [[nodiscard]] double yaw() const { return yaw_; }

  friend bool operator==(const EulerAngles&, const EulerAngles&) = default;

 private:
  double roll_ = 0.0;
  double pitch_ = 0.0;
  double yaw_ = 0.0;
};

/// Wraps an angle into (-pi, pi].
double normalize_angle(double radians);

/// Proper rotation (orthonormal, det = +1) stored row-major.
class RotationMatrix {
 public:
  using Rows = std::array<std::array<double, 3>, 3>;

  /// Identity.
  RotationMatrix();

  [[nodiscard]] double operator()(int row, int col) const { return m_[row][col]; }
  [[nodiscard]] const Rows& rows() const { return m_; }

  [[nodiscard]] Point3 apply(const Point3& p) const;
  /// The inverse rotation; exact for orthonormal matrices.
  [[nodiscard]] RotationMatrix transpose() const;
  [[nodiscard]] RotationMatrix operator*(const RotationMatrix& rhs) const;
  [[nodiscard]] double determinant() const;

 private:
  explicit RotationMatrix(const Rows& m) : m_(m) {}
  friend RotationMatrix rotation_from_euler(const EulerAngles& angles);

  Rows m_;
};

/// R_OF mapping formation-frame vectors into the inertial frame
/// (yaw about z, then pitch about y, then roll about x).
RotationMatrix rotation_from_euler(const EulerAngles& angles);

/// Component-wise mean. Throws std::invalid_argument("empty formation") on empty input.
Point3 centroid(std::span<const Point3> positions);

/// Largest distance from the centroid among the given offsets.
double formation_radius(std::span<const Point3> offsets);

}  // namespace formplan
