#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace formplan {

enum class Variant { classic, theta };

std::string_view to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view text);

/// Swarm parameters. Dimensionality is always 3 * free_waypoints.
struct PsoConfig {
  std::size_t swarm_size = 100;
  std::size_t free_waypoints = 10;
  double inertia = 0.7;
  double c1 = 1.5;
  double c2 = 1.5;
  std::size_t iterations = 300;
  // Initial waypoint scatter around the start-target line, as a fraction of each axis range.
  double init_spread = 0.3;
  std::uint64_t seed = 1;
  Variant variant = Variant::theta;
  // Convergence is declared at the first iteration after which the best cost
  // improves by less than convergence_epsilon (relative) over the window.
  std::size_t convergence_window = 30;
  double convergence_epsilon = 1e-4;

  [[nodiscard]] std::size_t dimensions() const { return 3 * free_waypoints; }

  /// Throws std::invalid_argument naming the violated constraint.
  void validate() const;

  friend bool operator==(const PsoConfig&, const PsoConfig&) = default;
};

}  // namespace formplan
