#include "formplan/pso_config.hpp"

#include <cmath>
#include <stdexcept>

namespace formplan {

std::string_view to_string(Variant v) { return v == Variant::theta ? "theta" : "classic"; }

std::optional<Variant> parse_variant(std::string_view text) {
  if (text == "theta") return Variant::theta;
  if (text == "classic") return Variant::classic;
  return std::nullopt;
}

void PsoConfig::validate() const {
  if (swarm_size < 2) throw std::invalid_argument("pso.swarm_size must be at least 2");
  if (free_waypoints < 1) throw std::invalid_argument("pso.waypoints must be at least 1");
  if (!(inertia >= 0.0) || !std::isfinite(inertia))
    throw std::invalid_argument("pso.inertia must be non-negative");
  if (!(c1 >= 0.0) || !std::isfinite(c1) || !(c2 >= 0.0) || !std::isfinite(c2))
    throw std::invalid_argument("pso.c1 and pso.c2 must be non-negative");
  if (!(init_spread >= 0.0) || !std::isfinite(init_spread))
    throw std::invalid_argument("pso.init_spread must be non-negative");
  if (iterations < 1) throw std::invalid_argument("pso.iterations must be at least 1");
  if (convergence_window < 1)
    throw std::invalid_argument("pso.convergence_window must be at least 1");
  if (!(convergence_epsilon >= 0.0) || !std::isfinite(convergence_epsilon))
    throw std::invalid_argument("pso.convergence_epsilon must be non-negative");
}

}  // namespace formplan
