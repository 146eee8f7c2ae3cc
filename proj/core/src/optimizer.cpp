#include "formplan/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace formplan {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

double clamp_symmetric(double value, double limit) { return std::clamp(value, -limit, limit); }

}  // namespace

SearchBounds path_search_bounds(const OperationSpace& space, std::size_t free_waypoints) {
  SearchBounds b;
  b.lower.reserve(3 * free_waypoints);
  b.upper.reserve(3 * free_waypoints);
  for (int a = 0; a < 3; ++a) {
    b.lower.insert(b.lower.end(), free_waypoints, space.lower(a));
    b.upper.insert(b.upper.end(), free_waypoints, space.upper(a));
  }
  return b;
}

std::vector<double> decode_angles(std::span<const double> angles, const SearchBounds& bounds) {
  if (angles.size() != bounds.size())
    throw std::invalid_argument("angle vector length does not match the search dimensions");
  std::vector<double> out(angles.size());
  for (std::size_t j = 0; j < angles.size(); ++j) {
    const double lo = bounds.lower[j], hi = bounds.upper[j];
    const double x = 0.5 * ((hi - lo) * std::sin(angles[j]) + hi + lo);
    out[j] = std::clamp(x, lo, hi);
  }
  return out;
}

std::vector<double> encode_coordinates(std::span<const double> coordinates,
                                       const SearchBounds& bounds) {
  if (coordinates.size() != bounds.size())
    throw std::invalid_argument("coordinate vector length does not match the search dimensions");
  std::vector<double> out(coordinates.size());
  for (std::size_t j = 0; j < coordinates.size(); ++j) {
    const double lo = bounds.lower[j], hi = bounds.upper[j];
    out[j] = std::asin(std::clamp((2.0 * coordinates[j] - hi - lo) / (hi - lo), -1.0, 1.0));
  }
  return out;
}

CandidatePath path_from_coordinates(std::span<const double> coordinates, const Point3& start,
                                    const Point3& target) {
  if (coordinates.empty() || coordinates.size() % 3 != 0)
    throw std::invalid_argument("coordinate vector length must be a positive multiple of 3");
  const std::size_t v = coordinates.size() / 3;
  std::vector<Point3> waypoints;
  waypoints.reserve(v + 2);
  waypoints.push_back(start);
  for (std::size_t l = 0; l < v; ++l)
    waypoints.push_back({coordinates[l], coordinates[v + l], coordinates[2 * v + l]});
  waypoints.push_back(target);
  return CandidatePath(std::move(waypoints));
}

CandidatePath decode(std::span<const double> angles, const OperationSpace& space,
                     const Point3& start, const Point3& target) {
  if (angles.empty() || angles.size() % 3 != 0)
    throw std::invalid_argument("angle vector length must be a positive multiple of 3");
  const auto bounds = path_search_bounds(space, angles.size() / 3);
  return path_from_coordinates(decode_angles(angles, bounds), start, target);
}

PositionSampler corridor_sampler(const SearchBounds& bounds, const Point3& start,
                                 const Point3& target, double spread) {
  if (bounds.size() == 0 || bounds.size() % 3 != 0)
    throw std::invalid_argument("path search bounds must have 3v dimensions");
  return [bounds, start, target, spread](std::mt19937_64& rng) {
    const std::size_t v = bounds.size() / 3;
    const Point3 direction = target - start;
    std::uniform_real_distribution<double> jitter(-0.5 * spread, 0.5 * spread);
    std::vector<double> coords(bounds.size());
    for (std::size_t l = 0; l < v; ++l) {
      const double f = static_cast<double>(l + 1) / static_cast<double>(v + 1);
      const Point3 base = start + f * direction;
      const double axis_base[3] = {base.x, base.y, base.z};
      for (std::size_t a = 0; a < 3; ++a) {
        const std::size_t j = a * v + l;
        const double lo = bounds.lower[j], hi = bounds.upper[j];
        coords[j] = std::clamp(axis_base[a] + jitter(rng) * (hi - lo), lo, hi);
      }
    }

    std::vector<std::size_t> order(v);
    for (std::size_t l = 0; l < v; ++l) order[l] = l;
    const auto projection = [&](std::size_t l) {
      return coords[l] * direction.x + coords[v + l] * direction.y + coords[2 * v + l] * direction.z;
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return projection(a) < projection(b); });
    std::vector<double> sorted(coords.size());
    for (std::size_t l = 0; l < v; ++l)
      for (std::size_t a = 0; a < 3; ++a) sorted[a * v + l] = coords[a * v + order[l]];
    return sorted;
  };
}

CoefficientSource uniform_coefficients(std::mt19937_64& rng) {
  return [&rng] {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    AttractionCoefficients c;
    c.r1 = unit(rng);
    c.r2 = unit(rng);
    return c;
  };
}

ThetaSwarm init_theta_swarm(std::size_t swarm_size, const SearchBounds& bounds,
                            const Objective& objective, std::mt19937_64& rng,
                            const PositionSampler& sampler) {
  std::uniform_real_distribution<double> angle(-kHalfPi, kHalfPi);
  ThetaSwarm swarm;
  swarm.particles.resize(swarm_size);
  for (auto& p : swarm.particles) {
    if (sampler) {
      p.angles = encode_coordinates(sampler(rng), bounds);
    } else {
      p.angles.resize(bounds.size());
      for (auto& a : p.angles) a = angle(rng);
    }
    p.increments.assign(bounds.size(), 0.0);
  }
  for (std::size_t i = 0; i < swarm_size; ++i) {
    auto& p = swarm.particles[i];
    p.cost = objective(decode_angles(p.angles, bounds));
    p.best_angles = p.angles;
    p.best_cost = p.cost;
    if (i == 0 || p.cost < swarm.global_best_cost) {
      swarm.global_best_cost = p.cost;
      swarm.global_best_index = i;
    }
  }
  swarm.global_best = swarm.particles[swarm.global_best_index].angles;
  return swarm;
}

ClassicSwarm init_classic_swarm(std::size_t swarm_size, const SearchBounds& bounds,
                                const Objective& objective, std::mt19937_64& rng,
                                const PositionSampler& sampler) {
  ClassicSwarm swarm;
  swarm.particles.resize(swarm_size);
  for (auto& p : swarm.particles) {
    if (sampler) {
      p.position = sampler(rng);
    } else {
      p.position.resize(bounds.size());
      for (std::size_t j = 0; j < bounds.size(); ++j)
        p.position[j] =
            std::uniform_real_distribution<double>(bounds.lower[j], bounds.upper[j])(rng);
    }
    p.velocity.assign(bounds.size(), 0.0);
  }
  for (std::size_t i = 0; i < swarm_size; ++i) {
    auto& p = swarm.particles[i];
    p.cost = objective(p.position);
    p.best_position = p.position;
    p.best_cost = p.cost;
    if (i == 0 || p.cost < swarm.global_best_cost) {
      swarm.global_best_cost = p.cost;
      swarm.global_best_index = i;
    }
  }
  swarm.global_best = swarm.particles[swarm.global_best_index].position;
  return swarm;
}

void step_theta(ThetaSwarm& swarm, const SearchBounds& bounds, const PsoConfig& config,
                const Objective& objective, const CoefficientSource& coefficients) {
  const auto& global = swarm.global_best;
  for (auto& p : swarm.particles) {
    for (std::size_t j = 0; j < p.angles.size(); ++j) {
      const auto r = coefficients();
      const double inc = config.inertia * p.increments[j] +
                         config.c1 * r.r1 * (p.best_angles[j] - p.angles[j]) +
                         config.c2 * r.r2 * (global[j] - p.angles[j]);
      p.increments[j] = clamp_symmetric(inc, kHalfPi);
      p.angles[j] = clamp_symmetric(p.angles[j] + p.increments[j], kHalfPi);
      if (std::abs(p.angles[j]) == kHalfPi) p.increments[j] = 0.0;
    }
  }

  // Evaluation is independent per particle.
  for (auto& p : swarm.particles) p.cost = objective(decode_angles(p.angles, bounds));

  for (std::size_t i = 0; i < swarm.particles.size(); ++i) {
    auto& p = swarm.particles[i];
    if (p.cost < p.best_cost) {
      p.best_cost = p.cost;
      p.best_angles = p.angles;
    }
    if (p.cost < swarm.global_best_cost) {
      swarm.global_best_cost = p.cost;
      swarm.global_best_index = i;
      swarm.global_best = p.angles;
    }
  }
}

void step_classic(ClassicSwarm& swarm, const SearchBounds& bounds, const PsoConfig& config,
                  const Objective& objective, const CoefficientSource& coefficients) {
  const auto& global = swarm.global_best;
  for (auto& p : swarm.particles) {
    for (std::size_t j = 0; j < p.position.size(); ++j) {
      const auto r = coefficients();
      const double vmax = 0.5 * (bounds.upper[j] - bounds.lower[j]);
      const double vel = config.inertia * p.velocity[j] +
                         config.c1 * r.r1 * (p.best_position[j] - p.position[j]) +
                         config.c2 * r.r2 * (global[j] - p.position[j]);
      p.velocity[j] = clamp_symmetric(vel, vmax);
      p.position[j] = std::clamp(p.position[j] + p.velocity[j], bounds.lower[j], bounds.upper[j]);
      if (p.position[j] == bounds.lower[j] || p.position[j] == bounds.upper[j]) p.velocity[j] = 0.0;
    }
  }

  for (auto& p : swarm.particles) p.cost = objective(p.position);

  for (std::size_t i = 0; i < swarm.particles.size(); ++i) {
    auto& p = swarm.particles[i];
    if (p.cost < p.best_cost) {
      p.best_cost = p.cost;
      p.best_position = p.position;
    }
    if (p.cost < swarm.global_best_cost) {
      swarm.global_best_cost = p.cost;
      swarm.global_best_index = i;
      swarm.global_best = p.position;
    }
  }
}

std::size_t iterations_to_convergence(std::span<const double> best_totals, std::size_t window,
                                      double epsilon) {
  if (best_totals.empty()) return 0;
  const std::size_t last = best_totals.size() - 1;
  for (std::size_t k = 0; k + window <= last; ++k) {
    const double now = best_totals[k];
    if (!std::isfinite(now)) continue;
    if (now - best_totals[k + window] < epsilon * std::abs(now)) return k;
  }
  return last;
}

std::vector<std::string> feasibility_warnings(const Scenario& scenario) {
  std::vector<std::string> warnings;
  const double inflation = scenario.formation.quad_radius() + scenario.formation.radius();
  const auto check = [&](const Point3& p, const char* name) {
    for (std::size_t k = 0; k < scenario.obstacles.size(); ++k) {
      const auto& o = scenario.obstacles[k];
      if (distance(p, o.base_center) < inflation + safe_distance(o, p.z))
        warnings.push_back(std::string(name) + " lies inside the inflated safe radius of obstacle " +
                           std::to_string(k));
    }
  };
  check(scenario.start, "start");
  check(scenario.target, "target");
  return warnings;
}

namespace {

template <class Swarm, class InitFn, class StepFn, class BestFn>
RunReport optimize(const Scenario& scenario, InitFn init, StepFn step, BestFn best_coordinates) {
  const auto& config = scenario.pso;
  const auto bounds = path_search_bounds(scenario.operation_space, config.free_waypoints);
  const Objective objective = [&scenario](std::span<const double> coordinates) {
    return evaluate(path_from_coordinates(coordinates, scenario.start, scenario.target), scenario)
        .total;
  };

  std::mt19937_64 rng(config.seed);
  const auto coefficients = uniform_coefficients(rng);

  const auto sampler =
      corridor_sampler(bounds, scenario.start, scenario.target, config.init_spread);
  Swarm swarm = init(config.swarm_size, bounds, objective, rng, sampler);

  auto best_path = [&] {
    return path_from_coordinates(best_coordinates(swarm, bounds), scenario.start, scenario.target);
  };
  std::vector<CostBreakdown> trace;
  trace.reserve(config.iterations + 1);
  trace.push_back(evaluate(best_path(), scenario));
  double traced_cost = swarm.global_best_cost;

  for (std::size_t k = 0; k < config.iterations; ++k) {
    step(swarm, bounds, config, objective, coefficients);
    if (swarm.global_best_cost < traced_cost) {
      trace.push_back(evaluate(best_path(), scenario));
      traced_cost = swarm.global_best_cost;
    } else {
      trace.push_back(trace.back());
    }
  }

  std::vector<double> totals;
  totals.reserve(trace.size());
  for (const auto& c : trace) totals.push_back(c.total);

  RunReport report{best_path(), trace.back(), std::move(trace), 0, config.seed, config.variant,
                   0.0, feasibility_warnings(scenario)};
  report.iterations_to_convergence =
      iterations_to_convergence(totals, config.convergence_window, config.convergence_epsilon);
  return report;
}

}  // namespace

RunReport run(const Scenario& scenario) {
  scenario.pso.validate();
  const auto started = std::chrono::steady_clock::now();
  RunReport report =
      scenario.pso.variant == Variant::theta
          ? optimize<ThetaSwarm>(
                scenario,
                [](std::size_t n, const SearchBounds& b, const Objective& f, std::mt19937_64& g,
                   const PositionSampler& s) { return init_theta_swarm(n, b, f, g, s); },
                [](ThetaSwarm& s, const SearchBounds& b, const PsoConfig& c, const Objective& f,
                   const CoefficientSource& r) { step_theta(s, b, c, f, r); },
                [](const ThetaSwarm& s, const SearchBounds& b) {
                  return decode_angles(s.global_best, b);
                })
          : optimize<ClassicSwarm>(
                scenario,
                [](std::size_t n, const SearchBounds& b, const Objective& f, std::mt19937_64& g,
                   const PositionSampler& s) { return init_classic_swarm(n, b, f, g, s); },
                [](ClassicSwarm& s, const SearchBounds& b, const PsoConfig& c, const Objective& f,
                   const CoefficientSource& r) { step_classic(s, b, c, f, r); },
                [](const ClassicSwarm& s, const SearchBounds&) { return s.global_best; });
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

namespace {

VariantSummary summarize(const Scenario& scenario, Variant variant, std::size_t runs,
                         std::uint64_t base_seed) {
  VariantSummary summary;
  summary.variant = variant;
  summary.runs = runs;
  std::vector<double> costs, iterations;
  for (std::size_t r = 0; r < runs; ++r) {
    Scenario s = scenario;
    s.pso.variant = variant;
    s.pso.seed = base_seed + r;
    auto report = run(s);
    costs.push_back(report.best_cost.total);
    iterations.push_back(static_cast<double>(report.iterations_to_convergence));
    if (report.best_cost.feasible()) ++summary.feasible_runs;
    summary.reports.push_back(std::move(report));
  }
  summary.min_cost = *std::min_element(costs.begin(), costs.end());
  summary.max_cost = *std::max_element(costs.begin(), costs.end());
  summary.median_cost = median(costs);
  summary.median_iterations = median(iterations);
  return summary;
}

}  // namespace

ComparisonTable compare(const Scenario& scenario, std::size_t runs, std::uint64_t base_seed) {
  if (runs == 0) throw std::invalid_argument("compare needs at least one run per variant");
  return {summarize(scenario, Variant::classic, runs, base_seed),
          summarize(scenario, Variant::theta, runs, base_seed)};
}

}  // namespace formplan
