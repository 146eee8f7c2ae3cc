#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "formplan/cost.hpp"
#include "formplan/environment.hpp"
#include "formplan/path.hpp"
#include "formplan/pso_config.hpp"

namespace formplan {

/// Per-dimension box for the search. Entries [0, v) are x, [v, 2v) are y, [2v, 3v) are z.
struct SearchBounds {
  std::vector<double> lower;
  std::vector<double> upper;

  [[nodiscard]] std::size_t size() const { return lower.size(); }
};

SearchBounds path_search_bounds(const OperationSpace& space, std::size_t free_waypoints);

/// Sine mapping of phase angles in [-pi/2, pi/2] onto [lower, upper] per dimension.
/// Throws std::invalid_argument on a size mismatch.
std::vector<double> decode_angles(std::span<const double> angles, const SearchBounds& bounds);

/// Inverse of decode_angles: arcsin of the coordinate's position within its bounds.
/// Coordinates outside the bounds map to the nearest end of [-pi/2, pi/2].
std::vector<double> encode_coordinates(std::span<const double> coordinates,
                                       const SearchBounds& bounds);

/// Builds start, v free waypoints and target from a 3v coordinate vector.
CandidatePath path_from_coordinates(std::span<const double> coordinates, const Point3& start,
                                    const Point3& target);

/// Angle vector to path. Throws std::invalid_argument unless the length is a positive
/// multiple of three.
CandidatePath decode(std::span<const double> angles, const OperationSpace& space,
                     const Point3& start, const Point3& target);

/// Cost of a decoded coordinate vector; lower is better, +inf allowed.
using Objective = std::function<double(std::span<const double>)>;

/// The two random scalars weighting the personal and global attraction.
struct AttractionCoefficients {
  double r1 = 0.0;
  double r2 = 0.0;
};
/// Called once per particle and dimension, particles in index order, dimensions ascending.
using CoefficientSource = std::function<AttractionCoefficients()>;

/// Draws an initial coordinate vector for one particle.
using PositionSampler = std::function<std::vector<double>(std::mt19937_64&)>;

/// Random start-to-target paths: free waypoint l sits on the straight start-target line at
/// fraction (l + 1) / (v + 1), displaced on each axis by U[-spread/2, spread/2] times the
/// axis range, clamped to the box. Waypoints are then ordered by their projection on the
/// start-target direction.
PositionSampler corridor_sampler(const SearchBounds& bounds, const Point3& start,
                                 const Point3& target, double spread);

/// r1, r2 ~ U[0, 1] from the given engine.
CoefficientSource uniform_coefficients(std::mt19937_64& rng);

struct ThetaParticle {
  std::vector<double> angles;
  std::vector<double> increments;
  std::vector<double> best_angles;
  double cost = kInfiniteCost;
  double best_cost = kInfiniteCost;
};

struct ThetaSwarm {
  std::vector<ThetaParticle> particles;
  std::vector<double> global_best;  // angles
  double global_best_cost = kInfiniteCost;
  std::size_t global_best_index = 0;
};

struct ClassicParticle {
  std::vector<double> position;
  std::vector<double> velocity;
  std::vector<double> best_position;
  double cost = kInfiniteCost;
  double best_cost = kInfiniteCost;
};

struct ClassicSwarm {
  std::vector<ClassicParticle> particles;
  std::vector<double> global_best;  // coordinates
  double global_best_cost = kInfiniteCost;
  std::size_t global_best_index = 0;
};

/// Increments 0, personal bests at the initial evaluation. Without a sampler the angles
/// are drawn from U[-pi/2, pi/2]; with one, they encode the sampled coordinates.
ThetaSwarm init_theta_swarm(std::size_t swarm_size, const SearchBounds& bounds,
                            const Objective& objective, std::mt19937_64& rng,
                            const PositionSampler& sampler = {});

/// Velocities 0. Without a sampler positions are uniform in the box.
ClassicSwarm init_classic_swarm(std::size_t swarm_size, const SearchBounds& bounds,
                                const Objective& objective, std::mt19937_64& rng,
                                const PositionSampler& sampler = {});

/// One angle-encoded iteration: increment = w*increment + c1*r1*(personal - angle)
/// + c2*r2*(global - angle), clamped to [-pi/2, pi/2]; the angle is then advanced and
/// clamped to the same interval. An angle that ends on the boundary has its increment
/// zeroed. Bests move only on strict improvement.
void step_theta(ThetaSwarm& swarm, const SearchBounds& bounds, const PsoConfig& config,
                const Objective& objective, const CoefficientSource& coefficients);

/// One classic iteration in raw coordinates. Velocity is clamped to half the
/// dimension's range and the position to the box; a position that ends on a wall has
/// that velocity component zeroed.
void step_classic(ClassicSwarm& swarm, const SearchBounds& bounds, const PsoConfig& config,
                  const Objective& objective, const CoefficientSource& coefficients);

/// First k with best[k] - best[k + window] < epsilon * |best[k]|, or the last iteration
/// index if the trace never flattens. best[0] is the initial swarm's best.
std::size_t iterations_to_convergence(std::span<const double> best_totals, std::size_t window,
                                      double epsilon);

struct RunReport {
  CandidatePath best_path;
  CostBreakdown best_cost;
  std::vector<CostBreakdown> trace;  // best-so-far after each iteration, [0] = initial
  std::size_t iterations_to_convergence = 0;
  std::uint64_t seed = 0;
  Variant variant = Variant::theta;
  double wall_seconds = 0.0;
  std::vector<std::string> warnings;
};

/// Optimizes the centroid path for scenario.pso. Deterministic for a fixed scenario.
RunReport run(const Scenario& scenario);

/// Start/target positions that already violate an inflated obstacle radius.
std::vector<std::string> feasibility_warnings(const Scenario& scenario);

struct VariantSummary {
  Variant variant = Variant::theta;
  std::size_t runs = 0;
  double min_cost = 0.0;
  double max_cost = 0.0;
  double median_cost = 0.0;
  double median_iterations = 0.0;
  std::size_t feasible_runs = 0;
  std::vector<RunReport> reports;
};

struct ComparisonTable {
  VariantSummary classic;
  VariantSummary theta;
};

/// Runs both variants on seeds base_seed .. base_seed + runs - 1.
/// Throws std::invalid_argument if runs == 0.
ComparisonTable compare(const Scenario& scenario, std::size_t runs, std::uint64_t base_seed);

/// Middle value (mean of the two middle values for even sizes). Throws on empty input.
double median(std::vector<double> values);

}  // namespace formplan
