#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "formplan/geometry.hpp"
#include "formplan/path.hpp"

namespace formplan {

/// Constant-speed polyline follower with optional Gaussian position noise.
struct SimConfig {
  double speed = 2.0;        // m/s
  double timestep = 0.1;     // s
  double noise_sigma = 0.0;  // m, per axis per sample
  std::uint64_t seed = 1;
};

struct Sample {
  double time = 0.0;
  Point3 position;
};

using Trace = std::vector<Sample>;

/// One trace per path. Samples are taken every timestep starting at the path start, plus
/// one final sample on arrival. A path of zero total length yields a single sample.
/// UAV n draws its noise from a stream seeded with (seed, n).
/// Throws std::invalid_argument on an empty path list, non-positive speed/timestep,
/// negative sigma, or when speed * timestep is not smaller than the shortest
/// non-degenerate segment.
std::vector<Trace> simulate(std::span<const CandidatePath> paths, const SimConfig& config);

struct PathErrorSeries {
  std::vector<double> per_waypoint;
  double max = 0.0;
  double mean = 0.0;
};

/// For every planned waypoint, the distance to the closest flown sample.
/// Throws std::invalid_argument on an empty trace.
PathErrorSeries path_error(const CandidatePath& planned, const Trace& flown);

}  // namespace formplan
