#include "formplan/simtrack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace formplan {

namespace {

// Position at arc length s along the polyline.
Point3 point_at(const CandidatePath& path, std::span<const double> cumulative, double s) {
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), s);
  std::size_t seg = it == cumulative.begin() ? 0 : static_cast<std::size_t>(it - cumulative.begin()) - 1;
  seg = std::min(seg, path.segment_count() - 1);
  const double len = cumulative[seg + 1] - cumulative[seg];
  const double t = len > 0.0 ? std::clamp((s - cumulative[seg]) / len, 0.0, 1.0) : 0.0;
  return path[seg] + t * (path[seg + 1] - path[seg]);
}

Trace follow(const CandidatePath& path, const SimConfig& config, std::uint64_t stream) {
  std::vector<double> cumulative{0.0};
  for (std::size_t l = 0; l < path.segment_count(); ++l)
    cumulative.push_back(cumulative.back() + distance(path[l], path[l + 1]));
  const double total = cumulative.back();

  std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> noise(0.0, config.noise_sigma);
  auto jitter = [&](Point3 p) {
    if (config.noise_sigma > 0.0) {
      p.x += noise(rng);
      p.y += noise(rng);
      p.z += noise(rng);
    }
    return p;
  };

  Trace trace;
  if (total <= 0.0) {
    trace.push_back({0.0, jitter(path.start())});
    return trace;
  }
  const double duration = total / config.speed;
  const double slack = 1e-9 * config.timestep;
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * config.timestep;
    if (t >= duration - slack) break;
    trace.push_back({t, jitter(point_at(path, cumulative, t * config.speed))});
  }
  trace.push_back({duration, jitter(path.target())});
  return trace;
}

}  // namespace

std::vector<Trace> simulate(std::span<const CandidatePath> paths, const SimConfig& config) {
  if (paths.empty()) throw std::invalid_argument("no paths to simulate");
  if (!(config.speed > 0.0) || !(config.timestep > 0.0))
    throw std::invalid_argument("speed and timestep must be positive");
  if (!(config.noise_sigma >= 0.0)) throw std::invalid_argument("noise sigma must be non-negative");

  const double step = config.speed * config.timestep;
  for (const auto& path : paths)
    for (std::size_t l = 0; l < path.segment_count(); ++l) {
      const double len = distance(path[l], path[l + 1]);
      if (len > 0.0 && step >= len)
        throw std::invalid_argument("speed * timestep must be smaller than the shortest segment");
    }

  std::vector<Trace> traces;
  traces.reserve(paths.size());
  for (std::size_t n = 0; n < paths.size(); ++n) traces.push_back(follow(paths[n], config, n));
  return traces;
}

PathErrorSeries path_error(const CandidatePath& planned, const Trace& flown) {
  if (flown.empty()) throw std::invalid_argument("flown trace is empty");
  PathErrorSeries out;
  out.per_waypoint.reserve(planned.size());
  double sum = 0.0;
  for (const auto& wp : planned.waypoints()) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : flown) best = std::min(best, distance(wp, s.position));
    out.per_waypoint.push_back(best);
    out.max = std::max(out.max, best);
    sum += best;
  }
  out.mean = sum / static_cast<double>(out.per_waypoint.size());
  return out;
}

}  // namespace formplan
