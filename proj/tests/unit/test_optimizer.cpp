#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "formplan/optimizer.hpp"
#include "formplan/scenario_io.hpp"

using namespace formplan;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;
const std::string kFixtures = FORMPLAN_FIXTURE_DIR;

const OperationSpace kBox{{0, 10, 20}, {100, 60, 40}};

CoefficientSource fixed(double r1, double r2) {
  return [=] { return AttractionCoefficients{r1, r2}; };
}

PsoConfig gains(double w, double c1, double c2) {
  PsoConfig c;
  c.inertia = w;
  c.c1 = c1;
  c.c2 = c2;
  return c;
}

double sum_squares(std::span<const double> x) {
  double s = 0;
  for (double v : x) s += v * v;
  return s;
}

// Global minimum of the 1-D quadratic over a dense grid.
double grid_argmin(double lo, double hi, double target) {
  double best_x = lo, best = INFINITY;
  for (int i = 0; i <= 1000000; ++i) {
    const double x = lo + (hi - lo) * i / 1000000.0;
    const double f = (x - target) * (x - target);
    if (f < best) best = f, best_x = x;
  }
  return best_x;
}

}  // namespace

TEST(Decode, ZeroAnglesGiveBoxCenter) {
  const std::vector<double> angles(9, 0.0);
  const auto p = decode(angles, kBox, {0, 10, 30}, {100, 60, 30});
  ASSERT_EQ(p.size(), 5u);
  for (const auto& w : p.free_waypoints()) EXPECT_EQ(w, (Point3{50, 35, 30}));
}

TEST(Decode, HalfPiGivesMaxCorner) {
  const std::vector<double> angles(9, kHalfPi);
  const auto p = decode(angles, kBox, {0, 10, 30}, {100, 60, 30});
  for (const auto& w : p.free_waypoints()) EXPECT_EQ(w, kBox.max_corner);
}

TEST(Decode, AxesAreIndependent) {
  const std::vector<double> angles{-kHalfPi, -kHalfPi, 0, 0, kHalfPi, kHalfPi};
  const auto p = decode(angles, kBox, {0, 10, 30}, {100, 60, 30});
  for (const auto& w : p.free_waypoints()) EXPECT_EQ(w, (Point3{0, 35, 40}));
  EXPECT_EQ(p.start(), (Point3{0, 10, 30}));
  EXPECT_EQ(p.target(), (Point3{100, 60, 30}));
}

TEST(Decode, RejectsBadLength) {
  EXPECT_THROW(decode(std::vector<double>{}, kBox, {}, {}), std::invalid_argument);
  EXPECT_THROW(decode(std::vector<double>(4, 0.0), kBox, {}, {}), std::invalid_argument);
  EXPECT_THROW(decode_angles(std::vector<double>(2, 0.0), path_search_bounds(kBox, 1)),
               std::invalid_argument);
}

TEST(Decode, EncodeIsInverse) {
  const auto bounds = path_search_bounds(kBox, 4);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> a(-kHalfPi, kHalfPi);
  std::vector<double> angles(bounds.size());
  for (auto& x : angles) x = a(rng);
  const auto coords = decode_angles(angles, bounds);
  const auto back = encode_coordinates(coords, bounds);
  for (std::size_t j = 0; j < angles.size(); ++j) EXPECT_NEAR(back[j], angles[j], 1e-7);
  const auto again = decode_angles(back, bounds);
  for (std::size_t j = 0; j < angles.size(); ++j) EXPECT_NEAR(again[j], coords[j], 1e-9);
}

TEST(SearchBoundsLayout, BlocksPerAxis) {
  const auto b = path_search_bounds(kBox, 2);
  EXPECT_EQ(b.lower, (std::vector<double>{0, 0, 10, 10, 20, 20}));
  EXPECT_EQ(b.upper, (std::vector<double>{100, 100, 60, 60, 40, 40}));
}

TEST(CorridorSampler, InsideBoundsAndOrdered) {
  const auto bounds = path_search_bounds(kBox, 8);
  const Point3 start{0, 10, 30}, target{100, 60, 30};
  const auto sample = corridor_sampler(bounds, start, target, 0.3);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto x = sample(rng);
    ASSERT_EQ(x.size(), bounds.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      EXPECT_GE(x[j], bounds.lower[j]);
      EXPECT_LE(x[j], bounds.upper[j]);
    }
    const Point3 d = target - start;
    for (std::size_t l = 0; l + 1 < 8; ++l)
      EXPECT_LE(x[l] * d.x + x[8 + l] * d.y + x[16 + l] * d.z,
                x[l + 1] * d.x + x[8 + l + 1] * d.y + x[16 + l + 1] * d.z);
  }
  std::mt19937_64 a(3), b(3);
  EXPECT_EQ(sample(a), sample(b));
}

TEST(CorridorSampler, ZeroSpreadIsStraightLine) {
  const auto bounds = path_search_bounds(kBox, 3);
  std::mt19937_64 rng(1);
  const auto x = corridor_sampler(bounds, {0, 10, 30}, {100, 50, 30}, 0.0)(rng);
  EXPECT_DOUBLE_EQ(x[0], 25);
  EXPECT_DOUBLE_EQ(x[1], 50);
  EXPECT_DOUBLE_EQ(x[5], 40);
  EXPECT_DOUBLE_EQ(x[7], 30);
}

TEST(UniformCoefficients, InUnitInterval) {
  std::mt19937_64 rng(5);
  const auto draw = uniform_coefficients(rng);
  for (int i = 0; i < 1000; ++i) {
    const auto r = draw();
    EXPECT_GE(r.r1, 0.0);
    EXPECT_LT(r.r1, 1.0);
    EXPECT_GE(r.r2, 0.0);
    EXPECT_LT(r.r2, 1.0);
  }
}

TEST(StepTheta, ZeroGainsFreezeState) {
  const auto bounds = path_search_bounds(kBox, 2);
  std::mt19937_64 rng(1);
  auto swarm = init_theta_swarm(6, bounds, sum_squares, rng);
  const auto before = swarm;
  step_theta(swarm, bounds, gains(0, 0, 0), sum_squares, fixed(0.5, 0.5));
  for (std::size_t i = 0; i < swarm.particles.size(); ++i) {
    EXPECT_EQ(swarm.particles[i].angles, before.particles[i].angles);
    EXPECT_EQ(swarm.particles[i].best_cost, before.particles[i].best_cost);
  }
  EXPECT_EQ(swarm.global_best, before.global_best);
}

TEST(StepTheta, PureMomentumAdvancesThenClamps) {
  const SearchBounds bounds{{0}, {1}};
  ThetaSwarm swarm;
  swarm.particles.resize(2);
  for (auto& p : swarm.particles) {
    p.angles = {0.0};
    p.increments = {0.1};
    p.best_angles = {0.0};
    p.cost = p.best_cost = 0.0;
  }
  swarm.global_best = {0.0};
  swarm.global_best_cost = 0.0;
  const auto zero = [](std::span<const double>) { return 0.0; };
  for (int k = 1; k <= 20; ++k) {
    step_theta(swarm, bounds, gains(1, 0, 0), zero, fixed(1, 1));
    const double expected = std::min(0.1 * k, kHalfPi);
    EXPECT_NEAR(swarm.particles[0].angles[0], expected, 1e-12) << k;
  }
  EXPECT_EQ(swarm.particles[0].angles[0], kHalfPi);
  EXPECT_EQ(swarm.particles[0].increments[0], 0.0);
}

TEST(StepTheta, UnitCoefficientsMatchHandComputation) {
  const SearchBounds bounds{{0, 0}, {10, 10}};
  ThetaSwarm swarm;
  swarm.particles.resize(1);
  auto& p = swarm.particles[0];
  p.angles = {0.2, -0.3};
  p.increments = {0.05, 0.05};
  p.best_angles = {0.4, -0.1};
  p.cost = p.best_cost = 100.0;
  swarm.global_best = {-0.2, 0.5};
  swarm.global_best_cost = 1.0;
  const auto big = [](std::span<const double>) { return 1000.0; };
  step_theta(swarm, bounds, gains(0, 0.7, 0.4), big, fixed(1, 1));
  const double d0 = 0.7 * (0.4 - 0.2) + 0.4 * (-0.2 - 0.2);
  const double d1 = 0.7 * (-0.1 + 0.3) + 0.4 * (0.5 + 0.3);
  EXPECT_NEAR(p.increments[0], d0, 1e-15);
  EXPECT_NEAR(p.increments[1], d1, 1e-15);
  EXPECT_NEAR(p.angles[0], 0.2 + d0, 1e-15);
  EXPECT_NEAR(p.angles[1], -0.3 + d1, 1e-15);
  EXPECT_EQ(p.best_angles, (std::vector<double>{0.4, -0.1}));
  EXPECT_EQ(swarm.global_best_cost, 1.0);
}

TEST(StepTheta, AnglesAndIncrementsStayBounded) {
  const auto bounds = path_search_bounds(kBox, 5);
  std::mt19937_64 rng(4);
  auto swarm = init_theta_swarm(30, bounds, sum_squares, rng);
  const auto coeff = uniform_coefficients(rng);
  double last = swarm.global_best_cost;
  for (int k = 0; k < 300; ++k) {
    step_theta(swarm, bounds, gains(0.9, 2.0, 2.0), sum_squares, coeff);
    for (const auto& p : swarm.particles)
      for (std::size_t j = 0; j < p.angles.size(); ++j) {
        ASSERT_LE(std::abs(p.angles[j]), kHalfPi);
        ASSERT_LE(std::abs(p.increments[j]), kHalfPi);
      }
    ASSERT_LE(swarm.global_best_cost, last);
    last = swarm.global_best_cost;
  }
}

TEST(StepTheta, FindsOneDimensionalQuadraticMinimum) {
  const double lo = 0, hi = 50, target = 0.7 * hi;
  const double optimum = grid_argmin(lo, hi, target);
  const SearchBounds bounds{{lo}, {hi}};
  for (std::uint64_t seed : {1u, 2u, 3u, 17u}) {
    std::mt19937_64 rng(seed);
    const Objective f = [&](std::span<const double> x) { return (x[0] - target) * (x[0] - target); };
    auto swarm = init_theta_swarm(20, bounds, f, rng);
    const auto coeff = uniform_coefficients(rng);
    for (int k = 0; k < 200; ++k) step_theta(swarm, bounds, gains(0.7, 1.5, 1.5), f, coeff);
    const double x = decode_angles(swarm.global_best, bounds)[0];
    EXPECT_NEAR(x, optimum, 1e-3 * (hi - lo)) << seed;
  }
}

TEST(StepClassic, ZeroGainsFreezePositions) {
  const auto bounds = path_search_bounds(kBox, 2);
  std::mt19937_64 rng(1);
  auto swarm = init_classic_swarm(6, bounds, sum_squares, rng);
  const auto before = swarm;
  step_classic(swarm, bounds, gains(0, 0, 0), sum_squares, fixed(0.5, 0.5));
  for (std::size_t i = 0; i < swarm.particles.size(); ++i)
    EXPECT_EQ(swarm.particles[i].position, before.particles[i].position);
}

TEST(StepClassic, ParticleAtGlobalBestStays) {
  const SearchBounds bounds{{-5, -5}, {5, 5}};
  std::mt19937_64 rng(1);
  auto swarm = init_classic_swarm(1, bounds, sum_squares, rng);
  ASSERT_EQ(swarm.particles[0].position, swarm.global_best);
  const auto at = swarm.particles[0].position;
  const auto coeff = uniform_coefficients(rng);
  for (int k = 0; k < 10; ++k) step_classic(swarm, bounds, gains(0.7, 1.5, 1.5), sum_squares, coeff);
  EXPECT_EQ(swarm.particles[0].position, at);
}

TEST(StepClassic, FindsOneDimensionalQuadraticMinimum) {
  const double lo = 0, hi = 50, target = 0.7 * hi;
  const double optimum = grid_argmin(lo, hi, target);
  const SearchBounds bounds{{lo}, {hi}};
  const Objective f = [&](std::span<const double> x) { return (x[0] - target) * (x[0] - target); };
  for (std::uint64_t seed : {1u, 2u, 3u, 17u}) {
    std::mt19937_64 rng(seed);
    auto swarm = init_classic_swarm(20, bounds, f, rng);
    const auto coeff = uniform_coefficients(rng);
    for (int k = 0; k < 200; ++k) step_classic(swarm, bounds, gains(0.7, 1.5, 1.5), f, coeff);
    EXPECT_NEAR(swarm.global_best[0], optimum, 1e-3 * (hi - lo)) << seed;
  }
}

TEST(StepClassic, PositionsStayInBox) {
  const auto bounds = path_search_bounds(kBox, 5);
  std::mt19937_64 rng(4);
  auto swarm = init_classic_swarm(30, bounds, sum_squares, rng);
  const auto coeff = uniform_coefficients(rng);
  for (int k = 0; k < 100; ++k) {
    step_classic(swarm, bounds, gains(0.9, 2.0, 2.0), sum_squares, coeff);
    for (const auto& p : swarm.particles)
      for (std::size_t j = 0; j < p.position.size(); ++j) {
        ASSERT_GE(p.position[j], bounds.lower[j]);
        ASSERT_LE(p.position[j], bounds.upper[j]);
        ASSERT_LE(std::abs(p.velocity[j]), 0.5 * (bounds.upper[j] - bounds.lower[j]));
      }
  }
}

TEST(Convergence, Examples) {
  const std::vector<double> flat(10, 5.0);
  EXPECT_EQ(iterations_to_convergence(flat, 3, 1e-4), 0u);
  const std::vector<double> falling{10, 9, 8, 7, 6, 6, 6, 6, 6};
  EXPECT_EQ(iterations_to_convergence(falling, 3, 1e-4), 4u);
  EXPECT_EQ(iterations_to_convergence(falling, 20, 1e-4), 8u);
  const std::vector<double> never{10, 9, 8, 7};
  EXPECT_EQ(iterations_to_convergence(never, 2, 1e-4), 3u);
  const std::vector<double> with_inf{INFINITY, INFINITY, 4, 4, 4};
  EXPECT_EQ(iterations_to_convergence(with_inf, 2, 1e-4), 2u);
}

TEST(Median, OddEvenEmpty) {
  EXPECT_EQ(median({3, 1, 2}), 2.0);
  EXPECT_EQ(median({4, 1, 3, 2}), 2.5);
  EXPECT_THROW(median({}), std::invalid_argument);
}

class RunTest : public ::testing::Test {
 protected:
  static Scenario small() {
    Scenario s = load_scenario_file(kFixtures + "/obstacle_free.scn");
    s.pso.swarm_size = 30;
    s.pso.iterations = 80;
    return s;
  }
};

TEST_F(RunTest, SameSeedIsBitIdentical) {
  for (auto v : {Variant::theta, Variant::classic}) {
    Scenario s = small();
    s.pso.variant = v;
    const auto a = run(s), b = run(s);
    EXPECT_EQ(a.trace, b.trace);
    EXPECT_EQ(a.best_path, b.best_path);
    EXPECT_EQ(a.iterations_to_convergence, b.iterations_to_convergence);
  }
}

TEST_F(RunTest, TraceIsMonotoneAndReportComplete) {
  Scenario s = small();
  const auto r = run(s);
  ASSERT_EQ(r.trace.size(), s.pso.iterations + 1);
  for (std::size_t k = 1; k < r.trace.size(); ++k) EXPECT_LE(r.trace[k].total, r.trace[k - 1].total);
  EXPECT_EQ(r.trace.back(), r.best_cost);
  EXPECT_EQ(evaluate(r.best_path, s), r.best_cost);
  EXPECT_EQ(r.best_path.size(), s.pso.free_waypoints + 2);
  EXPECT_EQ(r.seed, s.pso.seed);
  EXPECT_LE(r.iterations_to_convergence, s.pso.iterations);
}

TEST_F(RunTest, ObstacleFreeNearStraightLine) {
  const Scenario s = load_scenario_file(kFixtures + "/obstacle_free.scn");
  const auto r = run(s);
  EXPECT_LE(r.best_cost.j1, 1.05 * distance(s.start, s.target));
  EXPECT_TRUE(r.best_cost.feasible());
}

TEST_F(RunTest, SeedsDiffer) {
  Scenario s = small();
  const auto a = run(s);
  s.pso.seed = 2;
  EXPECT_NE(run(s).trace, a.trace);
}

TEST_F(RunTest, CompareSingleRun) {
  const Scenario s = small();
  const auto t = compare(s, 1, 5);
  ASSERT_EQ(t.classic.reports.size(), 1u);
  ASSERT_EQ(t.theta.reports.size(), 1u);
  EXPECT_EQ(t.theta.min_cost, t.theta.max_cost);
  EXPECT_EQ(t.theta.min_cost, t.theta.reports[0].best_cost.total);
  EXPECT_EQ(t.classic.median_iterations, double(t.classic.reports[0].iterations_to_convergence));
  EXPECT_EQ(t.theta.reports[0].seed, 5u);
  Scenario direct = s;
  direct.pso.seed = 5;
  direct.pso.variant = Variant::classic;
  EXPECT_EQ(run(direct).trace, t.classic.reports[0].trace);
  EXPECT_THROW(compare(s, 0, 1), std::invalid_argument);
}

TEST(FeasibilityWarnings, StartInsideObstacle) {
  Scenario s = load_scenario_file(kFixtures + "/obstacle_free.scn");
  EXPECT_TRUE(feasibility_warnings(s).empty());
  s.obstacles.push_back({{41, 9, 0}, 2, 40});
  const auto w = feasibility_warnings(s);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_NE(w[0].find("start"), std::string::npos);
}
