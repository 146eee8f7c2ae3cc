#include "formplan_cli/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>

#include "formplan/cost.hpp"
#include "formplan/errors.hpp"
#include "formplan/formation.hpp"
#include "formplan/optimizer.hpp"
#include "formplan/scenario_io.hpp"
#include "formplan/simtrack.hpp"
#include "formplan_cli/csv.hpp"

namespace formplan::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct PsoOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> variant;
  std::optional<std::size_t> swarm_size;
  std::optional<std::size_t> waypoints;
  std::optional<std::size_t> iterations;
  std::optional<double> inertia;
  std::optional<double> c1;
  std::optional<double> c2;
  std::optional<double> init_spread;
};

void add_pso_flags(CLI::App* cmd, PsoOverrides& o, bool with_seed_and_variant) {
  if (with_seed_and_variant) {
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_option("--variant", o.variant, "Optimizer variant")
        ->check(CLI::IsMember({"theta", "classic"}));
  }
  cmd->add_option("--swarm-size", o.swarm_size, "Particles per swarm");
  cmd->add_option("--waypoints", o.waypoints, "Free waypoints per path");
  cmd->add_option("--iterations", o.iterations, "Iteration budget");
  cmd->add_option("--inertia", o.inertia, "Inertia weight w");
  cmd->add_option("--c1", o.c1, "Personal-best gain");
  cmd->add_option("--c2", o.c2, "Global-best gain");
  cmd->add_option("--init-spread", o.init_spread, "Initial scatter, fraction of axis range");
}

Scenario load(const std::string& file) {
  try {
    return load_scenario_file(file);
  } catch (const ParseError& e) {
    throw InputError(file + ": " + e.what());
  } catch (const ValidationError& e) {
    throw InputError(file + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
}

void apply(Scenario& s, const PsoOverrides& o) {
  auto& c = s.pso;
  if (o.seed) c.seed = *o.seed;
  if (o.variant) c.variant = *parse_variant(*o.variant);
  if (o.swarm_size) c.swarm_size = *o.swarm_size;
  if (o.waypoints) c.free_waypoints = *o.waypoints;
  if (o.iterations) c.iterations = *o.iterations;
  if (o.inertia) c.inertia = *o.inertia;
  if (o.c1) c.c1 = *o.c1;
  if (o.c2) c.c2 = *o.c2;
  if (o.init_spread) c.init_spread = *o.init_spread;
  try {
    s.validate();
  } catch (const ValidationError& e) {
    throw InputError(e.what());
  }
}

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory '" + dir + "': " + ec.message());
  return dir;
}

void write_file(const fs::path& file, const std::function<void(std::ostream&)>& body,
                std::ostream& out) {
  std::ofstream f(file, std::ios::binary);
  if (!f) throw InputError("cannot write '" + file.string() + "'");
  body(f);
  f.flush();
  if (!f) throw InputError("write failed for '" + file.string() + "'");
  out << "wrote " << file.string() << "\n";
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json cost_json(const CostBreakdown& c) {
  return {{"total", c.total}, {"j1", c.j1}, {"j2", c.j2}, {"j3", c.j3}, {"feasible", c.feasible()}};
}

json pso_json(const PsoConfig& c) {
  return {{"swarm_size", c.swarm_size},
          {"waypoints", c.free_waypoints},
          {"inertia", c.inertia},
          {"c1", c.c1},
          {"c2", c.c2},
          {"iterations", c.iterations},
          {"init_spread", c.init_spread},
          {"seed", c.seed},
          {"variant", std::string(to_string(c.variant))},
          {"convergence_window", c.convergence_window},
          {"convergence_epsilon", c.convergence_epsilon}};
}

json line_feature(const CandidatePath& path, json properties) {
  json coords = json::array();
  for (const auto& p : path.waypoints()) coords.push_back({p.x, p.y, p.z});
  return {{"type", "Feature"},
          {"geometry", {{"type", "LineString"}, {"coordinates", coords}}},
          {"properties", std::move(properties)}};
}

void write_convergence_csv(std::ostream& f, Provenance prov, const RunReport& report,
                           const PsoConfig& config) {
  prov.extra["convergence_window"] = std::to_string(config.convergence_window);
  prov.extra["convergence_epsilon"] = format_double(config.convergence_epsilon);
  prov.extra["iterations_to_convergence"] = std::to_string(report.iterations_to_convergence);
  write_provenance(f, "convergence", prov);
  f << "iteration,best_total,j1,j2,j3\n";
  for (std::size_t k = 0; k < report.trace.size(); ++k) {
    const auto& c = report.trace[k];
    f << k << "," << fmt9(c.total) << "," << fmt9(c.j1) << "," << fmt9(c.j2) << ","
      << fmt9(c.j3) << "\n";
  }
}

int cmd_plan(const std::string& scenario_file, const PsoOverrides& overrides,
             const std::string& out_dir, std::ostream& out, std::ostream& err) {
  Scenario s = load(scenario_file);
  apply(s, overrides);
  const auto dir = prepare_dir(out_dir);
  const auto started = utc_now();
  const RunReport report = run(s);
  const auto finished = utc_now();
  for (const auto& w : report.warnings) err << "warning: " << w << "\n";

  const auto prov = provenance_of(s);
  const auto& c = report.best_cost;
  out << "variant " << to_string(s.pso.variant) << ", seed " << s.pso.seed << "\n"
      << "best cost " << fmt9(c.total) << " (J1 " << fmt9(c.j1) << ", J2 " << fmt9(c.j2)
      << ", J3 " << fmt9(c.j3) << ")" << (c.feasible() ? ", feasible" : ", INFEASIBLE") << "\n"
      << "converged at iteration " << report.iterations_to_convergence << " of "
      << s.pso.iterations << "\n";

  write_file(dir / "path.csv", [&](std::ostream& f) { write_path_csv(f, prov, report.best_path); },
             out);
  write_file(dir / "convergence.csv",
             [&](std::ostream& f) { write_convergence_csv(f, prov, report, s.pso); }, out);

  json features = json::array();
  features.push_back(line_feature(report.best_path, {{"role", "centroid"},
                                                     {"scenario_hash", prov.scenario_hash},
                                                     {"seed", s.pso.seed},
                                                     {"variant", prov.variant},
                                                     {"cost", cost_json(c)}}));
  const auto uav_paths = derive_paths(report.best_path, s.formation);
  for (std::size_t n = 0; n < uav_paths.size(); ++n)
    features.push_back(line_feature(uav_paths[n], {{"role", "uav"}, {"uav_index", n + 1}}));
  const json geo = {
      {"type", "FeatureCollection"},
      {"crs", {{"type", "name"}, {"properties", {{"name", "LOCAL_METERS"}}}}},
      {"crs_note",
       "Coordinates are x, y, z in meters in the scenario's local frame, not WGS84 degrees."},
      {"features", features}};
  write_file(dir / "path.geojson", [&](std::ostream& f) { f << geo.dump(2) << "\n"; }, out);

  const json meta = {{"command", "plan"},
                     {"scenario_file", scenario_file},
                     {"scenario_hash", prov.scenario_hash},
                     {"weights",
                      {{"length", s.weights.length},
                       {"violation", s.weights.violation},
                       {"altitude", s.weights.altitude}}},
                     {"pso", pso_json(s.pso)},
                     {"started_utc", started},
                     {"finished_utc", finished},
                     {"wall_seconds", report.wall_seconds},
                     {"iterations_to_convergence", report.iterations_to_convergence},
                     {"best_cost", cost_json(c)},
                     {"warnings", report.warnings}};
  write_file(dir / "run.json", [&](std::ostream& f) { f << meta.dump(2) << "\n"; }, out);
  return kSuccess;
}

struct ReferenceRow {
  const char* variant;
  double min_cost;
  double max_cost;
  double iterations;
};
constexpr ReferenceRow kReported[] = {{"classic", 112.43, 143.0, 102},
                                      {"theta", 111.02, 142.84, 68}};

int cmd_compare(const std::string& scenario_file, const PsoOverrides& overrides,
                std::size_t runs, std::optional<std::uint64_t> base_seed,
                const std::string& out_dir, std::ostream& out) {
  if (runs == 0) throw InputError("--runs must be at least 1");
  Scenario s = load(scenario_file);
  apply(s, overrides);
  const std::uint64_t base = base_seed.value_or(s.pso.seed);
  const auto dir = prepare_dir(out_dir);
  const ComparisonTable table = compare(s, runs, base);

  auto prov = provenance_of(s);
  prov.seed = std::to_string(base) + ".." + std::to_string(base + runs - 1);
  prov.variant = "classic,theta";
  prov.extra["convergence_window"] = std::to_string(s.pso.convergence_window);
  prov.extra["convergence_epsilon"] = format_double(s.pso.convergence_epsilon);

  const VariantSummary* rows[] = {&table.classic, &table.theta};
  out << std::left << std::setw(10) << "variant" << std::setw(6) << "runs" << std::setw(12)
      << "min_cost" << std::setw(12) << "max_cost" << std::setw(13) << "median_cost"
      << std::setw(13) << "median_iter"
      << "feasible\n";
  for (const auto* r : rows)
    out << std::setw(10) << to_string(r->variant) << std::setw(6) << r->runs << std::setw(12)
        << fmt9(r->min_cost) << std::setw(12) << fmt9(r->max_cost) << std::setw(13)
        << fmt9(r->median_cost) << std::setw(13) << fmt9(r->median_iterations)
        << r->feasible_runs << "/" << r->runs << "\n";
  out << "\nreference (paper-reported, different instance):\n";
  for (const auto& r : kReported)
    out << std::setw(10) << r.variant << std::setw(6) << "-" << std::setw(12) << fmt9(r.min_cost)
        << std::setw(12) << fmt9(r.max_cost) << std::setw(13) << "-" << std::setw(13)
        << fmt9(r.iterations) << "-\n";
  out << std::right;

  write_file(dir / "compare.csv",
             [&](std::ostream& f) {
               write_provenance(f, "compare", prov);
               f << "variant,runs,min_cost,max_cost,median_cost,median_iterations,feasible_runs\n";
               for (const auto* r : rows)
                 f << to_string(r->variant) << "," << r->runs << "," << fmt9(r->min_cost) << ","
                   << fmt9(r->max_cost) << "," << fmt9(r->median_cost) << ","
                   << fmt9(r->median_iterations) << "," << r->feasible_runs << "\n";
             },
             out);
  write_file(dir / "compare_runs.csv",
             [&](std::ostream& f) {
               write_provenance(f, "compare runs", prov);
               f << "variant,seed,best_total,j1,j2,j3,iterations_to_convergence\n";
               for (const auto* r : rows)
                 for (const auto& rep : r->reports)
                   f << to_string(rep.variant) << "," << rep.seed << ","
                     << fmt9(rep.best_cost.total) << "," << fmt9(rep.best_cost.j1) << ","
                     << fmt9(rep.best_cost.j2) << "," << fmt9(rep.best_cost.j3) << ","
                     << rep.iterations_to_convergence << "\n";
             },
             out);
  return kSuccess;
}

bool same_point(const Point3& a, const Point3& b) {
  const auto close = [](double x, double y) {
    return std::abs(x - y) <= 1e-8 * std::max(1.0, std::abs(y));
  };
  return close(a.x, b.x) && close(a.y, b.y) && close(a.z, b.z);
}

int cmd_derive(const std::string& path_csv, const std::string& scenario_file, bool audit,
               const std::string& out_dir, std::ostream& out, std::ostream& err) {
  const Scenario s = load(scenario_file);
  const PathFile centroid = read_path_csv_file(path_csv);
  if (!same_point(centroid.path.start(), s.start) || !same_point(centroid.path.target(), s.target))
    throw InputError(path_csv + ": path endpoints do not match the scenario start and target");
  const auto scenario_hash = scenario_hash_hex(s);
  if (centroid.provenance.scenario_hash != "unknown" &&
      centroid.provenance.scenario_hash != scenario_hash)
    err << "warning: " << path_csv << " was planned for scenario " << centroid.provenance.scenario_hash
        << ", deriving with " << scenario_hash << "\n";

  const auto dir = prepare_dir(out_dir);
  const auto paths = derive_paths(centroid.path, s.formation);
  for (std::size_t n = 0; n < paths.size(); ++n) {
    Provenance prov = centroid.provenance;
    prov.scenario_hash = scenario_hash;
    prov.extra.clear();
    const auto& d = s.formation.offsets()[n];
    prov.extra["uav_index"] = std::to_string(n + 1);
    prov.extra["offset_m"] = fmt9(d.x) + "," + fmt9(d.y) + "," + fmt9(d.z);
    write_file(dir / ("uav_" + std::to_string(n + 1) + ".csv"),
               [&](std::ostream& f) { write_path_csv(f, prov, paths[n]); }, out);
  }

  if (audit) {
    const double inflation = s.formation.quad_radius();
    for (std::size_t n = 0; n < paths.size(); ++n) {
      const double j2 = violation_cost(paths[n], s.obstacles, inflation);
      out << "audit uav " << n + 1 << ": J2 = " << fmt9(j2) << (j2 == 0.0 ? " (clear)" : " (VIOLATION)")
          << "\n";
    }
  }
  return kSuccess;
}

struct SimFlags {
  double speed = SimConfig{}.speed;
  double timestep = SimConfig{}.timestep;
  double noise = SimConfig{}.noise_sigma;
  std::uint64_t seed = SimConfig{}.seed;
};

int cmd_simulate(const std::vector<std::string>& files, const SimFlags& flags,
                 const std::string& out_dir, std::ostream& out) {
  std::vector<PathFile> inputs;
  for (const auto& file : files) inputs.push_back(read_path_csv_file(file));
  std::vector<CandidatePath> paths;
  for (const auto& in : inputs) paths.push_back(in.path);

  const SimConfig config{flags.speed, flags.timestep, flags.noise, flags.seed};
  const auto traces = simulate(paths, config);
  const auto dir = prepare_dir(out_dir);

  Provenance prov = inputs.front().provenance;
  prov.extra.clear();
  prov.extra["speed_mps"] = fmt9(config.speed);
  prov.extra["timestep_s"] = fmt9(config.timestep);
  prov.extra["noise_sigma_m"] = fmt9(config.noise_sigma);
  prov.extra["sim_seed"] = std::to_string(config.seed);

  write_file(dir / "trace.csv",
             [&](std::ostream& f) {
               write_provenance(f, "trace", prov);
               f << "time_s,uav_index,x,y,z\n";
               for (std::size_t n = 0; n < traces.size(); ++n)
                 for (const auto& smp : traces[n])
                   f << fmt9(smp.time) << "," << n + 1 << "," << fmt9(smp.position.x) << ","
                     << fmt9(smp.position.y) << "," << fmt9(smp.position.z) << "\n";
             },
             out);

  std::vector<PathErrorSeries> errors;
  for (std::size_t n = 0; n < traces.size(); ++n) errors.push_back(path_error(paths[n], traces[n]));
  write_file(dir / "errors.csv",
             [&](std::ostream& f) {
               write_provenance(f, "path error", prov);
               f << "uav_index,waypoint_index,error_m\n";
               for (std::size_t n = 0; n < errors.size(); ++n)
                 for (std::size_t l = 0; l < errors[n].per_waypoint.size(); ++l)
                   f << n + 1 << "," << l << "," << fmt9(errors[n].per_waypoint[l]) << "\n";
             },
             out);
  for (std::size_t n = 0; n < errors.size(); ++n)
    out << "uav " << n + 1 << " (" << files[n] << "): max error " << fmt9(errors[n].max)
        << " m, mean " << fmt9(errors[n].mean) << " m\n";
  return kSuccess;
}

int cmd_validate(const std::string& scenario_file, std::ostream& out, std::ostream& err) {
  const Scenario s = load(scenario_file);
  std::vector<std::string> warnings;
  const auto band_check = [&](const Point3& p, const char* name) {
    if (p.z < s.altitude.min || p.z > s.altitude.max)
      warnings.push_back(std::string(name) + " altitude " + fmt9(p.z) + " m is outside the band [" +
                         fmt9(s.altitude.min) + ", " + fmt9(s.altitude.max) + "]");
  };
  band_check(s.start, "start");
  band_check(s.target, "target");
  for (auto& w : feasibility_warnings(s)) warnings.push_back(std::move(w));

  out << scenario_file << ": ok\n"
      << "scenario_hash " << scenario_hash_hex(s) << "\n"
      << "obstacles " << s.obstacles.size() << ", uavs " << s.formation.uav_count()
      << ", formation radius " << fmt9(s.formation.radius()) << " m, search dimensions "
      << s.pso.dimensions() << "\n";
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  return kSuccess;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Formation path planner: plan, compare, derive, simulate, validate", "formplan"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "formplan 0.1.0");

  std::string scenario_file, path_csv, out_dir = ".";
  PsoOverrides overrides;

  auto* plan = app.add_subcommand("plan", "Optimize the centroid path of a scenario");
  plan->add_option("scenario", scenario_file, "Scenario file")->required();
  plan->add_option("-o,--out-dir", out_dir, "Output directory");
  add_pso_flags(plan, overrides, true);

  std::size_t runs = 20;
  std::optional<std::uint64_t> base_seed;
  auto* cmp = app.add_subcommand("compare", "Run both variants over consecutive seeds");
  cmp->add_option("scenario", scenario_file, "Scenario file")->required();
  cmp->add_option("--runs", runs, "Runs per variant")->capture_default_str();
  cmp->add_option("--base-seed", base_seed, "First seed (default: the scenario seed)");
  cmp->add_option("-o,--out-dir", out_dir, "Output directory");
  add_pso_flags(cmp, overrides, false);

  bool audit = false;
  auto* derive = app.add_subcommand("derive", "Per-UAV paths from a centroid path CSV");
  derive->add_option("path_csv", path_csv, "Centroid path CSV")->required();
  derive->add_option("scenario", scenario_file, "Scenario file")->required();
  derive->add_flag("--audit", audit, "Report obstacle violation of each UAV path");
  derive->add_option("-o,--out-dir", out_dir, "Output directory");

  std::vector<std::string> uav_files;
  SimFlags sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Fly path CSVs with a kinematic follower");
  simulate_cmd->add_option("paths", uav_files, "Path CSVs, one per UAV")->required();
  simulate_cmd->add_option("--speed", sim.speed, "m/s")->capture_default_str();
  simulate_cmd->add_option("--timestep", sim.timestep, "s")->capture_default_str();
  simulate_cmd->add_option("--noise", sim.noise, "Position noise sigma, m")->capture_default_str();
  simulate_cmd->add_option("--seed", sim.seed, "Noise seed")->capture_default_str();
  simulate_cmd->add_option("-o,--out-dir", out_dir, "Output directory");

  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("scenario", scenario_file, "Scenario file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*plan) return cmd_plan(scenario_file, overrides, out_dir, out, err);
    if (*cmp) return cmd_compare(scenario_file, overrides, runs, base_seed, out_dir, out);
    if (*derive) return cmd_derive(path_csv, scenario_file, audit, out_dir, out, err);
    if (*simulate_cmd) return cmd_simulate(uav_files, sim, out_dir, out);
    if (*validate) return cmd_validate(scenario_file, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kUsageError;
}

}  // namespace formplan::cli
