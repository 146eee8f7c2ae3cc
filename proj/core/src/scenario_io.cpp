#include "formplan/scenario_io.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "formplan/errors.hpp"

namespace formplan {

namespace {

std::size_t line_of(const YAML::Node& node) {
  const auto mark = node.Mark();
  return mark.line >= 0 ? static_cast<std::size_t>(mark.line) + 1 : 0;
}

[[noreturn]] void fail(const YAML::Node& node, const std::string& what) {
  throw ParseError(what, line_of(node));
}

void expect_map(const YAML::Node& node, const std::string& key,
                const std::set<std::string>& allowed) {
  if (!node.IsMap()) fail(node, key + ": expected a mapping");
  for (const auto& entry : node) {
    const auto name = entry.first.Scalar();
    if (!allowed.contains(name))
      fail(entry.first, "unknown field '" + (key.empty() ? name : key + "." + name) + "'");
  }
}

YAML::Node require_field(const YAML::Node& parent, const std::string& key,
                         const std::string& name) {
  YAML::Node child = parent[name];
  if (!child) fail(parent, "missing field '" + key + "'");
  return child;
}

double to_double(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) fail(node, key + ": expected a number");
  const std::string& text = node.Scalar();
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) fail(node, key + ": '" + text + "' is not a number");
  if (!std::isfinite(value)) fail(node, key + ": value must be finite");
  return value;
}

std::uint64_t to_unsigned(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) fail(node, key + ": expected a non-negative integer");
  const std::string& text = node.Scalar();
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    fail(node, key + ": '" + text + "' is not a non-negative integer");
  return value;
}

Point3 to_point(const YAML::Node& node, const std::string& key) {
  if (!node.IsSequence() || node.size() != 3) fail(node, key + ": expected [x, y, z]");
  return {to_double(node[0], key + "[0]"), to_double(node[1], key + "[1]"),
          to_double(node[2], key + "[2]")};
}

Scenario from_yaml(const YAML::Node& root) {
  if (!root || root.IsNull()) throw ParseError("empty scenario document", 0);
  expect_map(root, "",
             {"operation_space", "start", "target", "obstacles", "formation", "altitude",
              "weights", "pso"});

  Scenario s;

  const auto space = require_field(root, "operation_space", "operation_space");
  expect_map(space, "operation_space", {"min", "max"});
  s.operation_space.min_corner =
      to_point(require_field(space, "operation_space.min", "min"), "operation_space.min");
  s.operation_space.max_corner =
      to_point(require_field(space, "operation_space.max", "max"), "operation_space.max");

  s.start = to_point(require_field(root, "start", "start"), "start");
  s.target = to_point(require_field(root, "target", "target"), "target");

  if (const auto obstacles = root["obstacles"]) {
    if (!obstacles.IsSequence() && !obstacles.IsNull()) fail(obstacles, "obstacles: expected a list");
    for (std::size_t k = 0; obstacles.IsSequence() && k < obstacles.size(); ++k) {
      const auto item = obstacles[k];
      const std::string key = "obstacles[" + std::to_string(k) + "]";
      expect_map(item, key, {"center", "radius", "height"});
      CylinderObstacle o;
      o.base_center = to_point(require_field(item, key + ".center", "center"), key + ".center");
      o.radius = to_double(require_field(item, key + ".radius", "radius"), key + ".radius");
      o.height = to_double(require_field(item, key + ".height", "height"), key + ".height");
      s.obstacles.push_back(o);
    }
  }

  const auto formation = require_field(root, "formation", "formation");
  expect_map(formation, "formation", {"offsets", "quad_radius", "frame"});
  const auto offsets_node = require_field(formation, "formation.offsets", "offsets");
  if (!offsets_node.IsSequence()) fail(offsets_node, "formation.offsets: expected a list");
  std::vector<Point3> offsets;
  for (std::size_t n = 0; n < offsets_node.size(); ++n)
    offsets.push_back(to_point(offsets_node[n], "formation.offsets[" + std::to_string(n) + "]"));
  const double quad_radius =
      to_double(require_field(formation, "formation.quad_radius", "quad_radius"),
                "formation.quad_radius");
  OffsetFrame frame = OffsetFrame::inertial;
  if (const auto f = formation["frame"]) {
    if (f.Scalar() == "formation")
      frame = OffsetFrame::formation;
    else if (f.Scalar() != "inertial")
      fail(f, "formation.frame: expected 'inertial' or 'formation'");
  }
  try {
    s.formation = FormationSpec(std::move(offsets), quad_radius, frame);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("formation: ") + e.what());
  }

  const auto altitude = require_field(root, "altitude", "altitude");
  expect_map(altitude, "altitude", {"min", "max"});
  s.altitude.min = to_double(require_field(altitude, "altitude.min", "min"), "altitude.min");
  s.altitude.max = to_double(require_field(altitude, "altitude.max", "max"), "altitude.max");

  if (const auto w = root["weights"]) {
    expect_map(w, "weights", {"length", "violation", "altitude"});
    if (w["length"]) s.weights.length = to_double(w["length"], "weights.length");
    if (w["violation"]) s.weights.violation = to_double(w["violation"], "weights.violation");
    if (w["altitude"]) s.weights.altitude = to_double(w["altitude"], "weights.altitude");
  }

  if (const auto p = root["pso"]) {
    expect_map(p, "pso",
               {"swarm_size", "waypoints", "inertia", "c1", "c2", "iterations", "init_spread", "seed",
                "variant", "convergence_window", "convergence_epsilon"});
    auto& c = s.pso;
    if (p["swarm_size"]) c.swarm_size = to_unsigned(p["swarm_size"], "pso.swarm_size");
    if (p["waypoints"]) c.free_waypoints = to_unsigned(p["waypoints"], "pso.waypoints");
    if (p["inertia"]) c.inertia = to_double(p["inertia"], "pso.inertia");
    if (p["c1"]) c.c1 = to_double(p["c1"], "pso.c1");
    if (p["c2"]) c.c2 = to_double(p["c2"], "pso.c2");
    if (p["iterations"]) c.iterations = to_unsigned(p["iterations"], "pso.iterations");
    if (p["init_spread"]) c.init_spread = to_double(p["init_spread"], "pso.init_spread");
    if (p["seed"]) c.seed = to_unsigned(p["seed"], "pso.seed");
    if (const auto v = p["variant"]) {
      const auto parsed = parse_variant(v.Scalar());
      if (!parsed) fail(v, "pso.variant: expected 'classic' or 'theta'");
      c.variant = *parsed;
    }
    if (p["convergence_window"])
      c.convergence_window = to_unsigned(p["convergence_window"], "pso.convergence_window");
    if (p["convergence_epsilon"])
      c.convergence_epsilon = to_double(p["convergence_epsilon"], "pso.convergence_epsilon");
  }

  s.validate();
  return s;
}

std::string fmt_point(const Point3& p) {
  return "[" + format_double(p.x) + ", " + format_double(p.y) + ", " + format_double(p.z) + "]";
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

Scenario load_scenario_text(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.msg, e.mark.line >= 0 ? static_cast<std::size_t>(e.mark.line) + 1 : 0);
  }
  return from_yaml(root);
}

Scenario load_scenario(std::istream& source) {
  std::ostringstream buffer;
  buffer << source.rdbuf();
  return load_scenario_text(buffer.str());
}

Scenario load_scenario_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open scenario file '" + file.string() + "'");
  return load_scenario(in);
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "operation_space:\n"
      << "  min: " << fmt_point(s.operation_space.min_corner) << "\n"
      << "  max: " << fmt_point(s.operation_space.max_corner) << "\n"
      << "start: " << fmt_point(s.start) << "\n"
      << "target: " << fmt_point(s.target) << "\n";
  if (s.obstacles.empty()) {
    out << "obstacles: []\n";
  } else {
    out << "obstacles:\n";
    for (const auto& o : s.obstacles)
      out << "  - center: " << fmt_point(o.base_center) << "\n"
          << "    radius: " << format_double(o.radius) << "\n"
          << "    height: " << format_double(o.height) << "\n";
  }
  out << "formation:\n  offsets:\n";
  for (const auto& o : s.formation.offsets()) out << "    - " << fmt_point(o) << "\n";
  out << "  quad_radius: " << format_double(s.formation.quad_radius()) << "\n"
      << "  frame: " << (s.formation.frame() == OffsetFrame::formation ? "formation" : "inertial")
      << "\n"
      << "altitude:\n"
      << "  min: " << format_double(s.altitude.min) << "\n"
      << "  max: " << format_double(s.altitude.max) << "\n"
      << "weights:\n"
      << "  length: " << format_double(s.weights.length) << "\n"
      << "  violation: " << format_double(s.weights.violation) << "\n"
      << "  altitude: " << format_double(s.weights.altitude) << "\n";
  const auto& c = s.pso;
  out << "pso:\n"
      << "  swarm_size: " << c.swarm_size << "\n"
      << "  waypoints: " << c.free_waypoints << "\n"
      << "  inertia: " << format_double(c.inertia) << "\n"
      << "  c1: " << format_double(c.c1) << "\n"
      << "  c2: " << format_double(c.c2) << "\n"
      << "  iterations: " << c.iterations << "\n"
      << "  init_spread: " << format_double(c.init_spread) << "\n"
      << "  seed: " << c.seed << "\n"
      << "  variant: " << to_string(c.variant) << "\n"
      << "  convergence_window: " << c.convergence_window << "\n"
      << "  convergence_epsilon: " << format_double(c.convergence_epsilon) << "\n";
  return out.str();
}

std::uint64_t scenario_hash(const Scenario& scenario) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : serialize_scenario(scenario)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string scenario_hash_hex(const Scenario& scenario) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(scenario_hash(scenario)));
  return buf;
}

}  // namespace formplan
