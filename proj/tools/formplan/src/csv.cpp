#include "formplan_cli/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "formplan/scenario_io.hpp"

namespace formplan::cli {

namespace {

constexpr const char* kPathColumns = "waypoint_index,x_m,y_m,z_m";

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& cell, const std::string& where) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (cell.empty() || ec != std::errc{} || ptr != last)
    throw InputError(where + ": '" + cell + "' is not a number");
  return value;
}

}  // namespace

Provenance provenance_of(const Scenario& scenario) {
  Provenance p;
  p.scenario_hash = scenario_hash_hex(scenario);
  p.seed = std::to_string(scenario.pso.seed);
  p.variant = std::string(to_string(scenario.pso.variant));
  p.weights = format_double(scenario.weights.length) + "," +
              format_double(scenario.weights.violation) + "," +
              format_double(scenario.weights.altitude);
  return p;
}

std::string fmt9(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

void write_provenance(std::ostream& out, const std::string& kind, const Provenance& p) {
  out << "# formplan " << kind << "\n"
      << "# scenario_hash: " << p.scenario_hash << "\n"
      << "# seed: " << p.seed << "\n"
      << "# variant: " << p.variant << "\n"
      << "# weights: " << p.weights << "\n";
  for (const auto& [key, value] : p.extra) out << "# " << key << ": " << value << "\n";
}

void write_path_csv(std::ostream& out, const Provenance& p, const CandidatePath& path) {
  write_provenance(out, "path", p);
  out << kPathColumns << "\n";
  for (std::size_t l = 0; l < path.size(); ++l)
    out << l << "," << fmt9(path[l].x) << "," << fmt9(path[l].y) << "," << fmt9(path[l].z) << "\n";
}

PathFile read_path_csv(std::istream& in, const std::string& source) {
  Provenance prov;
  std::vector<Point3> points;
  bool have_columns = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = source + ":" + std::to_string(line_no);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      const auto key = trim(line.substr(1, colon - 1));
      const auto value = trim(line.substr(colon + 1));
      if (key == "scenario_hash") prov.scenario_hash = value;
      else if (key == "seed") prov.seed = value;
      else if (key == "variant") prov.variant = value;
      else if (key == "weights") prov.weights = value;
      else prov.extra[key] = value;
      continue;
    }
    if (!have_columns) {
      if (line != kPathColumns)
        throw InputError(where + ": expected column row '" + std::string(kPathColumns) + "'");
      have_columns = true;
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != 4)
      throw InputError(where + ": expected 4 columns, found " + std::to_string(cells.size()));
    const double index = parse_cell(cells[0], where);
    if (index != static_cast<double>(points.size()))
      throw InputError(where + ": waypoint_index " + cells[0] + " out of sequence");
    const Point3 p{parse_cell(cells[1], where), parse_cell(cells[2], where),
                   parse_cell(cells[3], where)};
    if (!p.is_finite()) throw InputError(where + ": non-finite coordinate");
    points.push_back(p);
  }
  if (!have_columns) throw InputError(source + ": no path data");
  if (points.size() < 3)
    throw InputError(source + ": a path needs at least 3 waypoints, found " +
                     std::to_string(points.size()));
  return {prov, CandidatePath(std::move(points))};
}

PathFile read_path_csv_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw InputError("cannot open path file '" + file + "'");
  return read_path_csv(in, file);
}

}  // namespace formplan::cli
