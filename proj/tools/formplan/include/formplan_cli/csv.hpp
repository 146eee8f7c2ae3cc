#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "formplan/environment.hpp"
#include "formplan/path.hpp"

namespace formplan::cli {

/// Bad command-line input: unreadable file, malformed CSV, inconsistent arguments.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The `# key: value` lines at the top of every output file.
struct Provenance {
  std::string scenario_hash = "unknown";
  std::string seed = "unknown";
  std::string variant = "unknown";
  std::string weights = "unknown";
  std::map<std::string, std::string> extra;
};

Provenance provenance_of(const Scenario& scenario);

/// 9 significant digits, shortest form.
std::string fmt9(double value);

void write_provenance(std::ostream& out, const std::string& kind, const Provenance& p);

/// Writes provenance, the column row and one row per waypoint.
void write_path_csv(std::ostream& out, const Provenance& p, const CandidatePath& path);

struct PathFile {
  Provenance provenance;
  CandidatePath path;
};

/// Reads a path CSV. Errors name the source and the 1-based line.
PathFile read_path_csv(std::istream& in, const std::string& source);
PathFile read_path_csv_file(const std::string& file);

}  // namespace formplan::cli
