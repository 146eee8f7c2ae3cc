#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "formplan/environment.hpp"

namespace formplan {

/// Parses and validates a scenario document (YAML subset, schema in docs/scenario-format.md).
/// Throws ParseError (with line) on malformed text or unknown keys and
/// ValidationError when a domain invariant is violated.
Scenario load_scenario(std::istream& source);
Scenario load_scenario_text(std::string_view text);
/// Throws std::runtime_error if the file cannot be opened.
Scenario load_scenario_file(const std::filesystem::path& file);

/// Canonical text form. Numbers use the shortest round-trip representation,
/// so load_scenario_text(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& scenario);

/// 64-bit FNV-1a over the canonical text form.
std::uint64_t scenario_hash(const Scenario& scenario);
std::string scenario_hash_hex(const Scenario& scenario);

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

}  // namespace formplan
