#pragma once

// Scenario files and the runner behind `bkalg run`.
//
// A scenario is a JSON object:
//
//   {
//     "space":      [{"atom_id": "w1", "weight": 1.0}, ...],
//     "bundle":     {"kind": "matrix", "n": 2}          (same fiber everywhere)
//                 | [descriptor, ...]                   (one per atom, in order)
//                 | {"w1": descriptor, ...}             (keyed by atom id),
//     "sections":   [{"name": "x", "values": {"w1": literal, ...}}, ...],
//     "parameters": {"tolerance": 1e-8, "samples": 500, "seed": 0, "cap": 4096},
//     "commands":   ["norms", {"command": "invert", "section": "x"}, ...]
//   }
//
// Command-line flags override "parameters", which override the defaults.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json_io.hpp"

namespace bkalg::tools {

struct Parameters {
  double tolerance = 1e-8;
  std::size_t samples = 500;
  std::uint64_t seed = 0;
  std::size_t cap = kDefaultEnumerationCap;
};

struct ParameterOverrides {
  std::optional<double> tolerance;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> cap;
};

struct NamedSection {
  std::string name;
  Section section;
};

struct Command {
  std::string name;
  io::Json args;     // the full command object
  std::string path;  // JSON path of the command, for messages
};

struct Scenario {
  SpacePtr space;
  BundlePtr bundle;
  std::vector<NamedSection> sections;
  Parameters parameters;
  std::vector<Command> commands;

  const Section& section(const std::string& name, const std::string& path) const;
};

inline constexpr const char* kCommandNames[] = {"norms",         "invert",        "perturb", "spectrum", "reconstruct",
                                                "gelfand-mazur", "reverse-bound", "verify",  "replay"};

/// Throws io::ParseError with the JSON path (and line/column for syntax errors).
Scenario parse_scenario(const io::Json& doc);
Scenario load_scenario(const std::filesystem::path& path);

Parameters resolve(const Parameters& from_file, const ParameterOverrides& flags);

struct CommandResult {
  std::string command;
  bool passed = true;
  io::Json result;
  double wall_ms = 0.0;
};

struct Report {
  Parameters parameters;
  std::vector<CommandResult> commands;
  bool passed() const noexcept;
};

/// Runs every command in order. Command i draws from the i-th generator split
/// off the seed. Failed preconditions become error entries in the report.
Report run(const Scenario& scenario, const Parameters& parameters);

/// Schema-1 JSON. `include_timing` = false drops the wall_ms fields.
io::Json to_json(const Report& report, bool include_timing = true);
std::string to_text(const Report& report);

}  // namespace bkalg::tools
