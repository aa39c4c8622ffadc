#pragma once

#include "metrobound/collective_ops.hpp"
#include "metrobound/records.hpp"
#include "metrobound/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace metrobound {

enum class Command { Bounds, Fig2a, Fig2b, Fig3, Fig4, Fig5, Fig6, Fig7 };
enum class OutputFormat { Csv, Json };

Command parse_command(const std::string& name);
std::string to_string(Command command);
OutputFormat parse_format(const std::string& name);

struct RunConfig {
  Command command = Command::Bounds;
  /// Integer grids: "5", "3..9", "4,6,10", or "10..100000000@29" (log-spaced).
  /// Empty selects the command's default.
  std::string n;
  std::string k;
  Axis axis = Axis::z();
  std::optional<Axis> axis_b;
  std::optional<double> eta;
  std::optional<double> lambda1;
  std::optional<double> lambda2;
  std::vector<double> mu;
  std::int64_t samples = 10000;
  int starts = 200;
  int grid = 201;
  /// fig5: "zero" (lambda2 = 0) or "equal" (lambda1 = lambda2).
  std::string split = "zero";
  std::uint64_t seed = kDefaultSeed;
  OutputFormat format = OutputFormat::Csv;
  std::string out;
  int full_space_cap = 12;
};

/// Parses the integer grid syntax of RunConfig::n; throws DomainError when empty or malformed.
std::vector<int> parse_int_grid(const std::string& text);

/// Fixed CSV column order per command.
const std::vector<std::string>& command_header(Command command);

struct CommandOutcome {
  std::size_t rows = 0;
  std::size_t failed_rows = 0;
  /// Detection sweeps only: rows per region label.
  std::map<std::string, std::size_t> region_counts;

  int exit_code() const { return failed_rows == 0 ? 0 : 1; }
};

/// Runs the command and streams its records to `os` in the configured format.
CommandOutcome run_command(const RunConfig& config, std::ostream& os);

/// Runs the command and returns every record (in output order).
std::vector<SweepRecord> command_records(const RunConfig& config);

}  // namespace metrobound
