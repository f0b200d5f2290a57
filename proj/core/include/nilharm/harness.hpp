#pragma once

// Batch verification driver: an ordered registry of identity checks, each
// emitting report lines, plus JSON-lines and CSV serialisation.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace nilharm {

enum class ReportFormat { Jsonl, Csv };

enum ExitCode : int {
  kExitPass = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitIo = 3,
};

/// Unset optionals select each check's built-in defaults.
struct RunConfig {
  std::optional<std::string> group;  // "N" or "S"
  std::optional<int> m;
  std::optional<std::size_t> grid;      // points per axis
  std::optional<double> half_width;
  std::optional<double> tolerance;      // replaces every tolerance
  std::optional<std::size_t> points;    // random samples per check
  std::optional<std::string> op;        // operator expression
  std::optional<double> epsilon;
  std::optional<std::size_t> dictionary_size;
  std::optional<std::size_t> probes;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string output;                   // empty: no file
  ReportFormat format = ReportFormat::Jsonl;
};

using ParamValue = std::variant<std::int64_t, double, std::string>;
using Params = std::vector<std::pair<std::string, ParamValue>>;

struct ReportLine {
  std::string check;
  Params params;
  std::string metric;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;  // value <= tolerance
  bool gating = true;
  double wall_time = 0.0;
};

/// Registered checks in execution order.
const std::vector<std::string>& check_names();
bool is_check(std::string_view name);

/// Validates group, m and the numeric overrides; throws InvalidArgument.
void validate(const RunConfig& config);

/// Runs one registered check; throws InvalidArgument for an unknown name.
std::vector<ReportLine> run_check(std::string_view name, const RunConfig& config);

struct SuiteResult {
  std::vector<ReportLine> lines;
  int exit_code = kExitPass;
};

/// Runs `selection` ("all" or one check name) and streams each line to
/// `stream` in the configured format. When config.output is set the report is
/// written there and, for JSON lines, a CSV summary with wall times goes to
/// output + ".summary.csv". Exit code is kExitFailure iff a gating line fails.
SuiteResult run_suite(const RunConfig& config, std::string_view selection = "all",
                      std::ostream* stream = nullptr);

/// {"schema":1,"check":..,"params":{..},"metric":..,"value":..,"tolerance":..,
/// "pass":..,"gating":..}; wall time is left out so reports are reproducible.
std::string to_jsonl(const ReportLine& line);
std::string csv_header();
std::string to_csv(const ReportLine& line);

}  // namespace nilharm
