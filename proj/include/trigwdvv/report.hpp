#pragma once

// Command layer behind the `wdvv` executable: configuration, the five
// commands, and deterministic json / csv / markdown serialization.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "trigwdvv/rational.hpp"
#include "trigwdvv/rootsystems.hpp"

namespace trigwdvv {

inline constexpr const char* kSchemaVersion = "1";

enum class Command { table, verify, dunkl, gamma_scan, cpoly };
enum class HypothesisChoice { half, full, scan };
enum class OutputFormat { json, csv, md };

std::string to_string(Command c);
std::string to_string(HypothesisChoice h);
std::string to_string(OutputFormat f);

Command parse_command(const std::string& text);
HypothesisChoice parse_hypothesis(const std::string& text);
OutputFormat parse_format(const std::string& text);

struct RunConfig {
  Command command = Command::table;
  /// "all" or a single system name such as "B4".
  std::string system = "all";
  std::size_t samples = 10;
  std::uint64_t seed = 42;
  double margin = 0.2;
  double tolerance = 1e-9;
  HypothesisChoice hypothesis = HypothesisChoice::scan;
  /// Keys "short", "long" or "single"; missing orbits default to 1.
  std::map<std::string, Rational> multiplicities;
  OutputFormat format = OutputFormat::json;

  /// Throws UsageError for inconsistent values.
  void validate() const;
  std::vector<RootSystemSpec> systems() const;
};

/// Parses "short=2,long=3/2".
std::map<std::string, Rational> parse_multiplicities(const std::string& text);

/// Per-orbit weights for a system (orbit 0 first); single-orbit systems take
/// "single", falling back to "short".
std::vector<Rational> orbit_weights_for(const RootSystem& rs, const std::map<std::string, Rational>& k);

/// Rows for csv and markdown output.
struct TextTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  nlohmann::ordered_json json;
  TextTable csv;
  TextTable md;
  std::string md_title;
};

struct RunResult {
  int exit_code = 0;
  Report report;
};

RunResult run_table(const RunConfig& config);
RunResult run_verify(const RunConfig& config);
RunResult run_dunkl(const RunConfig& config);
RunResult run_gamma_scan(const RunConfig& config);
RunResult run_cpoly(const RunConfig& config);
RunResult run(const RunConfig& config);

std::string serialize(const Report& report, OutputFormat format);

/// 15 significant digits, as text.
std::string format_real(double x);

/// Worker threads for per-system work: TRIGWDVV_THREADS if set, else all cores.
unsigned worker_threads();

}  // namespace trigwdvv
