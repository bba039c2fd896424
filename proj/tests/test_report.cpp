#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "trigwdvv/errors.hpp"
#include "trigwdvv/report.hpp"

using namespace trigwdvv;

namespace {

RunConfig config_for(Command command, const std::string& system) {
  RunConfig c;
  c.command = command;
  c.system = system;
  return c;
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("defaults and parsing") {
  const RunConfig c;
  CHECK(c.samples == 10);
  CHECK(c.seed == 42);
  CHECK(c.margin == 0.2);
  CHECK(c.tolerance == 1e-9);
  CHECK(c.hypothesis == HypothesisChoice::scan);
  CHECK(c.format == OutputFormat::json);
  CHECK(c.systems().size() == 25);

  CHECK(parse_command("gamma-scan") == Command::gamma_scan);
  CHECK(to_string(Command::gamma_scan) == "gamma-scan");
  CHECK(parse_hypothesis("full") == HypothesisChoice::full);
  CHECK(parse_format("md") == OutputFormat::md);
  CHECK_THROWS_AS(parse_command("plot"), UsageError);
  CHECK_THROWS_AS(parse_format("xml"), UsageError);

  const auto k = parse_multiplicities("short=2,long=3/2");
  CHECK(k.at("short") == 2);
  CHECK(k.at("long") == Rational(3, 2));
  CHECK_THROWS_AS(parse_multiplicities("medium=2"), UsageError);
  CHECK_THROWS_AS(parse_multiplicities("short"), UsageError);
  CHECK_THROWS_AS(parse_multiplicities("short=x"), UsageError);

  const RootSystem b2 = build_root_system({Family::B, 2});
  CHECK(orbit_weights_for(b2, k) == std::vector<Rational>{Rational(2), Rational(3, 2)});
  const RootSystem a2 = build_root_system({Family::A, 2});
  CHECK(orbit_weights_for(a2, k) == std::vector<Rational>{Rational(2)});
  CHECK(orbit_weights_for(a2, {}) == std::vector<Rational>{Rational(1)});

  RunConfig bad;
  bad.samples = 0;
  CHECK_THROWS_AS(bad.validate(), UsageError);
  bad = RunConfig{};
  bad.margin = -1;
  CHECK_THROWS_AS(bad.validate(), UsageError);
  bad = RunConfig{};
  bad.system = "D2";
  CHECK_THROWS_AS(bad.validate(), UsageError);

  CHECK(format_real(1e-9) == "1e-09");
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(1.0 / 3.0) == "0.333333333333333");
}

TEST_CASE("table command") {
  const RunResult r = run(config_for(Command::table, "all"));
  CHECK(r.exit_code == 0);
  const auto& j = r.report.json;
  CHECK(j["schema_version"] == "1");
  CHECK(j["command"] == "table");
  CHECK(j["records"].size() == 25);
  CHECK(j["summary"]["all_proportionality_residuals_zero"] == true);
  const auto& cross = j["summary"]["cross_checks"][0];
  CHECK(cross["oracle_equal"] == true);
  CHECK(cross["table_consistent"] == false);
  CHECK(cross["inconsistent_entries"] == nlohmann::ordered_json::array({"A3"}));
  for (const auto& rec : j["records"]) {
    if (rec["system"] == "C2") CHECK(rec["c_oracle"] == "32/1");
    if (rec["system"] == "B4") CHECK(rec["c_table"] == "20/1");
    if (rec["system"] == "G2") CHECK(rec["verdict"] == "no_table_entry");
  }

  const std::string md = serialize(r.report, OutputFormat::md);
  CHECK(md.find("| system | c_oracle | c_table | verdict | residual |") != std::string::npos);
  const std::string csv = serialize(r.report, OutputFormat::csv);
  CHECK(csv.rfind("system,c_oracle,c_table,verdict,residual\n", 0) == 0);
  CHECK(line_count(csv) == 26);
}

TEST_CASE("verify command exit codes") {
  RunConfig c = config_for(Command::verify, "B2");
  c.hypothesis = HypothesisChoice::half;
  CHECK(run(c).exit_code == 0);
  c.hypothesis = HypothesisChoice::full;
  CHECK(run(c).exit_code == 1);

  c.hypothesis = HypothesisChoice::scan;
  c.samples = 2;
  const RunResult scan = run(c);
  CHECK(scan.exit_code == 0);
  CHECK(scan.report.json["summary"]["alternatives_definitively_fail"] == true);
  // one csv row per (system, point, pair): 2 points x 3 slice pairs
  CHECK(line_count(serialize(scan.report, OutputFormat::csv)) == 1 + 6);

  const RunResult a1 = run(config_for(Command::verify, "A1"));
  CHECK(a1.exit_code == 0);
  CHECK(a1.report.json["records"][0]["note"] == "rank 1: WDVV vacuous");

  RunConfig k = config_for(Command::verify, "B2");
  k.multiplicities = parse_multiplicities("short=2,long=3");
  const RunResult weighted = run(k);
  CHECK(weighted.exit_code == 0);
  CHECK(weighted.report.json["records"][0]["c"] == "24/1");

  CHECK_THROWS_AS(run(config_for(Command::gamma_scan, "A1")), DegenerateRank);
}

TEST_CASE("other commands") {
  const RunResult scan = run(config_for(Command::gamma_scan, "all"));
  CHECK(scan.exit_code == 0);
  CHECK(scan.report.json["summary"]["consistent_hypothesis"] == "half");

  RunConfig d = config_for(Command::dunkl, "F4");
  d.samples = 2;
  const RunResult dunkl = run(d);
  CHECK(dunkl.exit_code == 0);
  CHECK(dunkl.report.json["records"][0]["outcome"] == "fiberwise");

  const RunResult cpoly = run(config_for(Command::cpoly, "B2"));
  CHECK(cpoly.exit_code == 0);
  CHECK(cpoly.report.json["summary"]["all_blocks_exact"] == true);
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
  for (Command command : {Command::table, Command::verify, Command::dunkl, Command::gamma_scan, Command::cpoly}) {
    CAPTURE(to_string(command));
    RunConfig c = config_for(command, "all");
    c.samples = 3;
    const RunResult first = run(c);
    ::setenv("TRIGWDVV_THREADS", "1", 1);
    CHECK(worker_threads() == 1);
    const RunResult second = run(c);
    ::unsetenv("TRIGWDVV_THREADS");
    for (OutputFormat f : {OutputFormat::json, OutputFormat::csv, OutputFormat::md})
      CHECK(serialize(first.report, f) == serialize(second.report, f));
    CHECK(first.exit_code == second.exit_code);
  }
}
