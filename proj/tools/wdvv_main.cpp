// wdvv: exact audit of the canonical constant c and numerical WDVV checks
// for the trigonometric prepotential of every crystallographic root system.
//
//   wdvv table|verify|dunkl|gamma-scan|cpoly [--system B4|all] [options]
//
// Exit codes: 0 pass, 1 verification failure, 2 usage or configuration error.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "trigwdvv/errors.hpp"
#include "trigwdvv/report.hpp"

int main(int argc, char** argv) {
  using namespace trigwdvv;

  CLI::App app{"Trigonometric WDVV verification and coupling-constant audit", "wdvv"};
  std::string command;
  std::string hypothesis = "scan";
  std::string format = "json";
  std::string k;
  RunConfig config;

  app.add_option("command", command, "table | verify | dunkl | gamma-scan | cpoly")
      ->required()
      ->check(CLI::IsMember({"table", "verify", "dunkl", "gamma-scan", "cpoly"}));
  app.add_option("--system", config.system, "root system such as B4, E8, G2, or 'all'")->capture_default_str();
  app.add_option("--samples", config.samples, "chamber points per system")->capture_default_str();
  app.add_option("--seed", config.seed, "sampling seed")->capture_default_str();
  app.add_option("--margin", config.margin, "minimum chamber margin of sampled points")->capture_default_str();
  app.add_option("--tol", config.tolerance, "pass tolerance for relative residuals")->capture_default_str();
  app.add_option("--gamma-hypothesis", hypothesis, "half | full | scan")
      ->check(CLI::IsMember({"half", "full", "scan"}))
      ->capture_default_str();
  app.add_option("--k", k, "orbit multiplicities, e.g. short=2,long=3/2");
  app.add_option("--format", format, "json | csv | md")
      ->check(CLI::IsMember({"json", "csv", "md"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    config.command = parse_command(command);
    config.hypothesis = parse_hypothesis(hypothesis);
    config.format = parse_format(format);
    if (!k.empty()) config.multiplicities = parse_multiplicities(k);
    const RunResult result = run(config);
    std::cout << serialize(result.report, config.format);
    return result.exit_code;
  } catch (const UsageError& e) {
    std::cerr << "wdvv: " << e.what() << '\n';
    return 2;
  } catch (const InadmissibleRank& e) {
    std::cerr << "wdvv: " << e.what() << '\n';
    return 2;
  } catch (const DegenerateRank& e) {
    std::cerr << "wdvv: " << e.what() << '\n';
    return 2;
  } catch (const NonPositiveC& e) {
    std::cerr << "wdvv: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "wdvv: " << e.what() << '\n';
    return 1;
  }
}
