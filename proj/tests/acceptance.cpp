// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <string>

#include "trigwdvv/dunkl.hpp"
#include "trigwdvv/exactform.hpp"
#include "trigwdvv/report.hpp"
#include "trigwdvv/wdvv.hpp"

using namespace trigwdvv;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::vector<Rational> ones(const RootSystem& rs) { return std::vector<Rational>(rs.orbit_count(), Rational(1)); }

CanonicalFormResult canonical(const RootSystemSpec& spec) {
  const RootSystem rs = build_root_system(spec);
  return extract_canonical_constant(coupling_tensor(rs), rs.projector);
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

Outcome table_reproduction() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<RootSystemSpec> specs;
  for (int n = 2; n <= 6; ++n) specs.push_back({Family::B, n});
  for (int n = 2; n <= 6; ++n) specs.push_back({Family::C, n});
  for (int n = 3; n <= 6; ++n) specs.push_back({Family::D, n});
  specs.push_back({Family::E, 7});
  bool pass = true;
  std::string failures;
  for (const auto& spec : specs) {
    const auto r = canonical(spec);
    if (r.verdict != Verdict::match) {
      pass = false;
      failures += " " + spec.name();
    }
  }
  const auto f4 = canonical({Family::F, 4});
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  pass = pass && seconds < 60.0;
  std::string detail = "B2-6, C2-6, D3-6, E7 equal the table exactly";
  if (!failures.empty()) detail = "mismatch at" + failures;
  detail += "; F4 c=" + to_string(f4.c) + " (" + to_string(f4.verdict) + ")";
  return {pass, detail};
}

Outcome table_audit() {
  std::string mismatches;
  bool emitted = true;
  std::vector<RootSystemSpec> specs;
  for (int n = 2; n <= 6; ++n) specs.push_back({Family::A, n});
  specs.push_back({Family::E, 6});
  specs.push_back({Family::E, 8});
  for (const auto& spec : specs) {
    const auto r = canonical(spec);
    emitted = emitted && r.table_value.has_value();
    if (r.verdict == Verdict::mismatch)
      mismatches += " " + spec.name() + "(" + to_string(r.c) + " vs " + to_string(*r.table_value) + ")";
  }
  const auto a3 = canonical({Family::A, 3});
  const auto d3 = canonical({Family::D, 3});
  std::vector<std::string> inconsistent;
  if (a3.verdict == Verdict::mismatch) inconsistent.push_back("A3");
  if (d3.verdict == Verdict::mismatch) inconsistent.push_back("D3");
  const bool detected = a3.c == d3.c && *a3.table_value != *d3.table_value && inconsistent.size() == 1;
  return {emitted && detected,
          "mismatches:" + (mismatches.empty() ? std::string(" none") : mismatches) +
              "; A3=D3 cross-check flags " + (inconsistent.empty() ? std::string("nothing") : inconsistent.front())};
}

Outcome exact_proportionality() {
  std::size_t checked = 0;
  for (const auto& spec : all_table_systems()) {
    if (spec.rank < 2) continue;
    if (canonical(spec).proportionality_residual != 0) return {false, spec.name() + " residual nonzero"};
    ++checked;
  }
  return {true, std::to_string(checked) + " systems, residual 0 exactly"};
}

struct SweepRow {
  RootSystemSpec spec;
  GammaHypothesis selected;
  WdvvReport chosen;
  WdvvReport alternative;
};

// Criteria 4 and 5 share one sweep.
const std::vector<SweepRow>& wdvv_sweep(double& seconds) {
  static std::vector<SweepRow> rows;
  static double elapsed = 0.0;
  if (rows.empty()) {
    const auto start = std::chrono::steady_clock::now();
    for (const auto& spec : all_table_systems()) {
      if (spec.rank < 2) continue;
      const RootSystem rs = build_root_system(spec);
      const auto scan = gamma_scan(rs, ones(rs), 42);
      const GammaHypothesis h = scan.passing.empty() ? GammaHypothesis::half : scan.passing.front();
      VerifyOptions opt;
      opt.samples = 10;
      rows.push_back({spec, h, verify_wdvv(rs, ones(rs), h, opt), verify_wdvv(rs, ones(rs), other(h), opt)});
    }
    elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  seconds = elapsed;
  return rows;
}

Outcome wdvv_verification() {
  double seconds = 0.0;
  const auto& rows = wdvv_sweep(seconds);
  double worst = 0.0;
  std::set<std::string> selected;
  for (const auto& row : rows) {
    worst = std::max({worst, row.chosen.max_commutator_residual, row.chosen.max_eq1_residual});
    selected.insert(to_string(row.selected));
    if (!row.chosen.pass) return {false, row.spec.name() + " fails under the selected hypothesis"};
  }
  const bool pass = worst < 1e-9 && seconds < 300.0;
  std::string names;
  for (const auto& s : selected) names += (names.empty() ? "" : ",") + s;
  return {pass, std::to_string(rows.size()) + " systems x 10 points, hypothesis " + names + ", max residual " + sci(worst)};
}

Outcome gamma_adjudication() {
  double seconds = 0.0;
  const auto& rows = wdvv_sweep(seconds);
  double weakest = std::numeric_limits<double>::infinity();
  for (const auto& row : rows)
    weakest = std::min(weakest, std::max(row.alternative.max_commutator_residual, row.alternative.max_eq1_residual));
  const bool pass = !rows.empty() && weakest > kDefinitiveFailure;
  return {pass, "alternative (" + to_string(other(rows.front().selected)) + ") min over systems of max residual " +
                    sci(weakest)};
}

Outcome dunkl_fibers() {
  double worst = 0.0;
  std::size_t e8_pairs = 0;
  for (const auto& spec : all_table_systems()) {
    const RootSystem rs = build_root_system(spec);
    const auto partition = fiber_partition(rs);
    if (!fiber_aggregate_matches(rs, partition)) return {false, spec.name() + " aggregate differs"};
    if (spec == RootSystemSpec{Family::E, 8}) e8_pairs = partition.pair_count();
    for (const auto& p : sample_chamber_point(rs, 42, kDefaultMarginMin, 3)) {
      const auto r = fiber_identity_check(rs, partition, p);
      worst = std::max(worst, r.max_fiber_residual);
      if (r.outcome != DunklOutcome::fiberwise) return {false, spec.name() + ": " + to_string(r.outcome)};
    }
  }
  return {worst < 1e-9 && e8_pairs == 14400,
          "max fiber residual " + sci(worst) + ", E8 pairs " + std::to_string(e8_pairs) + ", aggregates exact"};
}

Outcome parity() {
  for (const auto& spec : all_table_systems())
    if (!parity_erratum_check(build_root_system(spec)).is_zero()) return {false, spec.name() + " nonzero"};
  return {true, "full R x R sum is exactly zero on all systems"};
}

Outcome analytic_consistency() {
  double fd = 0.0;
  for (const auto& spec : all_table_systems()) {
    const RootSystem rs = build_root_system(spec);
    const auto params = make_params(rs, std::vector<double>(rs.orbit_count(), 1.0), {0.0, 1.0});
    for (const auto& p : sample_chamber_point(rs, 42, kDefaultMarginMin, 3)) fd = std::max(fd, fd_validate(params, p));
  }
  double series = 0.0;
  for (double x : {0.5, 1.0, 2.0}) series = std::max(series, std::abs(f_derivative_series(x, 3) - coth_third(x)));
  return {fd < 1e-5 && series < 1e-12, "fd max rel " + sci(fd) + ", series vs coth " + sci(series)};
}

Outcome multiplicities() {
  const RootSystem b2 = build_root_system({Family::B, 2});
  const auto poly = multiplicity_polynomial(b2);
  bool exact = true;
  for (const auto& t : poly.terms)
    exact = exact && t.proportionality_residual == 0 && t.coefficient == (t.first == t.second ? 0 : 4);
  for (const auto& [ks, kl] : {std::pair{Rational(2), Rational(3)}, std::pair{Rational(1, 3), Rational(-7, 2)}}) {
    const std::vector<Rational> k{ks, kl};
    exact = exact && weighted_canonical_constant(b2, k) == 4 * ks * kl && poly.evaluate(k) == 4 * ks * kl;
  }
  const std::vector<Rational> k{Rational(2), Rational(3)};
  const auto scan = gamma_scan(b2, k, 42);
  const GammaHypothesis h = scan.passing.empty() ? GammaHypothesis::half : scan.passing.front();
  const auto report = verify_wdvv(b2, k, h, {});
  const double residual = std::max(report.max_commutator_residual, report.max_eq1_residual);
  return {exact && report.pass && residual < 1e-9,
          std::string("c(ks,kl) = 4 ks kl ") + (exact ? "exact" : "NOT exact") + "; (2,3): c=" + to_string(*report.c) +
              ", residual " + sci(residual)};
}

Outcome determinism() {
  for (Command command : {Command::table, Command::verify, Command::dunkl, Command::gamma_scan, Command::cpoly}) {
    RunConfig c;
    c.command = command;
    c.samples = command == Command::dunkl ? 3 : 10;
    for (OutputFormat f : {OutputFormat::json, OutputFormat::csv, OutputFormat::md}) {
      if (serialize(run(c).report, f) != serialize(run(c).report, f))
        return {false, to_string(command) + " differs in " + to_string(f)};
    }
  }
  return {true, "5 commands x 3 formats byte-identical across runs"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"table reproduction (B, C, D, E7; F4 audited)", table_reproduction},
      {"table audit (A_N, E6, E8; A3 = D3 cross-constraint)", table_audit},
      {"exact proportionality", exact_proportionality},
      {"end-to-end WDVV verification", wdvv_verification},
      {"gamma factor adjudication", gamma_adjudication},
      {"Dunkl fiber identity", dunkl_fibers},
      {"parity of the full-root sum", parity},
      {"analytic consistency", analytic_consistency},
      {"multiplicity extension on B2", multiplicities},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("[%s] %2zu %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), seconds);
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
