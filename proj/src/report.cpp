#include "trigwdvv/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <sstream>
#include <set>
#include <thread>

#include "trigwdvv/dunkl.hpp"
#include "trigwdvv/errors.hpp"
#include "trigwdvv/exactform.hpp"
#include "trigwdvv/prepotential.hpp"
#include "trigwdvv/wdvv.hpp"

namespace trigwdvv {

using ojson = nlohmann::ordered_json;

namespace {

// Runs fn(i) for i in [0, count) on worker threads; results keep index order.
template <typename Result>
std::vector<Result> parallel_map(std::size_t count, const std::function<Result(std::size_t)>& fn) {
  std::vector<Result> results(count);
  std::vector<std::exception_ptr> errors(count);
  const std::size_t workers = std::min<std::size_t>(std::max(1U, worker_threads()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          results[i] = fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

ojson complex_json(std::complex<double> z) { return ojson{{"re", format_real(z.real())}, {"im", format_real(z.imag())}}; }

std::string complex_text(std::complex<double> z) {
  if (z.real() == 0.0) return format_real(z.imag()) + "i";
  return format_real(z.real()) + (z.imag() < 0 ? "-" : "+") + format_real(std::fabs(z.imag())) + "i";
}

ojson weights_json(const RootSystem& rs, const std::vector<Rational>& k) {
  ojson out = ojson::object();
  for (std::size_t o = 0; o < k.size(); ++o) out[rs.orbit_name(static_cast<int>(o))] = to_string(k[o]);
  return out;
}

ojson vector_json(const Eigen::VectorXd& v) {
  ojson out = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(format_real(v(i)));
  return out;
}

ojson config_json(const RunConfig& c) {
  ojson k = ojson::object();
  for (const auto& [name, value] : c.multiplicities) k[name] = to_string(value);
  return ojson{{"command", to_string(c.command)},
               {"system", c.system},
               {"samples", c.samples},
               {"seed", c.seed},
               {"margin", format_real(c.margin)},
               {"tolerance", format_real(c.tolerance)},
               {"gamma_hypothesis", to_string(c.hypothesis)},
               {"multiplicities", k},
               {"format", to_string(c.format)}};
}

Report skeleton(const RunConfig& config) {
  Report r;
  r.json["schema_version"] = kSchemaVersion;
  r.json["command"] = to_string(config.command);
  r.json["config"] = config_json(config);
  r.json["records"] = ojson::array();
  return r;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

// ---------------------------------------------------------------- table

struct TableRow {
  RootSystemSpec spec;
  std::size_t rank = 0, ambient = 0, roots = 0, positive = 0, orbits = 0;
  std::optional<CanonicalFormResult> canonical;
  std::optional<Rational> table;
  bool parity_zero = false;
};

TableRow table_row(const RootSystemSpec& spec) {
  const RootSystem rs = build_root_system(spec);
  TableRow row;
  row.spec = spec;
  row.rank = rs.rank;
  row.ambient = rs.ambient_dim;
  row.roots = rs.roots.size();
  row.positive = rs.positive_roots.size();
  row.orbits = rs.orbit_count();
  row.table = table_value(spec);
  if (rs.rank >= 2) row.canonical = extract_canonical_constant(coupling_tensor(rs), rs.projector);
  row.parity_zero = parity_erratum_check(rs).is_zero();
  return row;
}

// ---------------------------------------------------------------- verify

struct VerifyOutcome {
  WdvvReport main;
  std::optional<WdvvReport> alternative;
  std::optional<GammaScanReport> scan;
  std::string selected_by;
};

ojson scan_json(const GammaScanReport& scan) {
  ojson hyps = ojson::array();
  for (const auto& o : scan.outcomes)
    hyps.push_back(ojson{{"hypothesis", to_string(o.hypothesis)},
                         {"gamma", complex_json(o.gamma)},
                         {"max_commutator_residual", format_real(o.max_commutator_residual)},
                         {"max_eq1_residual", format_real(o.max_eq1_residual)},
                         {"passes", o.passes}});
  const double lo = std::min(scan.outcomes[0].max_commutator_residual, scan.outcomes[1].max_commutator_residual);
  const double hi = std::max(scan.outcomes[0].max_commutator_residual, scan.outcomes[1].max_commutator_residual);
  const double gap = lo > 0.0 ? std::log10(hi / lo) : INFINITY;
  return ojson{{"c", to_string(scan.c)},
               {"hypotheses", hyps},
               {"verdict", scan.verdict},
               {"residual_gap_orders", format_real(gap)}};
}

ojson wdvv_json(const WdvvReport& r, const RootSystem& rs, bool with_points) {
  ojson out{{"hypothesis", to_string(r.hypothesis)},
            {"c", r.c ? ojson(to_string(*r.c)) : ojson("undefined (rank 1)")},
            {"multiplicities", weights_json(rs, r.multiplicities)},
            {"gamma", complex_json(r.gamma)},
            {"samples", r.points.size()},
            {"max_commutator_residual", format_real(r.max_commutator_residual)},
            {"max_eq1_residual", format_real(r.max_eq1_residual)},
            {"tolerance", format_real(r.tolerance)},
            {"pass", r.pass}};
  if (!r.note.empty()) out["note"] = r.note;
  if (with_points) {
    ojson pts = ojson::array();
    for (std::size_t p = 0; p < r.points.size(); ++p)
      pts.push_back(ojson{{"index", p},
                          {"a", vector_json(r.points[p].a)},
                          {"extra", format_real(r.points[p].extra)},
                          {"margin", format_real(r.points[p].margin)},
                          {"commutator_residual", format_real(r.per_point[p].commutator)},
                          {"eq1_residual", format_real(r.per_point[p].eq1)}});
    out["points"] = pts;
  }
  return out;
}

VerifyOutcome verify_system(const RunConfig& config, const RootSystemSpec& spec) {
  const RootSystem rs = build_root_system(spec);
  const std::vector<Rational> k = orbit_weights_for(rs, config.multiplicities);
  const VerifyOptions options{config.samples, config.seed, config.margin, config.tolerance};
  VerifyOutcome out;
  if (rs.rank < 2) {
    out.main = verify_wdvv(rs, k, GammaHypothesis::half, options);
    out.selected_by = "rank 1";
    return out;
  }
  GammaHypothesis chosen = GammaHypothesis::half;
  if (config.hypothesis == HypothesisChoice::scan) {
    out.scan = gamma_scan(rs, k, config.seed, kScanSamples, config.margin, config.tolerance);
    const auto& o = out.scan->outcomes;
    if (out.scan->passing.size() == 1) chosen = out.scan->passing.front();
    else chosen = o[0].max_commutator_residual <= o[1].max_commutator_residual ? o[0].hypothesis : o[1].hypothesis;
    out.selected_by = "scan";
    out.main = verify_wdvv(rs, k, chosen, options);
    out.alternative = verify_wdvv(rs, k, other(chosen), options);
  } else {
    chosen = config.hypothesis == HypothesisChoice::half ? GammaHypothesis::half : GammaHypothesis::full;
    out.selected_by = "config";
    out.main = verify_wdvv(rs, k, chosen, options);
  }
  return out;
}

// ---------------------------------------------------------------- dunkl

struct DunklOutcomeRow {
  RootSystemSpec spec;
  std::size_t fibers = 0, pairs = 0, identity_size = 0;
  bool aggregate_exact = false;
  std::vector<FiberCheckReport> points;
  bool pass = false;
};

DunklOutcomeRow dunkl_system(const RunConfig& config, const RootSystemSpec& spec) {
  const RootSystem rs = build_root_system(spec);
  const FiberPartition partition = fiber_partition(rs);
  DunklOutcomeRow row;
  row.spec = spec;
  row.fibers = partition.fibers.size();
  row.pairs = partition.pair_count();
  for (const auto& f : partition.fibers)
    if (f.is_identity()) row.identity_size = f.pairs.size();
  row.aggregate_exact = fiber_aggregate_matches(rs, partition);
  row.pass = row.aggregate_exact;
  for (const auto& p : sample_chamber_point(rs, config.seed, config.margin, config.samples)) {
    row.points.push_back(fiber_identity_check(rs, partition, p, config.tolerance));
    const auto& r = row.points.back();
    row.pass = row.pass && r.outcome == DunklOutcome::fiberwise && r.third_derivative_residual < config.tolerance;
  }
  return row;
}

// ---------------------------------------------------------------- cpoly

struct CpolyRow {
  RootSystemSpec spec;
  std::optional<MultiplicityPolynomial> poly;
  std::vector<std::string> orbit_names;
  std::vector<Rational> orbit_lengths;
  std::optional<Rational> unweighted_c;
  std::vector<Rational> k;
};

CpolyRow cpoly_system(const RunConfig& config, const RootSystemSpec& spec) {
  const RootSystem rs = build_root_system(spec);
  CpolyRow row;
  row.spec = spec;
  for (std::size_t o = 0; o < rs.orbit_count(); ++o) row.orbit_names.push_back(rs.orbit_name(static_cast<int>(o)));
  row.orbit_lengths = rs.orbit_lengths;
  row.k = orbit_weights_for(rs, config.multiplicities);
  if (rs.rank >= 2) {
    row.poly = multiplicity_polynomial(rs);
    row.unweighted_c = extract_canonical_constant(coupling_tensor(rs), rs.projector).c;
  }
  return row;
}

void require_rank_two(const RunConfig& config, const std::vector<RootSystemSpec>& systems, const char* what) {
  if (config.system == "all") return;
  for (const auto& s : systems)
    if (s.rank < 2) throw DegenerateRank(s.name() + ": " + what + " needs rank >= 2");
}

}  // namespace

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

unsigned worker_threads() {
  if (const char* env = std::getenv("TRIGWDVV_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::string to_string(Command c) {
  switch (c) {
    case Command::table: return "table";
    case Command::verify: return "verify";
    case Command::dunkl: return "dunkl";
    case Command::gamma_scan: return "gamma-scan";
    case Command::cpoly: return "cpoly";
  }
  return "unknown";
}

std::string to_string(HypothesisChoice h) {
  switch (h) {
    case HypothesisChoice::half: return "half";
    case HypothesisChoice::full: return "full";
    case HypothesisChoice::scan: return "scan";
  }
  return "unknown";
}

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    case OutputFormat::md: return "md";
  }
  return "unknown";
}

Command parse_command(const std::string& text) {
  if (text == "table") return Command::table;
  if (text == "verify") return Command::verify;
  if (text == "dunkl") return Command::dunkl;
  if (text == "gamma-scan") return Command::gamma_scan;
  if (text == "cpoly") return Command::cpoly;
  throw UsageError("unknown command '" + text + "'");
}

HypothesisChoice parse_hypothesis(const std::string& text) {
  if (text == "half") return HypothesisChoice::half;
  if (text == "full") return HypothesisChoice::full;
  if (text == "scan") return HypothesisChoice::scan;
  throw UsageError("unknown gamma hypothesis '" + text + "' (half|full|scan)");
}

OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::json;
  if (text == "csv") return OutputFormat::csv;
  if (text == "md") return OutputFormat::md;
  throw UsageError("unknown format '" + text + "' (json|csv|md)");
}

std::map<std::string, Rational> parse_multiplicities(const std::string& text) {
  std::map<std::string, Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("multiplicity '" + item + "' is not of the form orbit=p/q");
    const std::string key = item.substr(0, eq);
    if (key != "short" && key != "long" && key != "single")
      throw UsageError("unknown orbit '" + key + "' (short|long|single)");
    try {
      out[key] = parse_rational(item.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

std::vector<Rational> orbit_weights_for(const RootSystem& rs, const std::map<std::string, Rational>& k) {
  auto lookup = [&](std::initializer_list<const char*> keys) -> Rational {
    for (const char* key : keys)
      if (auto it = k.find(key); it != k.end()) return it->second;
    return Rational(1);
  };
  if (rs.orbit_count() == 1) return {lookup({"single", "short"})};
  return {lookup({"short"}), lookup({"long"})};
}

void RunConfig::validate() const {
  if (samples < 1) throw UsageError("--samples must be >= 1");
  if (!(margin > 0.0)) throw UsageError("--margin must be positive");
  if (!(tolerance > 0.0)) throw UsageError("--tol must be positive");
  (void)systems();
}

std::vector<RootSystemSpec> RunConfig::systems() const {
  if (system == "all") return all_table_systems();
  try {
    return {RootSystemSpec::parse(system)};
  } catch (const InadmissibleRank& e) {
    throw UsageError(e.what());
  }
}

RunResult run_table(const RunConfig& config) {
  const auto systems = config.systems();
  const auto rows = parallel_map<TableRow>(systems.size(), [&](std::size_t i) { return table_row(systems[i]); });

  RunResult result{0, skeleton(config)};
  Report& r = result.report;
  r.csv.columns = r.md.columns = {"system", "c_oracle", "c_table", "verdict", "residual"};
  r.md_title = "Canonical constant c: exact oracle vs published table";
  ojson findings = ojson::array();
  bool all_exact = true;
  for (const auto& row : rows) {
    const std::string c = row.canonical ? to_string(row.canonical->c) : "undefined (rank 1)";
    const std::string table = row.table ? to_string(*row.table) : "";
    const Verdict verdict = row.canonical ? row.canonical->verdict : Verdict::no_table_entry;
    const std::string residual = row.canonical ? to_string(row.canonical->proportionality_residual) : "n/a";
    const bool finding = verdict == Verdict::mismatch;
    if (row.canonical && row.canonical->proportionality_residual != 0) all_exact = false;
    if (!row.parity_zero) all_exact = false;
    if (finding) findings.push_back(row.spec.name());
    r.json["records"].push_back(ojson{{"system", row.spec.name()},
                                      {"rank", row.rank},
                                      {"ambient_dim", row.ambient},
                                      {"roots", row.roots},
                                      {"positive_roots", row.positive},
                                      {"orbits", row.orbits},
                                      {"c_oracle", c},
                                      {"c_table", row.table ? ojson(table) : ojson(nullptr)},
                                      {"verdict", to_string(verdict)},
                                      {"finding", finding},
                                      {"proportionality_residual", residual},
                                      {"parity_full_sum_zero", row.parity_zero}});
    const std::vector<std::string> line{row.spec.name(), c, table.empty() ? "-" : table, to_string(verdict), residual};
    r.csv.rows.push_back(line);
    r.md.rows.push_back(line);
  }

  // D3 and A3 are the same root system; the table cannot be right for both.
  ojson cross = ojson::array();
  auto find_row = [&](const RootSystemSpec& s) -> const TableRow* {
    for (const auto& row : rows)
      if (row.spec == s) return &row;
    return nullptr;
  };
  const TableRow* a3 = find_row({Family::A, 3});
  const TableRow* d3 = find_row({Family::D, 3});
  if (a3 && d3 && a3->canonical && d3->canonical) {
    ojson inconsistent = ojson::array();
    if (a3->canonical->verdict == Verdict::mismatch) inconsistent.push_back("A3");
    if (d3->canonical->verdict == Verdict::mismatch) inconsistent.push_back("D3");
    cross.push_back(ojson{{"systems", {"A3", "D3"}},
                          {"oracle_equal", a3->canonical->c == d3->canonical->c},
                          {"c_oracle", {to_string(a3->canonical->c), to_string(d3->canonical->c)}},
                          {"c_table", {to_string(*a3->table), to_string(*d3->table)}},
                          {"table_consistent", *a3->table == *d3->table},
                          {"inconsistent_entries", inconsistent}});
  }
  r.json["summary"] = ojson{{"all_proportionality_residuals_zero", all_exact},
                            {"findings", findings},
                            {"cross_checks", cross}};
  result.exit_code = all_exact ? 0 : 1;
  return result;
}

RunResult run_verify(const RunConfig& config) {
  const auto systems = config.systems();
  const auto rows =
      parallel_map<VerifyOutcome>(systems.size(), [&](std::size_t i) { return verify_system(config, systems[i]); });

  RunResult result{0, skeleton(config)};
  Report& r = result.report;
  r.csv.columns = {"system", "hypothesis", "point", "i", "j", "commutator_residual", "eq1_residual"};
  r.md.columns = {"system", "hypothesis", "c", "gamma", "max_commutator", "max_eq1", "pass"};
  r.md_title = "WDVV residuals of the trigonometric prepotential";
  bool all_pass = true;
  bool alternatives_fail = true;
  for (std::size_t s = 0; s < rows.size(); ++s) {
    const VerifyOutcome& row = rows[s];
    const RootSystem rs = build_root_system(systems[s]);
    ojson rec{{"system", systems[s].name()}, {"selected_by", row.selected_by}};
    rec.update(wdvv_json(row.main, rs, true));
    if (row.scan) rec["scan"] = scan_json(*row.scan);
    if (row.alternative) {
      const bool definitive = row.alternative->max_commutator_residual > kDefinitiveFailure;
      alternatives_fail = alternatives_fail && definitive;
      ojson alt = wdvv_json(*row.alternative, rs, false);
      alt["definitively_fails"] = definitive;
      rec["alternative"] = alt;
    }
    r.json["records"].push_back(rec);
    all_pass = all_pass && row.main.pass;
    for (const auto& p : row.main.per_point)
      for (const auto& pr : p.pairs)
        r.csv.rows.push_back({systems[s].name(), to_string(row.main.hypothesis), std::to_string(p.point_index),
                              std::to_string(pr.i + 1), std::to_string(pr.j + 1), format_real(pr.commutator),
                              format_real(pr.eq1)});
    r.md.rows.push_back({systems[s].name(), to_string(row.main.hypothesis),
                         row.main.c ? to_string(*row.main.c) : "undefined (rank 1)", complex_text(row.main.gamma),
                         format_real(row.main.max_commutator_residual), format_real(row.main.max_eq1_residual),
                         row.main.pass ? "yes" : "no"});
  }
  r.json["summary"] = ojson{{"all_pass", all_pass}};
  if (config.hypothesis == HypothesisChoice::scan) r.json["summary"]["alternatives_definitively_fail"] = alternatives_fail;
  result.exit_code = all_pass ? 0 : 1;
  return result;
}

RunResult run_dunkl(const RunConfig& config) {
  const auto systems = config.systems();
  const auto rows =
      parallel_map<DunklOutcomeRow>(systems.size(), [&](std::size_t i) { return dunkl_system(config, systems[i]); });

  RunResult result{0, skeleton(config)};
  Report& r = result.report;
  r.csv.columns = {"system", "point", "fiber", "size", "residual"};
  r.md.columns = {"system", "fibers", "pairs", "max_fiber_residual", "aggregate_exact", "outcome"};
  r.md_title = "Fiber-wise Dunkl identity";
  bool all_pass = true;
  for (const auto& row : rows) {
    double worst = 0.0;
    std::string outcome = to_string(DunklOutcome::fiberwise);
    ojson pts = ojson::array();
    for (std::size_t p = 0; p < row.points.size(); ++p) {
      const auto& rep = row.points[p];
      worst = std::max(worst, rep.max_fiber_residual);
      if (rep.outcome != DunklOutcome::fiberwise) outcome = to_string(rep.outcome);
      pts.push_back(ojson{{"index", p},
                          {"a", vector_json(rep.point.a)},
                          {"max_fiber_residual", format_real(rep.max_fiber_residual)},
                          {"aggregate_residual", format_real(rep.aggregate_residual)},
                          {"third_derivative_residual", format_real(rep.third_derivative_residual)},
                          {"outcome", to_string(rep.outcome)}});
      for (const auto& f : rep.fibers)
        r.csv.rows.push_back({row.spec.name(), std::to_string(p), std::to_string(f.fiber), std::to_string(f.size),
                              format_real(f.residual)});
    }
    r.json["records"].push_back(ojson{{"system", row.spec.name()},
                                      {"fibers", row.fibers},
                                      {"pairs", row.pairs},
                                      {"identity_fiber_size", row.identity_size},
                                      {"aggregate_exact", row.aggregate_exact},
                                      {"max_fiber_residual", format_real(worst)},
                                      {"outcome", outcome},
                                      {"pass", row.pass},
                                      {"points", pts}});
    r.md.rows.push_back({row.spec.name(), std::to_string(row.fibers), std::to_string(row.pairs), format_real(worst),
                         row.aggregate_exact ? "yes" : "no", outcome});
    all_pass = all_pass && row.pass;
  }
  r.json["summary"] = ojson{{"all_pass", all_pass}};
  result.exit_code = all_pass ? 0 : 1;
  return result;
}

RunResult run_gamma_scan(const RunConfig& config) {
  const auto systems = config.systems();
  require_rank_two(config, systems, "gamma scan");
  const auto scans = parallel_map<std::optional<GammaScanReport>>(systems.size(), [&](std::size_t i) {
    const RootSystem rs = build_root_system(systems[i]);
    if (rs.rank < 2) return std::optional<GammaScanReport>{};
    return std::optional<GammaScanReport>{
        gamma_scan(rs, orbit_weights_for(rs, config.multiplicities), config.seed, kScanSamples, config.margin,
                   config.tolerance)};
  });

  RunResult result{0, skeleton(config)};
  Report& r = result.report;
  r.csv.columns = r.md.columns = {"system", "c", "half_residual", "full_residual", "verdict"};
  r.md_title = "Gamma hypothesis scan";
  std::set<std::string> verdicts;
  bool every_single = true;
  for (std::size_t s = 0; s < systems.size(); ++s) {
    if (!scans[s]) {
      r.json["records"].push_back(ojson{{"system", systems[s].name()}, {"skipped", "rank 1: gamma scan needs rank >= 2"}});
      continue;
    }
    const RootSystem rs = build_root_system(systems[s]);
    const auto& scan = *scans[s];
    ojson rec{{"system", systems[s].name()}, {"multiplicities", weights_json(rs, scan.multiplicities)}};
    rec.update(scan_json(scan));
    r.json["records"].push_back(rec);
    verdicts.insert(scan.verdict);
    every_single = every_single && scan.passing.size() == 1;
    const std::vector<std::string> line{systems[s].name(), to_string(scan.c),
                                        format_real(scan.outcomes[0].max_commutator_residual),
                                        format_real(scan.outcomes[1].max_commutator_residual), scan.verdict};
    r.csv.rows.push_back(line);
    r.md.rows.push_back(line);
  }
  const bool consistent = every_single && verdicts.size() == 1;
  r.json["summary"] = ojson{{"consistent_hypothesis", consistent ? ojson(*verdicts.begin()) : ojson(nullptr)},
                            {"verdicts", ojson(std::vector<std::string>(verdicts.begin(), verdicts.end()))}};
  result.exit_code = consistent ? 0 : 1;
  return result;
}

RunResult run_cpoly(const RunConfig& config) {
  const auto systems = config.systems();
  require_rank_two(config, systems, "multiplicity polynomial");
  const auto rows =
      parallel_map<CpolyRow>(systems.size(), [&](std::size_t i) { return cpoly_system(config, systems[i]); });

  RunResult result{0, skeleton(config)};
  Report& r = result.report;
  r.csv.columns = r.md.columns = {"system", "orbits", "coefficient", "residual"};
  r.md_title = "Canonical constant as a polynomial in the orbit multiplicities";
  bool all_exact = true;
  for (const auto& row : rows) {
    if (!row.poly) {
      r.json["records"].push_back(ojson{{"system", row.spec.name()}, {"skipped", "rank 1: c is undefined"}});
      continue;
    }
    ojson orbits = ojson::array();
    for (std::size_t o = 0; o < row.orbit_names.size(); ++o)
      orbits.push_back(ojson{{"label", row.orbit_names[o]}, {"squared_length", to_string(row.orbit_lengths[o])}});
    ojson terms = ojson::array();
    for (const auto& t : row.poly->terms) {
      const std::string pair = row.orbit_names[static_cast<std::size_t>(t.first)] + "*" +
                               row.orbit_names[static_cast<std::size_t>(t.second)];
      terms.push_back(ojson{{"orbits", pair},
                            {"coefficient", to_string(t.coefficient)},
                            {"proportionality_residual", to_string(t.proportionality_residual)}});
      all_exact = all_exact && t.proportionality_residual == 0;
      const std::vector<std::string> line{row.spec.name(), pair, to_string(t.coefficient),
                                          to_string(t.proportionality_residual)};
      r.csv.rows.push_back(line);
      r.md.rows.push_back(line);
    }
    const std::vector<Rational> ones(row.orbit_names.size(), Rational(1));
    const Rational at_ones = row.poly->evaluate(ones);
    const bool consistent = at_ones == *row.unweighted_c;
    all_exact = all_exact && consistent;
    r.json["records"].push_back(ojson{{"system", row.spec.name()},
                                      {"orbits", orbits},
                                      {"terms", terms},
                                      {"c_at_unit_multiplicities", to_string(at_ones)},
                                      {"matches_unweighted_c", consistent},
                                      {"multiplicities", ojson::array()},
                                      {"c_at_multiplicities", to_string(row.poly->evaluate(row.k))}});
    ojson& k = r.json["records"].back()["multiplicities"];
    for (const auto& w : row.k) k.push_back(to_string(w));
  }
  r.json["summary"] = ojson{{"all_blocks_exact", all_exact}};
  result.exit_code = all_exact ? 0 : 1;
  return result;
}

RunResult run(const RunConfig& config) {
  config.validate();
  switch (config.command) {
    case Command::table: return run_table(config);
    case Command::verify: return run_verify(config);
    case Command::dunkl: return run_dunkl(config);
    case Command::gamma_scan: return run_gamma_scan(config);
    case Command::cpoly: return run_cpoly(config);
  }
  throw UsageError("unknown command");
}

std::string serialize(const Report& report, OutputFormat format) {
  std::ostringstream out;
  switch (format) {
    case OutputFormat::json:
      out << report.json.dump(2) << '\n';
      break;
    case OutputFormat::csv: {
      for (std::size_t c = 0; c < report.csv.columns.size(); ++c)
        out << (c ? "," : "") << csv_field(report.csv.columns[c]);
      out << '\n';
      for (const auto& row : report.csv.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_field(row[c]);
        out << '\n';
      }
      break;
    }
    case OutputFormat::md: {
      out << "# " << report.md_title << "\n\n|";
      for (const auto& c : report.md.columns) out << ' ' << c << " |";
      out << "\n|";
      for (std::size_t c = 0; c < report.md.columns.size(); ++c) out << "---|";
      out << '\n';
      for (const auto& row : report.md.rows) {
        out << '|';
        for (const auto& cell : row) out << ' ' << cell << " |";
        out << '\n';
      }
      break;
    }
  }
  return out.str();
}

}  // namespace trigwdvv
