#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "trigwdvv/dunkl.hpp"
#include "trigwdvv/errors.hpp"
#include "trigwdvv/exactform.hpp"
#include "trigwdvv/report.hpp"
#include "trigwdvv/wdvv.hpp"

namespace py = pybind11;
using namespace trigwdvv;

namespace {

py::object fraction(const Rational& q) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  const py::object num = py::int_(py::str(boost::multiprecision::numerator(q).str()));
  const py::object den = py::int_(py::str(boost::multiprecision::denominator(q).str()));
  return cls(num, den);
}

Rational to_rational(py::handle x) { return parse_rational(py::str(x).cast<std::string>()); }

GammaHypothesis hypothesis_of(const std::string& text) {
  if (text == "half") return GammaHypothesis::half;
  if (text == "full") return GammaHypothesis::full;
  throw UsageError("gamma hypothesis must be 'half' or 'full'");
}

// Orbit weights from {"short": k, "long": k} or {"single": k}; missing orbits get 1.
std::vector<Rational> weights_for(const RootSystem& rs, const std::optional<py::dict>& k) {
  std::map<std::string, Rational> parsed;
  if (k)
    for (auto [key, value] : *k) parsed[py::str(key).cast<std::string>()] = to_rational(value);
  for (const auto& [key, value] : parsed)
    if (key != "short" && key != "long" && key != "single") throw UsageError("unknown orbit '" + key + "'");
  return orbit_weights_for(rs, parsed);
}

py::list vectors(const std::vector<RationalVector>& vs) {
  py::list out;
  for (const auto& v : vs) {
    py::tuple t(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) t[i] = fraction(v[i]);
    out.append(t);
  }
  return out;
}

py::dict root_system_info(const std::string& name) {
  const RootSystem rs = build_root_system(RootSystemSpec::parse(name));
  py::dict d;
  d["name"] = rs.spec.name();
  d["rank"] = rs.rank;
  d["ambient_dim"] = rs.ambient_dim;
  d["roots"] = vectors(rs.roots);
  d["positive_roots"] = vectors(rs.positive_roots);
  d["simple_roots"] = vectors(rs.simple_roots);
  py::list lengths;
  for (const auto& l : rs.orbit_lengths) lengths.append(fraction(l));
  d["orbit_lengths"] = lengths;
  return d;
}

py::dict canonical_constant(const std::string& name, const std::optional<py::dict>& k) {
  const RootSystem rs = build_root_system(RootSystemSpec::parse(name));
  const auto result = extract_canonical_constant(coupling_tensor(rs, weights_for(rs, k)), rs.projector);
  py::dict d;
  d["c"] = fraction(result.c);
  d["residual"] = fraction(result.proportionality_residual);
  d["table"] = result.table_value ? fraction(*result.table_value) : py::none();
  d["verdict"] = to_string(result.verdict);
  return d;
}

py::dict verify(const std::string& name, const std::string& hypothesis, std::size_t samples, std::uint64_t seed,
                double margin, const std::optional<py::dict>& k) {
  const RootSystem rs = build_root_system(RootSystemSpec::parse(name));
  VerifyOptions opt;
  opt.samples = samples;
  opt.seed = seed;
  opt.margin = margin;
  const auto report = verify_wdvv(rs, weights_for(rs, k), hypothesis_of(hypothesis), opt);
  py::dict d;
  d["system"] = report.system.name();
  d["hypothesis"] = to_string(report.hypothesis);
  d["c"] = report.c ? fraction(*report.c) : py::none();
  d["gamma"] = report.gamma;
  d["max_commutator_residual"] = report.max_commutator_residual;
  d["max_eq1_residual"] = report.max_eq1_residual;
  d["pass"] = report.pass;
  d["note"] = report.note;
  return d;
}

py::dict scan(const std::string& name, std::uint64_t seed, const std::optional<py::dict>& k) {
  const RootSystem rs = build_root_system(RootSystemSpec::parse(name));
  const auto report = gamma_scan(rs, weights_for(rs, k), seed);
  py::dict d;
  d["system"] = report.system.name();
  d["c"] = fraction(report.c);
  py::dict residuals;
  for (const auto& o : report.outcomes) residuals[py::str(to_string(o.hypothesis))] = o.max_commutator_residual;
  d["residuals"] = residuals;
  d["verdict"] = report.verdict;
  return d;
}

py::dict dunkl(const std::string& name, std::size_t samples, std::uint64_t seed) {
  const RootSystem rs = build_root_system(RootSystemSpec::parse(name));
  const auto partition = fiber_partition(rs);
  double worst = 0.0;
  std::string outcome = to_string(DunklOutcome::fiberwise);
  for (const auto& p : sample_chamber_point(rs, seed, kDefaultMarginMin, samples)) {
    const auto r = fiber_identity_check(rs, partition, p);
    worst = std::max(worst, r.max_fiber_residual);
    if (r.outcome != DunklOutcome::fiberwise) outcome = to_string(r.outcome);
  }
  py::dict d;
  d["system"] = rs.spec.name();
  d["fibers"] = partition.fibers.size();
  d["pairs"] = partition.pair_count();
  d["aggregate_exact"] = fiber_aggregate_matches(rs, partition);
  d["max_fiber_residual"] = worst;
  d["outcome"] = outcome;
  return d;
}

py::tuple run_cli(const std::string& command, const std::string& system, std::size_t samples, std::uint64_t seed,
                  double margin, double tol, const std::string& gamma_hypothesis, const std::string& k,
                  const std::string& format) {
  RunConfig c;
  c.command = parse_command(command);
  c.system = system;
  c.samples = samples;
  c.seed = seed;
  c.margin = margin;
  c.tolerance = tol;
  c.hypothesis = parse_hypothesis(gamma_hypothesis);
  if (!k.empty()) c.multiplicities = parse_multiplicities(k);
  c.format = parse_format(format);
  c.validate();
  const RunResult r = run(c);
  return py::make_tuple(r.exit_code, serialize(r.report, c.format));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Trigonometric WDVV solutions for crystallographic root systems";

  // Translators run newest first, so the base class is registered before its subclasses.
  const py::handle base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<UsageError>(m, "UsageError", base);
  py::register_exception<InadmissibleRank>(m, "InadmissibleRank", base);
  py::register_exception<DegenerateRank>(m, "DegenerateRank", base);
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<NearSingular>(m, "NearSingular", base);
  py::register_exception<ChamberViolation>(m, "ChamberViolation", base);

  m.def("root_system", &root_system_info, py::arg("name"), "Exact roots and orbit data, coordinates as Fractions.");
  m.def("table_systems", [] {
    std::vector<std::string> names;
    for (const auto& s : all_table_systems()) names.push_back(s.name());
    return names;
  });
  m.def("canonical_constant", &canonical_constant, py::arg("name"), py::arg("k") = py::none());
  m.def("trilog", &trilog, py::arg("z"));
  m.def("f", &f_scalar, py::arg("x"));
  m.def("coth", [](double x) { return coth_third(x); }, py::arg("x"));
  m.def("gamma_from_c", [](double c, const std::string& h) { return gamma_from_c(c, hypothesis_of(h)); },
        py::arg("c"), py::arg("hypothesis") = "half");
  m.def("verify", &verify, py::arg("name"), py::arg("hypothesis") = "half", py::arg("samples") = 10,
        py::arg("seed") = 42, py::arg("margin") = kDefaultMarginMin, py::arg("k") = py::none());
  m.def("gamma_scan", &scan, py::arg("name"), py::arg("seed") = 42, py::arg("k") = py::none());
  m.def("dunkl", &dunkl, py::arg("name"), py::arg("samples") = 3, py::arg("seed") = 42);
  m.def("run_cli", &run_cli, py::arg("command"), py::arg("system") = "all", py::arg("samples") = 10,
        py::arg("seed") = 42, py::arg("margin") = 0.2, py::arg("tol") = 1e-9, py::arg("gamma_hypothesis") = "scan",
        py::arg("k") = "", py::arg("format") = "json",
        "Runs a command as the wdvv executable would; returns (exit_code, report_text).");
}
