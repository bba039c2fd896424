#include "trigwdvv/wdvv.hpp"

#include <algorithm>
#include <cmath>

#include "trigwdvv/errors.hpp"
#include "trigwdvv/exactform.hpp"

namespace trigwdvv {

namespace {

constexpr double kNormFloor = 1e-300;

std::vector<double> to_doubles(std::span<const Rational> weights) {
  std::vector<double> out;
  for (const auto& w : weights) out.push_back(to_double(w));
  return out;
}

Eigen::MatrixXcd pivot_inverse(std::span<const Slice> slices, std::size_t pivot) {
  if (pivot >= slices.size()) throw std::invalid_argument("pivot index out of range");
  const Slice& p = slices[pivot];
  if (p.cwiseAbs().maxCoeff() == 0.0) throw SingularPivot("pivot slice is the zero matrix");
  // The LU rcond estimate misses exactly singular pivots; slices are small, so
  // take the condition number from the singular values instead.
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(p).singularValues();
  const double smin = sv(sv.size() - 1);
  if (!(smin > 0.0) || !(sv(0) < kPivotConditionBound * smin))
    throw SingularPivot("pivot slice condition number exceeds 1e12");
  return Eigen::PartialPivLU<Eigen::MatrixXcd>(p).inverse();
}

}  // namespace

std::string to_string(GammaHypothesis h) { return h == GammaHypothesis::half ? "half" : "full"; }

GammaHypothesis other(GammaHypothesis h) {
  return h == GammaHypothesis::half ? GammaHypothesis::full : GammaHypothesis::half;
}

std::complex<double> gamma_from_c(double c, GammaHypothesis hypothesis) {
  if (!(c > 0.0)) throw NonPositiveC("gamma requires c > 0, got " + std::to_string(c));
  const double magnitude = hypothesis == GammaHypothesis::half ? std::sqrt(c / 2.0) : std::sqrt(c);
  return {0.0, magnitude};
}

std::vector<Slice> assemble_slices(const ThirdDerivativeTensor& tensor) {
  const auto size = static_cast<Eigen::Index>(tensor.size());
  std::vector<Slice> slices;
  for (Eigen::Index i = 0; i < size; ++i) {
    Slice s(size, size);
    for (Eigen::Index k = 0; k < size; ++k)
      for (Eigen::Index l = 0; l < size; ++l)
        s(k, l) = tensor(static_cast<std::size_t>(i), static_cast<std::size_t>(k), static_cast<std::size_t>(l));
    slices.push_back(std::move(s));
  }
  return slices;
}

double inf_norm(const Slice& m) { return m.rows() == 0 ? 0.0 : m.cwiseAbs().rowwise().sum().maxCoeff(); }

double commutator_residual(std::span<const Slice> slices) {
  double worst = 0.0;
  for (std::size_t i = 0; i < slices.size(); ++i)
    for (std::size_t j = i + 1; j < slices.size(); ++j) {
      const Slice comm = slices[i] * slices[j] - slices[j] * slices[i];
      worst = std::max(worst, inf_norm(comm) / (inf_norm(slices[i]) * inf_norm(slices[j]) + kNormFloor));
    }
  return worst;
}

double eq1_residual(std::span<const Slice> slices, std::size_t pivot) {
  const Eigen::MatrixXcd inv = pivot_inverse(slices, pivot);
  double worst = 0.0;
  for (std::size_t i = 0; i < slices.size(); ++i)
    for (std::size_t j = i + 1; j < slices.size(); ++j) {
      const Slice lhs = slices[i] * inv * slices[j];
      const Slice rhs = slices[j] * inv * slices[i];
      worst = std::max(worst, inf_norm(lhs - rhs) / (inf_norm(slices[i]) * inf_norm(slices[j]) + kNormFloor));
    }
  return worst;
}

std::vector<PairResidual> pair_residuals(std::span<const Slice> slices, std::size_t pivot) {
  const Eigen::MatrixXcd inv = pivot_inverse(slices, pivot);
  std::vector<PairResidual> out;
  for (std::size_t i = 0; i < slices.size(); ++i)
    for (std::size_t j = i + 1; j < slices.size(); ++j) {
      const double scale = inf_norm(slices[i]) * inf_norm(slices[j]) + kNormFloor;
      const Slice comm = slices[i] * slices[j] - slices[j] * slices[i];
      const Slice eq1 = slices[i] * inv * slices[j] - slices[j] * inv * slices[i];
      out.push_back({i, j, inf_norm(comm) / scale, inf_norm(eq1) / scale});
    }
  return out;
}

PointResidual evaluate_point(const PrepotentialParams& params, const EvaluationPoint& point, std::size_t index) {
  const std::vector<Slice> slices = assemble_slices(third_derivative_tensor(params, point));
  PointResidual out;
  out.point_index = index;
  out.margin = point.margin;
  out.pairs = pair_residuals(slices, params.rank());
  for (const auto& p : out.pairs) {
    out.commutator = std::max(out.commutator, p.commutator);
    out.eq1 = std::max(out.eq1, p.eq1);
  }
  return out;
}

Rational weighted_canonical_constant(const RootSystem& rs, std::span<const Rational> orbit_weights) {
  return extract_canonical_constant(coupling_tensor(rs, orbit_weights), rs.projector).c;
}

WdvvReport verify_wdvv(const RootSystem& rs, std::span<const Rational> orbit_weights, GammaHypothesis hypothesis,
                       const VerifyOptions& options) {
  WdvvReport report;
  report.system = rs.spec;
  report.hypothesis = hypothesis;
  report.multiplicities.assign(orbit_weights.begin(), orbit_weights.end());
  report.tolerance = options.tolerance;
  if (rs.rank < 2) {
    // Rank 1: commutativity is vacuous and c is undefined; any nonzero gamma works.
    report.gamma = {0.0, 1.0};
    report.note = "rank 1: WDVV vacuous";
  } else {
    report.c = weighted_canonical_constant(rs, orbit_weights);
    report.gamma = gamma_from_c(to_double(*report.c), hypothesis);
  }
  const PrepotentialParams params = make_params(rs, to_doubles(orbit_weights), report.gamma);
  report.points = sample_chamber_point(rs, options.seed, options.margin, options.samples);
  for (std::size_t p = 0; p < report.points.size(); ++p) {
    PointResidual r = evaluate_point(params, report.points[p], p);
    report.max_commutator_residual = std::max(report.max_commutator_residual, r.commutator);
    report.max_eq1_residual = std::max(report.max_eq1_residual, r.eq1);
    report.per_point.push_back(std::move(r));
  }
  report.pass = report.max_commutator_residual <= options.tolerance && report.max_eq1_residual <= options.tolerance;
  return report;
}

GammaScanReport gamma_scan(const RootSystem& rs, std::span<const Rational> orbit_weights, std::uint64_t seed,
                           std::size_t samples, double margin, double tolerance) {
  if (rs.rank < 2) throw DegenerateRank(rs.spec.name() + ": gamma scan needs rank >= 2");
  GammaScanReport report;
  report.system = rs.spec;
  report.multiplicities.assign(orbit_weights.begin(), orbit_weights.end());
  report.c = weighted_canonical_constant(rs, orbit_weights);
  const std::vector<EvaluationPoint> points = sample_chamber_point(rs, seed, margin, samples);
  const std::array<GammaHypothesis, 2> hypotheses{GammaHypothesis::half, GammaHypothesis::full};
  for (std::size_t h = 0; h < hypotheses.size(); ++h) {
    HypothesisOutcome& out = report.outcomes[h];
    out.hypothesis = hypotheses[h];
    out.gamma = gamma_from_c(to_double(report.c), hypotheses[h]);
    const PrepotentialParams params = make_params(rs, to_doubles(orbit_weights), out.gamma);
    for (std::size_t p = 0; p < points.size(); ++p) {
      const PointResidual r = evaluate_point(params, points[p], p);
      out.max_commutator_residual = std::max(out.max_commutator_residual, r.commutator);
      out.max_eq1_residual = std::max(out.max_eq1_residual, r.eq1);
    }
    out.passes = out.max_commutator_residual < tolerance;
    if (out.passes) report.passing.push_back(out.hypothesis);
  }
  if (report.passing.empty()) report.verdict = "none";
  else if (report.passing.size() == 2) report.verdict = "both";
  else report.verdict = to_string(report.passing.front());
  return report;
}

}  // namespace trigwdvv
