#include "trigwdvv/dunkl.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>

#include "trigwdvv/errors.hpp"
#include "trigwdvv/exactform.hpp"

namespace trigwdvv {

namespace {

using IntMatrix = std::vector<std::int64_t>;

// (b, b) I - 2 b b^T for an integer vector b: the reflection scaled by (b, b).
IntMatrix scaled_reflection(const std::vector<std::int64_t>& b, std::int64_t& norm) {
  const std::size_t d = b.size();
  norm = 0;
  for (auto x : b) norm = checked_add(norm, checked_mul(x, x));
  IntMatrix m(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m[i * d + j] = (i == j ? norm : 0) - 2 * checked_mul(b[i], b[j]);
  return m;
}

// Entries followed by the denominator, all divided by their common gcd.
std::vector<std::int64_t> canonical_key(const IntMatrix& m, std::int64_t denominator) {
  std::int64_t g = denominator;
  for (auto x : m) g = std::gcd(g, x);
  std::vector<std::int64_t> key;
  key.reserve(m.size() + 1);
  for (auto x : m) key.push_back(x / g);
  key.push_back(denominator / g);
  return key;
}

RationalMatrix key_to_matrix(const std::vector<std::int64_t>& key, std::size_t d) {
  RationalMatrix m(d, d);
  const std::int64_t den = key.back();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = Rational(key[i * d + j], den);
  return m;
}

std::vector<std::pair<std::size_t, std::size_t>> packed_index(std::size_t d) {
  std::vector<std::pair<std::size_t, std::size_t>> index;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) index.emplace_back(i, j);
  return index;
}

double max_abs(const std::vector<double>& v) {
  double worst = 0.0;
  for (double x : v) worst = std::max(worst, std::fabs(x));
  return worst;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::fabs(a[i] - b[i]));
  return worst;
}

// Dense d^4 tensor from a packed (i<j, l<m) one.
std::vector<double> unpack(const std::vector<double>& packed, std::size_t d) {
  const auto index = packed_index(d);
  std::vector<double> full(d * d * d * d, 0.0);
  auto at = [&](std::size_t i, std::size_t j, std::size_t l, std::size_t m) -> double& {
    return full[((i * d + j) * d + l) * d + m];
  };
  for (std::size_t p = 0; p < index.size(); ++p)
    for (std::size_t q = 0; q < index.size(); ++q) {
      const double v = packed[p * index.size() + q];
      const auto [i, j] = index[p];
      const auto [l, m] = index[q];
      at(i, j, l, m) = v;
      at(j, i, l, m) = -v;
      at(i, j, m, l) = -v;
      at(j, i, m, l) = v;
    }
  return full;
}

// Pulls a dense ambient 4-tensor back to chart coordinates, one slot at a time.
std::vector<double> to_chart(const std::vector<double>& ambient, const Eigen::MatrixXd& chart) {
  const auto d = static_cast<std::size_t>(chart.rows());
  const auto n = static_cast<std::size_t>(chart.cols());
  std::vector<double> current = ambient;
  std::array<std::size_t, 4> dims{d, d, d, d};
  for (std::size_t slot = 0; slot < 4; ++slot) {
    std::array<std::size_t, 4> next_dims = dims;
    next_dims[slot] = n;
    std::vector<double> next(next_dims[0] * next_dims[1] * next_dims[2] * next_dims[3], 0.0);
    for (std::size_t i = 0; i < next_dims[0]; ++i)
      for (std::size_t j = 0; j < next_dims[1]; ++j)
        for (std::size_t l = 0; l < next_dims[2]; ++l)
          for (std::size_t m = 0; m < next_dims[3]; ++m) {
            std::array<std::size_t, 4> idx{i, j, l, m};
            const std::size_t target = idx[slot];
            double sum = 0.0;
            for (std::size_t a = 0; a < d; ++a) {
              idx[slot] = a;
              sum += chart(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(target)) *
                     current[((idx[0] * dims[1] + idx[1]) * dims[2] + idx[2]) * dims[3] + idx[3]];
            }
            next[((i * next_dims[1] + j) * next_dims[2] + l) * next_dims[3] + m] = sum;
          }
    current = std::move(next);
    dims = next_dims;
  }
  return current;
}

}  // namespace

RationalMatrix reflection_matrix(const RationalVector& alpha) {
  const Rational norm = dot(alpha, alpha);
  if (norm == 0) throw ZeroRoot("reflection through a zero vector");
  const std::size_t d = alpha.size();
  RationalMatrix m = RationalMatrix::identity(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) -= 2 * alpha[i] * alpha[j] / norm;
  return m;
}

bool Fiber::is_identity() const { return element == RationalMatrix::identity(element.rows()); }

std::size_t FiberPartition::pair_count() const {
  std::size_t total = 0;
  for (const auto& f : fibers) total += f.pairs.size();
  return total;
}

FiberPartition fiber_partition(const RootSystem& rs) {
  const IntegerLattice lattice = to_integer_lattice(rs.positive_roots);
  const std::size_t d = rs.ambient_dim;
  const std::size_t count = rs.positive_roots.size();
  std::vector<IntMatrix> reflections(count);
  std::vector<std::int64_t> norms(count);
  for (std::size_t i = 0; i < count; ++i) reflections[i] = scaled_reflection(lattice.rows[i], norms[i]);

  FiberPartition out;
  out.system = rs.spec;
  std::map<std::vector<std::int64_t>, std::size_t> lookup;
  IntMatrix product(d * d);
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = 0; b < count; ++b) {
      const IntMatrix& ra = reflections[a];
      const IntMatrix& rb = reflections[b];
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          std::int64_t sum = 0;
          for (std::size_t k = 0; k < d; ++k) sum = checked_add(sum, checked_mul(ra[i * d + k], rb[k * d + j]));
          product[i * d + j] = sum;
        }
      auto key = canonical_key(product, checked_mul(norms[a], norms[b]));
      auto [it, inserted] = lookup.try_emplace(std::move(key), out.fibers.size());
      if (inserted) out.fibers.push_back({key_to_matrix(it->first, d), {}});
      out.fibers[it->second].pairs.emplace_back(a, b);
    }
  return out;
}

bool fiber_aggregate_matches(const RootSystem& rs, const FiberPartition& partition) {
  const IntegerLattice lattice = to_integer_lattice(rs.positive_roots);
  const std::size_t d = rs.ambient_dim;
  const auto index = packed_index(d);
  std::vector<std::int64_t> total(index.size() * index.size(), 0);
  std::vector<std::int64_t> fiber_sum(total.size());
  std::vector<std::int64_t> bivector(index.size());
  for (const auto& fiber : partition.fibers) {
    std::fill(fiber_sum.begin(), fiber_sum.end(), 0);
    for (const auto& [a, b] : fiber.pairs) {
      const auto& va = lattice.rows[a];
      const auto& vb = lattice.rows[b];
      std::int64_t ab = 0;
      for (std::size_t i = 0; i < d; ++i) ab = checked_add(ab, checked_mul(va[i], vb[i]));
      for (std::size_t p = 0; p < index.size(); ++p) {
        const auto [i, j] = index[p];
        bivector[p] = checked_mul(va[i], vb[j]) - checked_mul(va[j], vb[i]);
      }
      for (std::size_t p = 0; p < index.size(); ++p)
        for (std::size_t q = 0; q < index.size(); ++q)
          fiber_sum[p * index.size() + q] =
              checked_add(fiber_sum[p * index.size() + q], checked_mul(checked_mul(ab, bivector[p]), bivector[q]));
    }
    for (std::size_t k = 0; k < total.size(); ++k) total[k] = checked_add(total[k], fiber_sum[k]);
  }
  const Rational scale = Rational(BigInt(1), boost::multiprecision::pow(BigInt(lattice.denominator), 6));
  CouplingTensor regrouped(rs.spec, rs.rank, d);
  for (std::size_t p = 0; p < index.size(); ++p)
    for (std::size_t q = 0; q < index.size(); ++q) {
      const Rational v = scale * total[p * index.size() + q];
      const auto [i, j] = index[p];
      const auto [l, m] = index[q];
      regrouped(i, j, l, m) = v;
      regrouped(j, i, l, m) = -v;
      regrouped(i, j, m, l) = -v;
      regrouped(j, i, m, l) = v;
    }
  return regrouped == coupling_tensor(rs);
}

std::string to_string(DunklOutcome o) {
  switch (o) {
    case DunklOutcome::fiberwise: return "fiberwise";
    case DunklOutcome::aggregate_only: return "identity holds only in aggregate";
    case DunklOutcome::fails: return "fails";
  }
  return "unknown";
}

FiberCheckReport fiber_identity_check(const RootSystem& rs, const FiberPartition& partition,
                                      const EvaluationPoint& point, double tolerance) {
  const std::size_t d = rs.ambient_dim;
  const auto index = packed_index(d);
  const std::size_t packed = index.size() * index.size();
  const Eigen::MatrixXd roots = rs.positive_roots_real();
  const Eigen::VectorXd ambient_point = rs.chart * point.a;
  const Eigen::VectorXd pairings = roots * ambient_point;
  if (!(pairings.minCoeff() > 0.0)) throw ChamberViolation("Dunkl check requested outside the positive chamber");

  std::vector<double> coth_values(static_cast<std::size_t>(pairings.size()));
  for (Eigen::Index r = 0; r < pairings.size(); ++r) coth_values[static_cast<std::size_t>(r)] = coth_third(pairings(r));

  FiberCheckReport report;
  report.system = rs.spec;
  report.point = point;
  std::vector<double> weighted_total(packed, 0.0), unweighted_total(packed, 0.0);
  std::vector<double> weighted(packed), unweighted(packed), bivector(index.size());
  for (std::size_t f = 0; f < partition.fibers.size(); ++f) {
    std::fill(weighted.begin(), weighted.end(), 0.0);
    std::fill(unweighted.begin(), unweighted.end(), 0.0);
    for (const auto& [a, b] : partition.fibers[f].pairs) {
      const auto ra = roots.row(static_cast<Eigen::Index>(a));
      const auto rb = roots.row(static_cast<Eigen::Index>(b));
      const double ab = ra.dot(rb);
      if (ab == 0.0) continue;
      for (std::size_t p = 0; p < index.size(); ++p) {
        const auto [i, j] = index[p];
        const auto ei = static_cast<Eigen::Index>(i), ej = static_cast<Eigen::Index>(j);
        bivector[p] = ra(ei) * rb(ej) - ra(ej) * rb(ei);
      }
      const double w = coth_values[a] * coth_values[b];
      for (std::size_t p = 0; p < index.size(); ++p) {
        if (bivector[p] == 0.0) continue;
        const double left = ab * bivector[p];
        for (std::size_t q = 0; q < index.size(); ++q) {
          const double term = left * bivector[q];
          unweighted[p * index.size() + q] += term;
          weighted[p * index.size() + q] += w * term;
        }
      }
    }
    FiberResidual r;
    r.fiber = f;
    r.size = partition.fibers[f].pairs.size();
    r.scale = max_abs(unweighted);
    const double diff = max_abs_diff(weighted, unweighted);
    r.residual = r.scale < kFiberAbsoluteFloor ? diff : diff / r.scale;
    report.max_fiber_residual = std::max(report.max_fiber_residual, r.residual);
    report.fibers.push_back(r);
    for (std::size_t k = 0; k < packed; ++k) {
      weighted_total[k] += weighted[k];
      unweighted_total[k] += unweighted[k];
    }
  }
  const double total_scale = std::max(max_abs(unweighted_total), kFiberAbsoluteFloor);
  report.aggregate_residual = max_abs_diff(weighted_total, unweighted_total) / total_scale;

  // Cross-check against the commutator data of the unit-multiplicity tensor.
  const std::size_t n = rs.rank;
  const PrepotentialParams params = make_params(rs, std::vector<double>(rs.orbit_count(), 1.0), {0.0, 1.0});
  const ThirdDerivativeTensor t = third_derivative_tensor(params, point);
  const std::vector<double> charted = to_chart(unpack(weighted_total, d), rs.chart);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t m = 0; m < n; ++m) {
          double lhs = 0.0;
          for (std::size_t k = 0; k < n; ++k)
            lhs += t(i, l, k).real() * t(k, j, m).real() - t(j, l, k).real() * t(k, i, m).real();
          const double expected = charted[((i * n + j) * n + l) * n + m];
          worst = std::max(worst, std::fabs(2.0 * lhs - expected));
          scale = std::max(scale, std::fabs(expected));
        }
  report.third_derivative_residual = worst / std::max(scale, kFiberAbsoluteFloor);

  if (report.max_fiber_residual < tolerance) report.outcome = DunklOutcome::fiberwise;
  else if (report.aggregate_residual < tolerance) report.outcome = DunklOutcome::aggregate_only;
  else report.outcome = DunklOutcome::fails;
  return report;
}

}  // namespace trigwdvv
