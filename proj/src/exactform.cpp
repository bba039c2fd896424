#include "trigwdvv/exactform.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "trigwdvv/errors.hpp"

namespace trigwdvv {

namespace {

// Accumulates sum (a,b) (a^b)_{ij} (a^b)_{lm} over the given index pairs of an
// integer lattice, storing only i<j, l<m. The result carries a factor D^6.
class PackedPairSum {
 public:
  explicit PackedPairSum(std::size_t dim) : dim_(dim), pairs_(dim * (dim - 1) / 2), sums_(pairs_ * pairs_, 0) {}

  void add(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    std::int64_t ab = 0;
    for (std::size_t i = 0; i < dim_; ++i) ab = checked_add(ab, checked_mul(a[i], b[i]));
    if (ab == 0) return;
    bivector_.clear();
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i + 1; j < dim_; ++j)
        bivector_.push_back(checked_add(checked_mul(a[i], b[j]), -checked_mul(a[j], b[i])));
    for (std::size_t p = 0; p < pairs_; ++p) {
      if (bivector_[p] == 0) continue;
      const std::int64_t left = checked_mul(ab, bivector_[p]);
      std::int64_t* row = &sums_[p * pairs_];
      for (std::size_t q = 0; q < pairs_; ++q) row[q] = checked_add(row[q], checked_mul(left, bivector_[q]));
    }
  }

  // Expands into a dense rational tensor scaled by `factor`.
  void expand_into(CouplingTensor& out, const Rational& factor) const {
    std::vector<std::pair<std::size_t, std::size_t>> index;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i + 1; j < dim_; ++j) index.emplace_back(i, j);
    for (std::size_t p = 0; p < pairs_; ++p)
      for (std::size_t q = 0; q < pairs_; ++q) {
        const std::int64_t v = sums_[p * pairs_ + q];
        if (v == 0) continue;
        const Rational value = factor * v;
        const auto [i, j] = index[p];
        const auto [l, m] = index[q];
        out(i, j, l, m) += value;
        out(j, i, l, m) -= value;
        out(i, j, m, l) -= value;
        out(j, i, m, l) += value;
      }
  }

 private:
  std::size_t dim_;
  std::size_t pairs_;
  std::vector<std::int64_t> sums_;
  std::vector<std::int64_t> bivector_;
};

Rational lattice_scale(std::int64_t denominator) {
  BigInt d6 = boost::multiprecision::pow(BigInt(denominator), 6);
  return Rational(BigInt(1), d6);
}

// Ordered orbit-pair blocks S_{o o'} over a positive system.
std::vector<CouplingTensor> orbit_blocks(const RootSystem& rs, const std::vector<RationalVector>& positive) {
  const std::size_t orbits = rs.orbit_count();
  std::vector<int> orbit(positive.size());
  for (std::size_t i = 0; i < positive.size(); ++i) orbit[i] = rs.orbit_of(positive[i]);
  const IntegerLattice lattice = to_integer_lattice(positive);
  const Rational scale = lattice_scale(lattice.denominator);

  std::vector<CouplingTensor> blocks;
  for (std::size_t o1 = 0; o1 < orbits; ++o1)
    for (std::size_t o2 = 0; o2 < orbits; ++o2) {
      PackedPairSum sum(rs.ambient_dim);
      for (std::size_t a = 0; a < positive.size(); ++a) {
        if (orbit[a] != static_cast<int>(o1)) continue;
        for (std::size_t b = 0; b < positive.size(); ++b)
          if (orbit[b] == static_cast<int>(o2)) sum.add(lattice.rows[a], lattice.rows[b]);
      }
      CouplingTensor block(rs.spec, rs.rank, rs.ambient_dim);
      sum.expand_into(block, scale);
      blocks.push_back(std::move(block));
    }
  return blocks;
}

CouplingTensor weighted_combination(const RootSystem& rs, const std::vector<CouplingTensor>& blocks,
                                    std::span<const Rational> orbit_weights) {
  const std::size_t orbits = rs.orbit_count();
  if (orbit_weights.size() != orbits)
    throw MultiplicityOrbitMismatch(rs.spec.name() + " has " + std::to_string(orbits) + " orbit(s), got " +
                                    std::to_string(orbit_weights.size()) + " weight(s)");
  CouplingTensor out(rs.spec, rs.rank, rs.ambient_dim);
  for (std::size_t o1 = 0; o1 < orbits; ++o1)
    for (std::size_t o2 = 0; o2 < orbits; ++o2) {
      const Rational w = orbit_weights[o1] * orbit_weights[o2];
      if (w != 0) out += blocks[o1 * orbits + o2].scaled(w);
    }
  out.set_multiplicities({orbit_weights.begin(), orbit_weights.end()});
  return out;
}

Rational proportionality_residual(const CouplingTensor& s, const RationalMatrix& p, const Rational& c) {
  const std::size_t d = s.dim();
  Rational worst = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l)
        for (std::size_t m = 0; m < d; ++m) {
          const Rational expected = c * (p(i, l) * p(j, m) - p(i, m) * p(j, l));
          const Rational dev = boost::multiprecision::abs(s(i, j, l, m) - expected);
          if (dev > worst) worst = dev;
        }
  return worst;
}

Rational canonical_ratio(const CouplingTensor& s) {
  const auto n = static_cast<long>(s.rank());
  if (n < 2) throw DegenerateRank(s.system().name() + ": c is undefined at rank " + std::to_string(n));
  return s.trace_contraction() / Rational(n * n - n);
}

}  // namespace

Rational CouplingTensor::trace_contraction() const {
  Rational sum = 0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) sum += (*this)(i, j, i, j);
  return sum;
}

bool CouplingTensor::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Rational& x) { return x == 0; });
}

Rational CouplingTensor::max_abs() const {
  Rational worst = 0;
  for (const auto& x : entries_) worst = std::max(worst, Rational(boost::multiprecision::abs(x)));
  return worst;
}

CouplingTensor CouplingTensor::conjugated(const RationalMatrix& g) const {
  if (g.rows() != dim_ || g.cols() != dim_) throw std::invalid_argument("conjugated: dimension mismatch");
  // One slot at a time: four passes of d^5 products.
  std::vector<Rational> current = entries_;
  const std::size_t d = dim_;
  const std::size_t stride[4] = {d * d * d, d * d, d, 1};
  for (std::size_t slot = 0; slot < 4; ++slot) {
    std::vector<Rational> next(current.size());
    for (std::size_t idx = 0; idx < current.size(); ++idx) {
      const std::size_t target = (idx / stride[slot]) % d;
      const std::size_t base = idx - target * stride[slot];
      Rational sum = 0;
      for (std::size_t a = 0; a < d; ++a) {
        const Rational& ga = g(target, a);
        if (ga == 0) continue;
        sum += ga * current[base + a * stride[slot]];
      }
      next[idx] = std::move(sum);
    }
    current = std::move(next);
  }
  CouplingTensor out(system_, rank_, dim_);
  out.entries_ = std::move(current);
  out.multiplicities_ = multiplicities_;
  return out;
}

std::vector<Rational> CouplingTensor::contract_first(const RationalVector& w) const {
  if (w.size() != dim_) throw std::invalid_argument("contract_first: dimension mismatch");
  std::vector<Rational> out(dim_ * dim_ * dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (w[i] == 0) continue;
    for (std::size_t rest = 0; rest < out.size(); ++rest) out[rest] += w[i] * entries_[i * out.size() + rest];
  }
  return out;
}

CouplingTensor& CouplingTensor::operator+=(const CouplingTensor& other) {
  if (other.dim_ != dim_) throw std::invalid_argument("CouplingTensor +=: dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

CouplingTensor CouplingTensor::scaled(const Rational& factor) const {
  CouplingTensor out = *this;
  for (auto& x : out.entries_) x *= factor;
  return out;
}

CouplingTensor pair_sum_tensor(const RootSystem& rs, const std::vector<RationalVector>& left,
                               const std::vector<RationalVector>& right) {
  std::vector<RationalVector> all = left;
  all.insert(all.end(), right.begin(), right.end());
  const IntegerLattice lattice = to_integer_lattice(all);
  PackedPairSum sum(rs.ambient_dim);
  for (std::size_t a = 0; a < left.size(); ++a)
    for (std::size_t b = 0; b < right.size(); ++b) sum.add(lattice.rows[a], lattice.rows[left.size() + b]);
  CouplingTensor out(rs.spec, rs.rank, rs.ambient_dim);
  sum.expand_into(out, lattice_scale(lattice.denominator));
  return out;
}

CouplingTensor coupling_tensor(const RootSystem& rs, std::span<const Rational> orbit_weights) {
  return coupling_tensor_for_positive_system(rs, rs.positive_roots, orbit_weights);
}

CouplingTensor coupling_tensor(const RootSystem& rs) {
  const std::vector<Rational> ones(rs.orbit_count(), Rational(1));
  return coupling_tensor(rs, ones);
}

CouplingTensor coupling_tensor_from_root_weights(const RootSystem& rs, std::span<const Rational> root_weights) {
  if (root_weights.size() != rs.positive_roots.size())
    throw std::invalid_argument("expected one weight per positive root");
  std::vector<std::optional<Rational>> per_orbit(rs.orbit_count());
  for (std::size_t i = 0; i < root_weights.size(); ++i) {
    auto& slot = per_orbit[static_cast<std::size_t>(rs.positive_orbit[i])];
    if (!slot) {
      slot = root_weights[i];
    } else if (*slot != root_weights[i]) {
      throw MultiplicityOrbitMismatch("multiplicities differ within the " + rs.orbit_name(rs.positive_orbit[i]) +
                                      " orbit of " + rs.spec.name());
    }
  }
  std::vector<Rational> weights;
  for (const auto& w : per_orbit) weights.push_back(w.value_or(Rational(0)));
  return coupling_tensor(rs, weights);
}

CouplingTensor coupling_tensor_for_positive_system(const RootSystem& rs, const std::vector<RationalVector>& positive,
                                                   std::span<const Rational> orbit_weights) {
  return weighted_combination(rs, orbit_blocks(rs, positive), orbit_weights);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::match: return "match";
    case Verdict::mismatch: return "mismatch";
    case Verdict::no_table_entry: return "no_table_entry";
  }
  return "unknown";
}

std::optional<Rational> table_value(const RootSystemSpec& spec) {
  const long n = spec.rank;
  switch (spec.family) {
    case Family::A: return Rational(2 * (n + 2));
    case Family::B: return Rational(4 * (2 * n - 3));
    case Family::C: return Rational(8 * (n + 2));
    case Family::D: return Rational(8 * (n - 2));
    case Family::E:
      if (n == 6) return Rational(6);
      if (n == 7) return Rational(96);
      return Rational(320);
    case Family::F: return Rational(30);
    case Family::G: return std::nullopt;
  }
  return std::nullopt;
}

TableComparison table_compare(const RootSystemSpec& spec, const Rational& c) {
  TableComparison out{spec, c, table_value(spec), Verdict::no_table_entry};
  if (out.table) out.verdict = (*out.table == c) ? Verdict::match : Verdict::mismatch;
  return out;
}

CanonicalFormResult extract_canonical_constant(const CouplingTensor& tensor, const RationalMatrix& projector) {
  if (projector.rows() != tensor.dim() || projector.cols() != tensor.dim())
    throw std::invalid_argument("extract_canonical_constant: projector dimension mismatch");
  CanonicalFormResult out;
  out.c = canonical_ratio(tensor);
  out.proportionality_residual = proportionality_residual(tensor, projector, out.c);
  const TableComparison cmp = table_compare(tensor.system(), out.c);
  out.table_value = cmp.table;
  out.verdict = cmp.verdict;
  return out;
}

CouplingTensor parity_erratum_check(const RootSystem& rs) {
  CouplingTensor out = pair_sum_tensor(rs, rs.roots, rs.roots);
  return out.scaled(Rational(1, 4));
}

Rational MultiplicityPolynomial::evaluate(std::span<const Rational> orbit_weights) const {
  Rational sum = 0;
  for (const auto& t : terms) {
    const auto a = static_cast<std::size_t>(t.first), b = static_cast<std::size_t>(t.second);
    if (a >= orbit_weights.size() || b >= orbit_weights.size())
      throw MultiplicityOrbitMismatch("too few orbit weights for " + system.name());
    sum += t.coefficient * orbit_weights[a] * orbit_weights[b];
  }
  return sum;
}

MultiplicityPolynomial multiplicity_polynomial(const RootSystem& rs) {
  MultiplicityPolynomial poly{rs.spec, {}};
  const std::size_t orbits = rs.orbit_count();
  const std::vector<CouplingTensor> blocks = orbit_blocks(rs, rs.positive_roots);
  for (std::size_t o1 = 0; o1 < orbits; ++o1)
    for (std::size_t o2 = o1; o2 < orbits; ++o2) {
      CouplingTensor block = blocks[o1 * orbits + o2];
      if (o1 != o2) block += blocks[o2 * orbits + o1];
      const Rational c = canonical_ratio(block);
      poly.terms.push_back({static_cast<int>(o1), static_cast<int>(o2), c,
                            proportionality_residual(block, rs.projector, c)});
    }
  return poly;
}

}  // namespace trigwdvv
