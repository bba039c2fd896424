#include "trigwdvv/rootsystems.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

#include "trigwdvv/errors.hpp"

namespace trigwdvv {

namespace {

using RootSet = std::set<RationalVector, decltype(&lex_less)>;

RationalVector unit(std::size_t dim, std::size_t i, const Rational& scale = 1) {
  RationalVector v(dim);
  v[i] = scale;
  return v;
}

RationalVector combine(std::size_t dim, std::initializer_list<std::pair<std::size_t, Rational>> terms) {
  RationalVector v(dim);
  for (const auto& [i, c] : terms) v[i] += c;
  return v;
}

RationalVector negated(const RationalVector& v) {
  RationalVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

bool is_zero(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

// +-e_i +- e_j for i < j.
void append_long_pairs(std::vector<RationalVector>& out, std::size_t dim, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) out.push_back(combine(dim, {{i, si}, {j, sj}}));
}

std::vector<RationalVector> e8_roots() {
  std::vector<RationalVector> out;
  append_long_pairs(out, 8, 8);
  const Rational half(1, 2);
  for (unsigned mask = 0; mask < 256; ++mask) {
    if (__builtin_popcount(mask) % 2 != 0) continue;
    RationalVector v(8);
    for (std::size_t i = 0; i < 8; ++i) v[i] = (mask >> i) & 1U ? Rational(-half) : half;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<RationalVector> e8_restriction(const std::vector<RationalVector>& orthogonal_to) {
  std::vector<RationalVector> out;
  for (auto& r : e8_roots()) {
    bool keep = std::all_of(orthogonal_to.begin(), orthogonal_to.end(),
                            [&](const RationalVector& w) { return dot(r, w) == 0; });
    if (keep) out.push_back(std::move(r));
  }
  return out;
}

// Inverse Gram matrix of a basis, reused for many expansions.
class BasisExpander {
 public:
  explicit BasisExpander(const std::vector<RationalVector>& basis) : basis_(basis) {
    const std::size_t n = basis.size();
    RationalMatrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) gram(i, j) = dot(basis[i], basis[j]);
    try {
      gram_inverse_ = inverse(gram);
    } catch (const std::domain_error&) {
      throw NotABase("simple roots are linearly dependent");
    }
  }

  RationalVector expand(const RationalVector& v) const {
    const std::size_t n = basis_.size();
    RationalVector rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = dot(basis_[i], v);
    RationalVector coeffs = gram_inverse_.apply(rhs);
    RationalVector rebuilt(v.size());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < v.size(); ++k) rebuilt[k] += coeffs[i] * basis_[i][k];
    if (rebuilt != v) throw NotABase("vector lies outside the span of the simple roots");
    return coeffs;
  }

 private:
  const std::vector<RationalVector>& basis_;
  RationalMatrix gram_inverse_;
};

}  // namespace

char family_letter(Family f) { return "ABCDEFG"[static_cast<int>(f)]; }

std::string RootSystemSpec::name() const {
  return std::string(1, family_letter(family)) + std::to_string(rank);
}

RootSystemSpec RootSystemSpec::parse(std::string_view text) {
  if (text.size() < 2) throw UsageError("malformed system '" + std::string(text) + "' (expected e.g. B4)");
  const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(text.front())));
  if (letter < 'A' || letter > 'G') throw UsageError("unknown root system family '" + std::string(text) + "'");
  int rank = 0;
  for (char ch : text.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(ch)) || rank > 1000)
      throw UsageError("malformed system rank in '" + std::string(text) + "'");
    rank = rank * 10 + (ch - '0');
  }
  RootSystemSpec spec{static_cast<Family>(letter - 'A'), rank};
  check_admissible(spec);
  return spec;
}

void check_admissible(const RootSystemSpec& spec) {
  const int n = spec.rank;
  const std::string name = spec.name();
  auto reject = [&](const std::string& rule) { throw InadmissibleRank(name + " is not admissible: " + rule); };
  switch (spec.family) {
    case Family::A: if (n < 1) reject("A_N requires N >= 1"); break;
    case Family::B: if (n < 2) reject("B_N requires N >= 2"); break;
    case Family::C: if (n < 2) reject("C_N requires N >= 2"); break;
    case Family::D: if (n < 3) reject("D_N requires N >= 3 (D_2 is reducible)"); break;
    case Family::E: if (n < 6 || n > 8) reject("E_N requires N in {6, 7, 8}"); break;
    case Family::F: if (n != 4) reject("F_N requires N = 4"); break;
    case Family::G: if (n != 2) reject("G_N requires N = 2"); break;
  }
}

std::vector<RootSystemSpec> all_table_systems() {
  std::vector<RootSystemSpec> out;
  for (int n = 1; n <= 6; ++n) out.push_back({Family::A, n});
  for (int n = 2; n <= 6; ++n) out.push_back({Family::B, n});
  for (int n = 2; n <= 6; ++n) out.push_back({Family::C, n});
  for (int n = 3; n <= 6; ++n) out.push_back({Family::D, n});
  for (int n = 6; n <= 8; ++n) out.push_back({Family::E, n});
  out.push_back({Family::F, 4});
  out.push_back({Family::G, 2});
  return out;
}

std::vector<RationalVector> bourbaki_simple_roots(const RootSystemSpec& spec) {
  check_admissible(spec);
  const std::size_t n = static_cast<std::size_t>(spec.rank);
  const Rational half(1, 2);
  std::vector<RationalVector> out;
  auto chain = [&](std::size_t dim, std::size_t links) {
    for (std::size_t i = 0; i < links; ++i) out.push_back(combine(dim, {{i, 1}, {i + 1, -1}}));
  };
  switch (spec.family) {
    case Family::A: chain(n + 1, n); break;
    case Family::B: chain(n, n - 1); out.push_back(unit(n, n - 1)); break;
    case Family::C: chain(n, n - 1); out.push_back(unit(n, n - 1, 2)); break;
    case Family::D: chain(n, n - 1); out.push_back(combine(n, {{n - 2, 1}, {n - 1, 1}})); break;
    case Family::F:
      out.push_back(combine(4, {{1, 1}, {2, -1}}));
      out.push_back(combine(4, {{2, 1}, {3, -1}}));
      out.push_back(unit(4, 3));
      out.push_back(RationalVector{half, -half, -half, -half});
      break;
    case Family::G:
      out.push_back(combine(3, {{0, 1}, {1, -1}}));
      out.push_back(combine(3, {{0, -2}, {1, 1}, {2, 1}}));
      break;
    case Family::E: {
      out.push_back(RationalVector{half, -half, -half, -half, -half, -half, -half, half});
      out.push_back(combine(8, {{0, 1}, {1, 1}}));
      for (std::size_t i = 0; i + 2 < n; ++i) out.push_back(combine(8, {{i + 1, 1}, {i, -1}}));
      break;
    }
  }
  return out;
}

std::vector<RationalVector> bourbaki_roots(const RootSystemSpec& spec) {
  check_admissible(spec);
  const std::size_t n = static_cast<std::size_t>(spec.rank);
  std::vector<RationalVector> out;
  switch (spec.family) {
    case Family::A:
      for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= n; ++j)
          if (i != j) out.push_back(combine(n + 1, {{i, 1}, {j, -1}}));
      break;
    case Family::B:
    case Family::C:
    case Family::D:
      append_long_pairs(out, n, n);
      if (spec.family != Family::D) {
        const Rational scale = spec.family == Family::B ? 1 : 2;
        for (std::size_t i = 0; i < n; ++i) {
          out.push_back(unit(n, i, scale));
          out.push_back(unit(n, i, -scale));
        }
      }
      break;
    case Family::F: {
      append_long_pairs(out, 4, 4);
      for (std::size_t i = 0; i < 4; ++i) {
        out.push_back(unit(4, i, 1));
        out.push_back(unit(4, i, -1));
      }
      const Rational half(1, 2);
      for (unsigned mask = 0; mask < 16; ++mask) {
        RationalVector v(4);
        for (std::size_t i = 0; i < 4; ++i) v[i] = (mask >> i) & 1U ? Rational(-half) : half;
        out.push_back(std::move(v));
      }
      break;
    }
    case Family::G:
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
          if (i == j) continue;
          out.push_back(combine(3, {{i, 1}, {j, -1}}));
          out.push_back(combine(3, {{i, 2}, {j, -1}, {3 - i - j, -1}}));
          out.push_back(combine(3, {{i, -2}, {j, 1}, {3 - i - j, 1}}));
        }
      break;
    case Family::E:
      if (n == 8) {
        out = e8_roots();
      } else {
        std::vector<RationalVector> constraints{combine(8, {{6, 1}, {7, 1}})};
        if (n == 6) constraints.push_back(combine(8, {{5, 1}, {6, -1}}));
        out = e8_restriction(constraints);
      }
      break;
  }
  // G2 long roots appear twice from the (i, j) loop.
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RationalVector reflect_vector(const RationalVector& alpha, const RationalVector& v) {
  if (alpha.size() != v.size()) throw std::invalid_argument("reflect_vector: dimension mismatch");
  const Rational norm = dot(alpha, alpha);
  if (norm == 0) throw ZeroRoot("cannot reflect through a zero vector");
  const Rational coeff = 2 * dot(v, alpha) / norm;
  RationalVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] - coeff * alpha[i];
  return out;
}

std::vector<RationalVector> root_closure(const std::vector<RationalVector>& simple_roots, std::size_t max_roots) {
  if (simple_roots.empty()) return {};
  for (const auto& s : simple_roots) {
    if (s.size() != simple_roots.front().size()) throw std::invalid_argument("root_closure: dimension mismatch");
    if (is_zero(s)) throw ZeroRoot("zero vector among simple roots");
  }
  BasisExpander independence_check(simple_roots);
  (void)independence_check;
  for (const auto& a : simple_roots)
    for (const auto& b : simple_roots) {
      const Rational cartan = 2 * dot(a, b) / dot(b, b);
      if (boost::multiprecision::denominator(cartan) != 1)
        throw NonCrystallographic("Cartan integer " + to_string(cartan) + " is not an integer");
    }

  RootSet seen(&lex_less);
  std::vector<RationalVector> frontier;
  for (const auto& s : simple_roots) {
    for (auto v : {s, negated(s)})
      if (seen.insert(v).second) frontier.push_back(v);
    if (seen.size() > max_roots) throw NoConvergence("root closure exceeded " + std::to_string(max_roots) + " vectors");
  }
  while (!frontier.empty()) {
    std::vector<RationalVector> next;
    for (const auto& v : frontier)
      for (const auto& s : simple_roots) {
        RationalVector image = reflect_vector(s, v);
        if (seen.insert(image).second) {
          if (seen.size() > max_roots)
            throw NoConvergence("root closure exceeded " + std::to_string(max_roots) + " vectors");
          next.push_back(std::move(image));
        }
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

RationalVector expand_over(const std::vector<RationalVector>& basis, const RationalVector& v) {
  return BasisExpander(basis).expand(v);
}

std::pair<std::vector<RationalVector>, std::vector<RationalVector>> positive_partition(
    const std::vector<RationalVector>& roots, const std::vector<RationalVector>& simple_roots) {
  BasisExpander expander(simple_roots);
  std::vector<RationalVector> positive, negative;
  for (const auto& r : roots) {
    const RationalVector coeffs = expander.expand(r);
    const bool nonneg = std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c >= 0; });
    const bool nonpos = std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c <= 0; });
    if (nonneg == nonpos) throw NotABase("root expansion has mixed signs over the given simple roots");
    (nonneg ? positive : negative).push_back(r);
  }
  return {std::move(positive), std::move(negative)};
}

RationalMatrix span_projector(const std::vector<RationalVector>& roots) {
  if (roots.empty()) throw std::invalid_argument("span_projector: empty root list");
  const std::size_t dim = roots.front().size();
  // Greedy independent subset, then P = B^T (B B^T)^{-1} B.
  std::vector<RationalVector> basis;
  for (const auto& r : roots) {
    std::vector<RationalVector> trial = basis;
    trial.push_back(r);
    RationalMatrix m(trial.size(), dim);
    for (std::size_t i = 0; i < trial.size(); ++i)
      for (std::size_t k = 0; k < dim; ++k) m(i, k) = trial[i][k];
    if (matrix_rank(m) == trial.size()) basis = std::move(trial);
    if (basis.size() == dim) break;
  }
  RationalMatrix b(basis.size(), dim);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t k = 0; k < dim; ++k) b(i, k) = basis[i][k];
  const RationalMatrix bt = b.transpose();
  return bt * inverse(b * bt) * b;
}

Eigen::VectorXd to_eigen(const RationalVector& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = to_double(v[i]);
  return out;
}

Eigen::MatrixXd to_eigen(const RationalMatrix& m) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(m(i, j));
  return out;
}

Eigen::MatrixXd orthonormal_chart(const RootSystem& rs) {
  const auto m = static_cast<Eigen::Index>(rs.ambient_dim);
  const auto n = static_cast<Eigen::Index>(rs.rank);
  if (m == n) return Eigen::MatrixXd::Identity(m, m);
  Eigen::MatrixXd basis(m, n);
  for (Eigen::Index j = 0; j < n; ++j) basis.col(j) = to_eigen(rs.simple_roots[static_cast<std::size_t>(j)]);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
  return qr.householderQ() * Eigen::MatrixXd::Identity(m, n);
}

std::string RootSystem::orbit_name(int orbit) const {
  if (orbit_count() == 1) return "single";
  return orbit == 0 ? "short" : "long";
}

int RootSystem::orbit_of(const RationalVector& root) const {
  if (!contains(root)) throw std::invalid_argument("orbit_of: vector is not a root");
  const Rational len = dot(root, root);
  auto it = std::find(orbit_lengths.begin(), orbit_lengths.end(), len);
  return static_cast<int>(it - orbit_lengths.begin());
}

bool RootSystem::contains(const RationalVector& v) const {
  return std::binary_search(roots.begin(), roots.end(), v, lex_less);
}

Eigen::MatrixXd RootSystem::positive_roots_real() const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(positive_roots.size()), static_cast<Eigen::Index>(ambient_dim));
  for (std::size_t i = 0; i < positive_roots.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = to_eigen(positive_roots[i]).transpose();
  return out;
}

Eigen::MatrixXd RootSystem::positive_roots_charted() const { return positive_roots_real() * chart; }

RootSystem build_root_system(const RootSystemSpec& spec) {
  check_admissible(spec);
  RootSystem rs;
  rs.spec = spec;
  rs.simple_roots = bourbaki_simple_roots(spec);
  rs.roots = bourbaki_roots(spec);
  rs.ambient_dim = rs.roots.front().size();
  rs.rank = rs.simple_roots.size();

  auto [positive, negative] = positive_partition(rs.roots, rs.simple_roots);
  (void)negative;
  rs.positive_roots = std::move(positive);
  std::sort(rs.positive_roots.begin(), rs.positive_roots.end(), lex_less);

  std::set<Rational> lengths;
  for (const auto& r : rs.positive_roots) lengths.insert(dot(r, r));
  rs.orbit_lengths.assign(lengths.begin(), lengths.end());
  for (const auto& r : rs.positive_roots) {
    auto it = std::find(rs.orbit_lengths.begin(), rs.orbit_lengths.end(), dot(r, r));
    rs.positive_orbit.push_back(static_cast<int>(it - rs.orbit_lengths.begin()));
  }

  rs.projector = span_projector(rs.simple_roots);
  rs.chart = orthonormal_chart(rs);
  return rs;
}

}  // namespace trigwdvv
