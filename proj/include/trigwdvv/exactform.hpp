#pragma once

// The coupling 4-tensor
//   S_ijlm = sum_{a>0, b>0} k_a k_b (a,b) (a_i b_j - a_j b_i)(a_l b_m - a_m b_l)
// in exact arithmetic, its canonical constant c with
//   S_ijlm = c (P_il P_jm - P_im P_jl)        (P = projector onto span R),
// and the audit of the published c values.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trigwdvv/rational.hpp"
#include "trigwdvv/rootsystems.hpp"

namespace trigwdvv {

class CouplingTensor {
 public:
  CouplingTensor() = default;
  CouplingTensor(RootSystemSpec system, std::size_t rank, std::size_t dim)
      : system_(system), rank_(rank), dim_(dim), entries_(dim * dim * dim * dim) {}

  const RootSystemSpec& system() const { return system_; }
  std::size_t rank() const { return rank_; }
  std::size_t dim() const { return dim_; }

  Rational& operator()(std::size_t i, std::size_t j, std::size_t l, std::size_t m) {
    return entries_[((i * dim_ + j) * dim_ + l) * dim_ + m];
  }
  const Rational& operator()(std::size_t i, std::size_t j, std::size_t l, std::size_t m) const {
    return entries_[((i * dim_ + j) * dim_ + l) * dim_ + m];
  }

  /// Per-orbit weights the tensor was built with (empty for raw sums).
  const std::vector<Rational>& multiplicities() const { return multiplicities_; }
  void set_multiplicities(std::vector<Rational> k) { multiplicities_ = std::move(k); }

  /// sum_{i,j} S_ijij
  Rational trace_contraction() const;
  bool is_zero() const;
  Rational max_abs() const;

  /// S'_ijlm = sum g_ia g_jb g_lc g_md S_abcd
  CouplingTensor conjugated(const RationalMatrix& g) const;

  /// Contracts the first slot with w: sum_i w_i S_ijlm, flattened over (j, l, m).
  std::vector<Rational> contract_first(const RationalVector& w) const;

  CouplingTensor& operator+=(const CouplingTensor& other);
  CouplingTensor scaled(const Rational& factor) const;

  friend bool operator==(const CouplingTensor& a, const CouplingTensor& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

  const std::vector<Rational>& entries() const { return entries_; }

 private:
  RootSystemSpec system_{};
  std::size_t rank_ = 0;
  std::size_t dim_ = 0;
  std::vector<Rational> entries_;
  std::vector<Rational> multiplicities_;
};

/// Unweighted sum over ordered pairs (a, b) drawn from `left` x `right`.
CouplingTensor pair_sum_tensor(const RootSystem& rs, const std::vector<RationalVector>& left,
                               const std::vector<RationalVector>& right);

/// The operative tensor, weighted by one multiplicity per orbit.
CouplingTensor coupling_tensor(const RootSystem& rs, std::span<const Rational> orbit_weights);
/// All multiplicities equal to one.
CouplingTensor coupling_tensor(const RootSystem& rs);
/// One weight per positive root; throws MultiplicityOrbitMismatch unless the
/// weights are constant on orbits.
CouplingTensor coupling_tensor_from_root_weights(const RootSystem& rs,
                                                 std::span<const Rational> root_weights);
/// Same sum over an alternative positive system (e.g. w(R+)).
CouplingTensor coupling_tensor_for_positive_system(const RootSystem& rs,
                                                   const std::vector<RationalVector>& positive,
                                                   std::span<const Rational> orbit_weights);

enum class Verdict { match, mismatch, no_table_entry };
std::string to_string(Verdict v);

struct CanonicalFormResult {
  Rational c;
  /// max |S - c (P (x) P antisymmetrized)|
  Rational proportionality_residual;
  std::optional<Rational> table_value;
  Verdict verdict = Verdict::no_table_entry;
};

/// Throws DegenerateRank below rank 2.
CanonicalFormResult extract_canonical_constant(const CouplingTensor& tensor, const RationalMatrix& projector);

/// The published closed forms; nullopt where no column exists (G2).
std::optional<Rational> table_value(const RootSystemSpec& spec);

struct TableComparison {
  RootSystemSpec system;
  Rational computed;
  std::optional<Rational> table;
  Verdict verdict = Verdict::no_table_entry;
};

TableComparison table_compare(const RootSystemSpec& spec, const Rational& c);

/// The 1/4-weighted sum over the full R x R. Every summand is odd under
/// b -> -b, so the result vanishes identically.
CouplingTensor parity_erratum_check(const RootSystem& rs);

struct OrbitPairCoefficient {
  int first = 0;
  int second = 0;
  Rational coefficient;
  Rational proportionality_residual;
};

/// c(k) = sum over unordered orbit pairs (o <= o') of coefficient * k_o * k_o'.
struct MultiplicityPolynomial {
  RootSystemSpec system;
  std::vector<OrbitPairCoefficient> terms;

  Rational evaluate(std::span<const Rational> orbit_weights) const;
};

MultiplicityPolynomial multiplicity_polynomial(const RootSystem& rs);

}  // namespace trigwdvv
