#pragma once

// Exact realizations of the irreducible crystallographic root systems in
// Bourbaki coordinates, with positive-root partitions, length orbits, the
// orthogonal projector onto span(R) and an orthonormal rank-dimensional chart.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "trigwdvv/rational.hpp"

namespace trigwdvv {

enum class Family { A, B, C, D, E, F, G };

struct RootSystemSpec {
  Family family = Family::A;
  int rank = 1;

  /// "B4", "E8", ...
  std::string name() const;

  /// Parses "B4", "e8", "G2". Throws UsageError on malformed text and
  /// InadmissibleRank on a well-formed but non-existent system.
  static RootSystemSpec parse(std::string_view text);

  friend bool operator==(const RootSystemSpec&, const RootSystemSpec&) = default;
};

char family_letter(Family f);

/// Throws InadmissibleRank naming the violated constraint.
void check_admissible(const RootSystemSpec& spec);

/// Every system reported by the "all" selector: classical ranks up to 6,
/// the exceptional types, and G2.
std::vector<RootSystemSpec> all_table_systems();

struct RootSystem {
  RootSystemSpec spec;
  std::size_t ambient_dim = 0;
  std::size_t rank = 0;

  /// All roots, lexicographically sorted.
  std::vector<RationalVector> roots;
  /// Positive roots, lexicographically sorted; pair indices elsewhere refer to this order.
  std::vector<RationalVector> positive_roots;
  /// Simple roots in Bourbaki numbering.
  std::vector<RationalVector> simple_roots;

  /// Squared length of each orbit, ascending (orbit 0 is the short orbit).
  std::vector<Rational> orbit_lengths;
  /// Orbit label of each positive root.
  std::vector<int> positive_orbit;

  RationalMatrix projector;
  /// ambient_dim x rank, orthonormal columns spanning span(R).
  Eigen::MatrixXd chart;

  std::size_t orbit_count() const { return orbit_lengths.size(); }
  /// "single" for simply-laced systems, otherwise "short"/"long".
  std::string orbit_name(int orbit) const;
  /// Orbit label of an arbitrary root; throws std::invalid_argument for non-roots.
  int orbit_of(const RationalVector& root) const;
  bool contains(const RationalVector& v) const;

  /// Positive roots as doubles, one per row (|R+| x ambient_dim).
  Eigen::MatrixXd positive_roots_real() const;
  /// Positive roots in chart coordinates, one per row (|R+| x rank).
  Eigen::MatrixXd positive_roots_charted() const;
};

RootSystem build_root_system(const RootSystemSpec& spec);

/// v - 2 (v, alpha) / (alpha, alpha) alpha.
RationalVector reflect_vector(const RationalVector& alpha, const RationalVector& v);

inline constexpr std::size_t kMaxClosureSize = 10000;

/// Smallest reflection- and negation-closed set containing the simple roots.
/// Throws NonCrystallographic for non-integral Cartan numbers and
/// NoConvergence once the set exceeds max_roots.
std::vector<RationalVector> root_closure(const std::vector<RationalVector>& simple_roots,
                                         std::size_t max_roots = kMaxClosureSize);

/// Splits roots by the sign pattern of their expansion over simple_roots.
std::pair<std::vector<RationalVector>, std::vector<RationalVector>> positive_partition(
    const std::vector<RationalVector>& roots, const std::vector<RationalVector>& simple_roots);

/// Coefficients of v over the given linearly independent basis; throws
/// NotABase if v is outside their span.
RationalVector expand_over(const std::vector<RationalVector>& basis, const RationalVector& v);

RationalMatrix span_projector(const std::vector<RationalVector>& roots);

Eigen::MatrixXd orthonormal_chart(const RootSystem& rs);

/// Bourbaki simple roots and explicit root list for a spec.
std::vector<RationalVector> bourbaki_simple_roots(const RootSystemSpec& spec);
std::vector<RationalVector> bourbaki_roots(const RootSystemSpec& spec);

Eigen::VectorXd to_eigen(const RationalVector& v);
Eigen::MatrixXd to_eigen(const RationalMatrix& m);

}  // namespace trigwdvv
