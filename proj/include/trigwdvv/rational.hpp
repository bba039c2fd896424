#pragma once

// Exact rational scalars, vectors and matrices.
//
// Root coordinates in every realization used here are integers or
// half-integers, so the hot loops (pair sums, reflection products) run on
// integer lattices obtained by clearing a common denominator. Rational is
// the arbitrary-precision value type those loops report into.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace trigwdvv {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using RationalVector = std::vector<Rational>;

/// Canonical "p/q" text form; integers keep the "/1".
std::string to_string(const Rational& r);

/// Parses "p/q", "p" or a decimal literal such as "0.25".
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

Rational dot(const RationalVector& a, const RationalVector& b);

/// Lexicographic order on exact vectors.
bool lex_less(const RationalVector& a, const RationalVector& b);

/// Dense row-major rational matrix.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  RationalMatrix transpose() const;
  RationalVector apply(const RationalVector& v) const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) = default;

  const std::vector<Rational>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Exact inverse by Gauss-Jordan elimination; throws std::domain_error if singular.
RationalMatrix inverse(const RationalMatrix& m);

/// Exact determinant by row reduction.
Rational determinant(const RationalMatrix& m);

/// Exact rank by row reduction.
std::size_t matrix_rank(const RationalMatrix& m);

/// A set of rational vectors rewritten as integer vectors over one common
/// positive denominator: vectors[i] = rows[i] / denominator.
struct IntegerLattice {
  std::int64_t denominator = 1;
  std::vector<std::vector<std::int64_t>> rows;
};

/// Clears denominators; throws std::overflow_error if an entry leaves int64.
IntegerLattice to_integer_lattice(const std::vector<RationalVector>& vectors);

/// Overflow-checked int64 arithmetic used by the lattice kernels.
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("int64 multiply overflow");
  return out;
}
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("int64 add overflow");
  return out;
}

}  // namespace trigwdvv
