#include "trigwdvv/rational.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>

namespace trigwdvv {

std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  std::size_t start = (text.front() == '-' || text.front() == '+') ? 1 : 0;
  if (start == text.size()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  }
  return BigInt(std::string(text.front() == '+' ? text.substr(1) : text));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash), text);
    BigInt den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (auto dot_pos = text.find('.'); dot_pos != std::string_view::npos) {
    std::string digits(text.substr(0, dot_pos));
    std::string_view frac = text.substr(dot_pos + 1);
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    BigInt whole = parse_integer(digits, text);
    if (frac.empty()) return Rational(whole);
    BigInt frac_digits = parse_integer(frac, text);
    if (frac.front() == '-' || frac.front() == '+')
      throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    bool negative = text.front() == '-';
    Rational magnitude = Rational(boost::multiprecision::abs(whole)) + Rational(frac_digits, scale);
    return negative ? Rational(-magnitude) : magnitude;
  }
  return Rational(parse_integer(text, text));
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rational sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

bool lex_less(const RationalVector& a, const RationalVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RationalVector RationalMatrix::apply(const RationalVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
  RationalVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
  RationalMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

RationalMatrix inverse(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("inverse: matrix not square");
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) throw std::domain_error("inverse: singular matrix");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(col, j), a(pivot, j));
        std::swap(inv(col, j), inv(pivot, j));
      }
    }
    const Rational scale = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= scale;
      inv(col, j) /= scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      const Rational factor = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= factor * a(col, j);
        inv(i, j) -= factor * inv(col, j);
      }
    }
  }
  return inv;
}

std::size_t matrix_rank(const RationalMatrix& m) {
  RationalMatrix a = m;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(rank, j), a(pivot, j));
    for (std::size_t i = rank + 1; i < a.rows(); ++i) {
      if (a(i, col) == 0) continue;
      const Rational factor = a(i, col) / a(rank, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= factor * a(rank, j);
    }
    ++rank;
  }
  return rank;
}

IntegerLattice to_integer_lattice(const std::vector<RationalVector>& vectors) {
  BigInt lcm = 1;
  for (const auto& v : vectors)
    for (const auto& x : v) {
      const BigInt den = boost::multiprecision::denominator(x);
      lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
    }
  const BigInt limit = BigInt(std::numeric_limits<std::int64_t>::max());
  if (lcm > limit) throw std::overflow_error("lattice denominator exceeds int64");
  IntegerLattice lattice;
  lattice.denominator = lcm.convert_to<std::int64_t>();
  lattice.rows.reserve(vectors.size());
  for (const auto& v : vectors) {
    std::vector<std::int64_t> row(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Rational scaled = v[i] * Rational(lcm);
      const BigInt num = boost::multiprecision::numerator(scaled);
      if (boost::multiprecision::abs(num) > limit) throw std::overflow_error("lattice entry exceeds int64");
      row[i] = num.convert_to<std::int64_t>();
    }
    lattice.rows.push_back(std::move(row));
  }
  return lattice;
}


Rational determinant(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("determinant: matrix not square");
  RationalMatrix a = m;
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a(i, col) == 0) continue;
      const Rational factor = a(i, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(i, j) -= factor * a(col, j);
    }
  }
  return det;
}

}  // namespace trigwdvv
