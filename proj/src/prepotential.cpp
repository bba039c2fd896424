#include "trigwdvv/prepotential.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "trigwdvv/errors.hpp"

namespace trigwdvv {

namespace {

constexpr long double kTailBound = 1e-17L;

long double polylog_series_ld(int order, long double z) {
  if (order < 0 || order > 3) throw std::invalid_argument("polylog_series: order must be in [0, 3]");
  if (!(z >= 0.0L) || z >= 1.0L)
    throw DomainError("polylog series needs 0 <= z < 1, got " + std::to_string(static_cast<double>(z)));
  if (z == 0.0L) return 0.0L;
  long double sum = 0.0L;
  long double power = 1.0L;
  for (long k = 1;; ++k) {
    power *= z;
    const long double kk = static_cast<long double>(k);
    sum += power * std::pow(kk, static_cast<long double>(-order));
    // k^-order is non-increasing, so the remainder is bounded by a geometric tail.
    const long double tail = power * z * std::pow(kk + 1.0L, static_cast<long double>(-order)) / (1.0L - z);
    if (tail < kTailBound) break;
  }
  return sum;
}

void require_positive(long double x) {
  if (!(x > 0.0L)) throw DomainError("f is only defined for x > 0, got " + std::to_string(static_cast<double>(x)));
}

long double f_derivative_ld(long double x, int order) {
  require_positive(x);
  const long double q = std::exp(-2.0L * x);
  long double polynomial = 0.0L;
  switch (order) {
    case 0: polynomial = x * x * x / 6.0L; break;
    case 1: polynomial = x * x / 2.0L; break;
    case 2: polynomial = x; break;
    case 3: polynomial = 1.0L; break;
    default: throw std::invalid_argument("f_derivative_series: order must be in [0, 3]");
  }
  // d^order/dx^order of -Li3(exp(-2x))/4 = -(-2)^order / 4 * Li_{3-order}(exp(-2x))
  const long double factor = -std::pow(-2.0L, static_cast<long double>(order)) / 4.0L;
  return polynomial + factor * polylog_series_ld(3 - order, q);
}

double max_root_norm(const PrepotentialParams& params) {
  double worst = 0.0;
  for (Eigen::Index r = 0; r < params.charted_roots.rows(); ++r)
    worst = std::max(worst, params.charted_roots.row(r).norm());
  return worst;
}

class UnitUniform {
 public:
  explicit UnitUniform(std::uint64_t seed) : engine_(seed) {}
  // 53 random bits; identical across standard libraries.
  double operator()() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

double polylog_series(int order, double z) { return static_cast<double>(polylog_series_ld(order, z)); }

double trilog(double z) { return polylog_series(3, z); }

double f_scalar(double x) { return static_cast<double>(f_derivative_ld(x, 0)); }

double f_derivative_series(double x, int order) { return static_cast<double>(f_derivative_ld(x, order)); }

double coth_third(double x, double eps) {
  const double ax = std::fabs(x);
  if (ax < eps) throw NearSingular("coth is singular near 0 (|x| = " + std::to_string(ax) + ")");
  const double q = std::exp(-2.0 * ax);
  const double magnitude = (1.0 + q) / -std::expm1(-2.0 * ax);
  return x < 0 ? -magnitude : magnitude;
}

PrepotentialParams make_params(const RootSystem& rs, const std::vector<double>& orbit_weights,
                               std::complex<double> gamma) {
  return make_params(rs, orbit_weights, gamma, rs.chart);
}

PrepotentialParams make_params(const RootSystem& rs, const std::vector<double>& orbit_weights,
                               std::complex<double> gamma, const Eigen::MatrixXd& chart) {
  if (orbit_weights.size() != rs.orbit_count())
    throw std::invalid_argument(rs.spec.name() + " needs " + std::to_string(rs.orbit_count()) + " orbit weight(s)");
  if (chart.rows() != static_cast<Eigen::Index>(rs.ambient_dim) || chart.cols() != static_cast<Eigen::Index>(rs.rank))
    throw std::invalid_argument("chart has the wrong shape");
  PrepotentialParams params;
  params.chart = chart;
  params.charted_roots = rs.positive_roots_real() * chart;
  params.root_weights.resize(static_cast<Eigen::Index>(rs.positive_roots.size()));
  for (std::size_t i = 0; i < rs.positive_roots.size(); ++i)
    params.root_weights(static_cast<Eigen::Index>(i)) = orbit_weights[static_cast<std::size_t>(rs.positive_orbit[i])];
  params.orbit_weights = orbit_weights;
  params.gamma = gamma;
  return params;
}

double chamber_margin(const PrepotentialParams& params, const Eigen::VectorXd& a) {
  if (a.size() != params.charted_roots.cols()) throw std::invalid_argument("point has the wrong dimension");
  return (params.charted_roots * a).minCoeff();
}

EvaluationPoint make_point(const PrepotentialParams& params, const Eigen::VectorXd& a, double extra) {
  EvaluationPoint p{a, extra, chamber_margin(params, a)};
  if (!(p.margin > 0.0))
    throw ChamberViolation("point is not inside the positive chamber (margin " + std::to_string(p.margin) + ")");
  return p;
}

EvaluationPoint rechart(const EvaluationPoint& p, const Eigen::MatrixXd& from, const Eigen::MatrixXd& to) {
  EvaluationPoint out = p;
  out.a = to.transpose() * (from * p.a);
  return out;
}

std::complex<double> prepotential_scalar(const PrepotentialParams& params, const EvaluationPoint& point) {
  const Eigen::VectorXd pairings = params.charted_roots * point.a;
  if (!(pairings.minCoeff() > 0.0)) throw ChamberViolation("prepotential evaluated outside the positive chamber");
  double sum = 0.0;
  for (Eigen::Index r = 0; r < pairings.size(); ++r) sum += params.root_weights(r) * f_scalar(pairings(r));
  const double e = point.extra;
  return sum + params.gamma * (e * e * e / 6.0 + e * point.a.squaredNorm() / 2.0);
}

ThirdDerivativeTensor third_derivative_tensor(const PrepotentialParams& params, const EvaluationPoint& point) {
  const std::size_t n = params.rank();
  const Eigen::VectorXd pairings = params.charted_roots * point.a;
  if (!(pairings.minCoeff() > 0.0))
    throw ChamberViolation("third derivatives requested outside the positive chamber");

  std::vector<double> weights(static_cast<std::size_t>(pairings.size()));
  for (Eigen::Index r = 0; r < pairings.size(); ++r)
    weights[static_cast<std::size_t>(r)] = params.root_weights(r) * coth_third(pairings(r));

  ThirdDerivativeTensor t(n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) {
        double sum = 0.0;
        for (Eigen::Index r = 0; r < pairings.size(); ++r) {
          const auto& row = params.charted_roots;
          sum += weights[static_cast<std::size_t>(r)] * row(r, static_cast<Eigen::Index>(i)) *
                 row(r, static_cast<Eigen::Index>(j)) * row(r, static_cast<Eigen::Index>(k));
        }
        const std::complex<double> v(sum, 0.0);
        t(i, j, k) = t(i, k, j) = t(j, i, k) = t(j, k, i) = t(k, i, j) = t(k, j, i) = v;
      }
  for (std::size_t i = 0; i < n; ++i) t(n, i, i) = t(i, n, i) = t(i, i, n) = params.gamma;
  t(n, n, n) = params.gamma;
  return t;
}

std::vector<std::complex<long double>> prepotential_gradient(const PrepotentialParams& params,
                                                             const std::vector<long double>& a, long double extra) {
  const std::size_t n = params.rank();
  if (a.size() != n) throw std::invalid_argument("gradient: point has the wrong dimension");
  std::vector<long double> real(n, 0.0L);
  long double norm2 = 0.0L;
  for (std::size_t i = 0; i < n; ++i) norm2 += a[i] * a[i];
  for (Eigen::Index r = 0; r < params.charted_roots.rows(); ++r) {
    long double x = 0.0L;
    for (std::size_t i = 0; i < n; ++i) x += static_cast<long double>(params.charted_roots(r, static_cast<Eigen::Index>(i))) * a[i];
    if (!(x > 0.0L)) throw ChamberViolation("gradient evaluated outside the positive chamber");
    const long double weight = static_cast<long double>(params.root_weights(r)) * f_derivative_ld(x, 1);
    for (std::size_t i = 0; i < n; ++i)
      real[i] += weight * static_cast<long double>(params.charted_roots(r, static_cast<Eigen::Index>(i)));
  }
  const std::complex<long double> gamma(params.gamma.real(), params.gamma.imag());
  std::vector<std::complex<long double>> grad(n + 1);
  for (std::size_t i = 0; i < n; ++i) grad[i] = real[i] + gamma * (extra * a[i]);
  grad[n] = gamma * (extra * extra / 2.0L + norm2 / 2.0L);
  return grad;
}

double fd_validate(const PrepotentialParams& params, const EvaluationPoint& point, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  const double margin = chamber_margin(params, point.a);
  if (!(margin > 2.0 * h * max_root_norm(params)))
    throw StepTooLarge("stencil of step " + std::to_string(h) + " leaves the chamber (margin " +
                       std::to_string(margin) + ")");

  const std::size_t n = params.rank();
  const ThirdDerivativeTensor analytic = third_derivative_tensor(params, point);
  const long double step = h;

  std::vector<long double> base(n + 1);
  for (std::size_t i = 0; i < n; ++i) base[i] = point.a(static_cast<Eigen::Index>(i));
  base[n] = point.extra;
  auto gradient_at = [&](std::size_t l, int sl, std::size_t k, int sk) {
    std::vector<long double> x = base;
    x[l] += sl * step;
    x[k] += sk * step;
    return prepotential_gradient(params, std::vector<long double>(x.begin(), x.begin() + static_cast<long>(n)), x[n]);
  };

  double scale = 0.0;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j)
      for (std::size_t k = 0; k <= n; ++k) scale = std::max(scale, std::abs(analytic(i, j, k)));

  double worst = 0.0;
  const auto centre = gradient_at(0, 0, 0, 0);
  for (std::size_t l = 0; l <= n; ++l)
    for (std::size_t k = l; k <= n; ++k) {
      std::vector<std::complex<long double>> second(n + 1);
      if (l == k) {
        const auto plus = gradient_at(l, 1, l, 0);
        const auto minus = gradient_at(l, -1, l, 0);
        for (std::size_t i = 0; i <= n; ++i) second[i] = (plus[i] - 2.0L * centre[i] + minus[i]) / (step * step);
      } else {
        const auto pp = gradient_at(l, 1, k, 1);
        const auto pm = gradient_at(l, 1, k, -1);
        const auto mp = gradient_at(l, -1, k, 1);
        const auto mm = gradient_at(l, -1, k, -1);
        for (std::size_t i = 0; i <= n; ++i) second[i] = (pp[i] - pm[i] - mp[i] + mm[i]) / (4.0L * step * step);
      }
      for (std::size_t i = 0; i <= n; ++i) {
        const std::complex<double> fd(static_cast<double>(second[i].real()), static_cast<double>(second[i].imag()));
        worst = std::max(worst, std::abs(fd - analytic(i, l, k)));
      }
    }
  return scale > 0.0 ? worst / scale : worst;
}

std::vector<EvaluationPoint> sample_chamber_point(const RootSystem& rs, std::uint64_t seed, double margin_min,
                                                  std::size_t count) {
  constexpr double kUpper = 1.5;
  constexpr std::size_t kMaxRejections = 10000;
  if (!(margin_min > 0.0)) throw std::invalid_argument("margin_min must be positive");
  if (margin_min > kUpper)
    throw SamplingExhausted("margin_min " + std::to_string(margin_min) + " exceeds the coweight box [.., 1.5]");

  Eigen::MatrixXd simple(static_cast<Eigen::Index>(rs.rank), static_cast<Eigen::Index>(rs.ambient_dim));
  for (std::size_t i = 0; i < rs.rank; ++i) simple.row(static_cast<Eigen::Index>(i)) = to_eigen(rs.simple_roots[i]).transpose();
  const Eigen::MatrixXd charted_simple = simple * rs.chart;
  // Columns are the fundamental coweights: (alpha_j, w_i) = delta_ij.
  const Eigen::MatrixXd coweights = charted_simple.inverse();
  const Eigen::MatrixXd charted_roots = rs.positive_roots_charted();

  UnitUniform uniform(seed);
  std::vector<EvaluationPoint> out;
  std::size_t rejections = 0;
  while (out.size() < count) {
    Eigen::VectorXd c(static_cast<Eigen::Index>(rs.rank));
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = margin_min + (kUpper - margin_min) * uniform();
    const double extra = -1.0 + 2.0 * uniform();
    Eigen::VectorXd a = coweights * c;
    const double margin = (charted_roots * a).minCoeff();
    if (margin < margin_min) {
      if (++rejections > kMaxRejections) throw SamplingExhausted("chamber sampling exceeded 10000 rejections");
      continue;
    }
    out.push_back({std::move(a), extra, margin});
  }
  return out;
}

}  // namespace trigwdvv
