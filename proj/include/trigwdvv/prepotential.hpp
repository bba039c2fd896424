#pragma once

// The trigonometric prepotential
//   F(a, a') = sum_{a>0} k_a f((a, x)) + gamma (a'^3/6 + a' (x, x)/2),
//   f(x) = x^3/6 - Li3(exp(-2x))/4,  f'''(x) = coth(x),
// evaluated in orthonormal chart coordinates x in R^rank, with a' the extra
// variable. Summing over positive roots only keeps the trilogarithm series
// convergent and leaves every third derivative unchanged.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "trigwdvv/rootsystems.hpp"

namespace trigwdvv {

/// sum_{k>=1} z^k / k^s for integer 0 <= s <= 3 and 0 <= z < 1; absolute accuracy 1e-14.
double polylog_series(int order, double z);

/// Li3(z) on [0, 1); throws DomainError outside.
double trilog(double z);

/// x^3/6 - Li3(exp(-2x))/4 for x > 0.
double f_scalar(double x);

/// d-th derivative of f (0 <= d <= 3) by term-wise differentiation of the series.
double f_derivative_series(double x, int order);

inline constexpr double kCothEps = 1e-8;

/// coth(x), exactly odd in x; throws NearSingular if |x| < eps.
double coth_third(double x, double eps = kCothEps);

struct PrepotentialParams {
  /// Positive roots in chart coordinates, one per row.
  Eigen::MatrixXd charted_roots;
  /// Weight of each positive root (constant on orbits).
  Eigen::VectorXd root_weights;
  std::vector<double> orbit_weights;
  std::complex<double> gamma;
  /// The chart used for charted_roots (ambient_dim x rank).
  Eigen::MatrixXd chart;

  std::size_t rank() const { return static_cast<std::size_t>(charted_roots.cols()); }
};

/// Uses rs.chart unless an alternative orthonormal chart is supplied.
PrepotentialParams make_params(const RootSystem& rs, const std::vector<double>& orbit_weights,
                               std::complex<double> gamma);
PrepotentialParams make_params(const RootSystem& rs, const std::vector<double>& orbit_weights,
                               std::complex<double> gamma, const Eigen::MatrixXd& chart);

struct EvaluationPoint {
  /// Chamber part in chart coordinates.
  Eigen::VectorXd a;
  double extra = 0.0;
  /// min over positive roots of (alpha, a).
  double margin = 0.0;
};

double chamber_margin(const PrepotentialParams& params, const Eigen::VectorXd& a);

/// Builds a point and checks it lies strictly inside the positive chamber.
EvaluationPoint make_point(const PrepotentialParams& params, const Eigen::VectorXd& a, double extra);

/// Re-expresses a point given in chart `from` in chart `to` (same span).
EvaluationPoint rechart(const EvaluationPoint& p, const Eigen::MatrixXd& from, const Eigen::MatrixXd& to);

std::complex<double> prepotential_scalar(const PrepotentialParams& params, const EvaluationPoint& point);

/// T[i][j][k], indices 0 .. rank (index `rank` is the extra variable).
class ThirdDerivativeTensor {
 public:
  explicit ThirdDerivativeTensor(std::size_t size = 0)
      : size_(size), entries_(size * size * size, std::complex<double>(0.0)) {}

  std::size_t size() const { return size_; }
  std::complex<double>& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return entries_[(i * size_ + j) * size_ + k];
  }
  const std::complex<double>& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return entries_[(i * size_ + j) * size_ + k];
  }

 private:
  std::size_t size_;
  std::vector<std::complex<double>> entries_;
};

/// Throws ChamberViolation unless the point margin is positive.
ThirdDerivativeTensor third_derivative_tensor(const PrepotentialParams& params, const EvaluationPoint& point);

/// Analytic gradient of the positive-root prepotential, in extended precision.
std::vector<std::complex<long double>> prepotential_gradient(const PrepotentialParams& params,
                                                             const std::vector<long double>& a, long double extra);

inline constexpr double kDefaultFdStep = 1e-4;

/// Max deviation between the analytic third-derivative tensor and central
/// second differences of the analytic gradient, relative to max |T|.
/// Throws StepTooLarge if the stencil leaves the chamber.
double fd_validate(const PrepotentialParams& params, const EvaluationPoint& point, double h = kDefaultFdStep);

inline constexpr double kDefaultMarginMin = 0.2;

/// Deterministic chamber sampling: a = sum c_i w_i over fundamental coweights
/// with c_i uniform in [margin_min, 1.5], extra uniform in [-1, 1].
/// Points are expressed in rs.chart coordinates.
std::vector<EvaluationPoint> sample_chamber_point(const RootSystem& rs, std::uint64_t seed,
                                                  double margin_min = kDefaultMarginMin, std::size_t count = 1);

}  // namespace trigwdvv
