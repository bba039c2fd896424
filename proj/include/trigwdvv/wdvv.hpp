#pragma once

// WDVV residuals for the slices (F_i)_{kl} = T[i][k][l]. With the extra
// variable as pivot, F_pivot = gamma * I and the system reduces to pairwise
// commutativity of the slices.

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "trigwdvv/prepotential.hpp"
#include "trigwdvv/rational.hpp"
#include "trigwdvv/rootsystems.hpp"

namespace trigwdvv {

inline constexpr double kPassTolerance = 1e-9;
inline constexpr double kDefinitiveFailure = 1e-3;
inline constexpr double kPivotConditionBound = 1e12;

/// half: gamma^2 = -c/2 (from the proof);  full: gamma^2 = -c (as stated).
enum class GammaHypothesis { half, full };
std::string to_string(GammaHypothesis h);
GammaHypothesis other(GammaHypothesis h);

/// i sqrt(c/2) or i sqrt(c); throws NonPositiveC unless c > 0.
std::complex<double> gamma_from_c(double c, GammaHypothesis hypothesis);

using Slice = Eigen::MatrixXcd;

std::vector<Slice> assemble_slices(const ThirdDerivativeTensor& tensor);

/// max-row-sum norm
double inf_norm(const Slice& m);

/// max_{i<j} |F_i F_j - F_j F_i| / (|F_i| |F_j| + 1e-300)
double commutator_residual(std::span<const Slice> slices);

/// max_{i<j} |F_i P^{-1} F_j - F_j P^{-1} F_i| / (|F_i| |F_j| + 1e-300) with P = F_pivot.
/// Throws SingularPivot if P is singular or worse conditioned than 1e12.
double eq1_residual(std::span<const Slice> slices, std::size_t pivot);

struct PairResidual {
  std::size_t i = 0;
  std::size_t j = 0;
  double commutator = 0.0;
  double eq1 = 0.0;
};

std::vector<PairResidual> pair_residuals(std::span<const Slice> slices, std::size_t pivot);

struct PointResidual {
  std::size_t point_index = 0;
  double margin = 0.0;
  double commutator = 0.0;
  double eq1 = 0.0;
  std::vector<PairResidual> pairs;
};

struct VerifyOptions {
  std::size_t samples = 10;
  std::uint64_t seed = 42;
  double margin = kDefaultMarginMin;
  double tolerance = kPassTolerance;
};

struct WdvvReport {
  RootSystemSpec system;
  GammaHypothesis hypothesis = GammaHypothesis::half;
  /// Canonical constant for the chosen multiplicities; empty at rank 1.
  std::optional<Rational> c;
  std::vector<Rational> multiplicities;
  std::complex<double> gamma;
  std::vector<EvaluationPoint> points;
  std::vector<PointResidual> per_point;
  double max_commutator_residual = 0.0;
  double max_eq1_residual = 0.0;
  double tolerance = kPassTolerance;
  bool pass = false;
  std::string note;
};

/// Residuals of the slices of the prepotential at one point.
PointResidual evaluate_point(const PrepotentialParams& params, const EvaluationPoint& point, std::size_t index);

/// Full pipeline for one hypothesis: exact c -> gamma -> sampled points -> residuals.
WdvvReport verify_wdvv(const RootSystem& rs, std::span<const Rational> orbit_weights,
                       GammaHypothesis hypothesis, const VerifyOptions& options = {});

struct HypothesisOutcome {
  GammaHypothesis hypothesis = GammaHypothesis::half;
  std::complex<double> gamma;
  double max_commutator_residual = 0.0;
  double max_eq1_residual = 0.0;
  bool passes = false;
};

struct GammaScanReport {
  RootSystemSpec system;
  Rational c;
  std::vector<Rational> multiplicities;
  std::array<HypothesisOutcome, 2> outcomes;
  std::vector<GammaHypothesis> passing;
  /// "half", "full", "both" or "none".
  std::string verdict;
};

inline constexpr std::size_t kScanSamples = 5;

/// Residuals under both hypotheses at the same sampled points. Throws
/// DegenerateRank below rank 2.
GammaScanReport gamma_scan(const RootSystem& rs, std::span<const Rational> orbit_weights, std::uint64_t seed,
                           std::size_t samples = kScanSamples, double margin = kDefaultMarginMin,
                           double tolerance = kPassTolerance);

/// Exact canonical constant for per-orbit weights (rank >= 2).
Rational weighted_canonical_constant(const RootSystem& rs, std::span<const Rational> orbit_weights);

}  // namespace trigwdvv
