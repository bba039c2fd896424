#pragma once

// Fiber-wise check of the Dunkl/Matsuo identity: ordered pairs of positive
// roots are grouped by the Weyl element s_a s_b, and within every group
//   sum coth((a,x)) coth((b,x)) (a,b) (a^b) (x) (a^b)
// must equal the same sum without the coth weights.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "trigwdvv/prepotential.hpp"
#include "trigwdvv/rational.hpp"
#include "trigwdvv/rootsystems.hpp"

namespace trigwdvv {

/// I - 2 a a^T / (a, a); throws ZeroRoot for a = 0.
RationalMatrix reflection_matrix(const RationalVector& alpha);

struct Fiber {
  /// The common product s_a s_b.
  RationalMatrix element;
  /// Ordered (a, b) index pairs into RootSystem::positive_roots, lexicographic.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  bool is_identity() const;
};

struct FiberPartition {
  RootSystemSpec system;
  /// Ordered by first occurrence in the lexicographic pair scan, so the
  /// identity fiber comes first.
  std::vector<Fiber> fibers;

  std::size_t pair_count() const;
};

FiberPartition fiber_partition(const RootSystem& rs);

/// Summing the unweighted fiber tensors, exactly, reproduces coupling_tensor(rs).
bool fiber_aggregate_matches(const RootSystem& rs, const FiberPartition& partition);

struct FiberResidual {
  std::size_t fiber = 0;
  std::size_t size = 0;
  /// max |unweighted fiber tensor|
  double scale = 0.0;
  /// max |weighted - unweighted| / scale (absolute when scale < 1e-12)
  double residual = 0.0;
};

enum class DunklOutcome { fiberwise, aggregate_only, fails };
std::string to_string(DunklOutcome o);

struct FiberCheckReport {
  RootSystemSpec system;
  EvaluationPoint point;
  std::vector<FiberResidual> fibers;
  double max_fiber_residual = 0.0;
  /// Weighted vs unweighted totals over all fibers, relative.
  double aggregate_residual = 0.0;
  /// Weighted total vs 2 sum_k (T_ilk T_jkm - T_jlk T_ikm) from the third-derivative tensor.
  double third_derivative_residual = 0.0;
  DunklOutcome outcome = DunklOutcome::fails;
};

inline constexpr double kFiberAbsoluteFloor = 1e-12;

/// `point` is in rs.chart coordinates; throws ChamberViolation outside the chamber.
FiberCheckReport fiber_identity_check(const RootSystem& rs, const FiberPartition& partition,
                                      const EvaluationPoint& point, double tolerance = 1e-9);

}  // namespace trigwdvv
