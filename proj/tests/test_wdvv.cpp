#include <random>

#include "doctest.h"
#include "trigwdvv/errors.hpp"
#include "trigwdvv/exactform.hpp"
#include "trigwdvv/wdvv.hpp"

using namespace trigwdvv;
using doctest::Approx;

namespace {

std::vector<Rational> ones(const RootSystem& rs) { return std::vector<Rational>(rs.orbit_count(), Rational(1)); }

std::vector<double> ones_d(const RootSystem& rs) { return std::vector<double>(rs.orbit_count(), 1.0); }

std::vector<Slice> slices_at(const PrepotentialParams& params, const EvaluationPoint& p) {
  return assemble_slices(third_derivative_tensor(params, p));
}

double max_commutator(const RootSystem& rs, std::complex<double> gamma, std::size_t samples, double margin) {
  const auto params = make_params(rs, ones_d(rs), gamma);
  double worst = 0.0;
  for (const auto& p : sample_chamber_point(rs, 42, margin, samples))
    worst = std::max(worst, commutator_residual(slices_at(params, p)));
  return worst;
}

}  // namespace

TEST_CASE("gamma from c") {
  const auto half = gamma_from_c(4.0, GammaHypothesis::half);
  CHECK(half.real() == 0.0);
  CHECK(half.imag() == Approx(1.41421356237309505).epsilon(1e-15));
  CHECK(gamma_from_c(4.0, GammaHypothesis::full) == std::complex<double>(0.0, 2.0));
  CHECK_THROWS_AS(gamma_from_c(0.0, GammaHypothesis::half), NonPositiveC);
  CHECK_THROWS_AS(gamma_from_c(-1.0, GammaHypothesis::full), NonPositiveC);
  CHECK(other(GammaHypothesis::half) == GammaHypothesis::full);
  CHECK(to_string(GammaHypothesis::full) == "full");
}

TEST_CASE("slice assembly") {
  const RootSystem b3 = build_root_system({Family::B, 3});
  const std::complex<double> gamma(0.0, 2.5);
  const auto params = make_params(b3, ones_d(b3), gamma);
  const auto p = sample_chamber_point(b3, 5)[0];
  const auto t = third_derivative_tensor(params, p);
  const auto f = assemble_slices(t);
  REQUIRE(f.size() == 4);
  CHECK((f[3] - gamma * Slice::Identity(4, 4)).norm() == 0.0);
  for (std::size_t i = 0; i < 4; ++i)
    for (Eigen::Index k = 0; k < 4; ++k)
      for (Eigen::Index l = 0; l < 4; ++l) {
        CHECK(f[i](k, l) == t(i, static_cast<std::size_t>(k), static_cast<std::size_t>(l)));
        CHECK(f[i](k, l) == f[static_cast<std::size_t>(k)](static_cast<Eigen::Index>(i), l));
      }

  const RootSystem a1 = build_root_system({Family::A, 1});
  const auto pa = make_params(a1, {1.0}, gamma);
  const auto pt = sample_chamber_point(a1, 5)[0];
  const auto fa = slices_at(pa, pt);
  CHECK(fa[0](0, 0) == third_derivative_tensor(pa, pt)(0, 0, 0));
  CHECK(fa[0](0, 1) == gamma);
  CHECK(fa[0](1, 0) == gamma);
  CHECK(fa[0](1, 1) == 0.0);
}

TEST_CASE("commutator residuals: right and wrong gamma") {
  const RootSystem b2 = build_root_system({Family::B, 2});
  CHECK(max_commutator(b2, gamma_from_c(4.0, GammaHypothesis::half), 10, 0.2) < 1e-9);
  CHECK(max_commutator(b2, {0.0, 10.0}, 10, 0.2) > 1e-3);
  const RootSystem a1 = build_root_system({Family::A, 1});
  for (double g : {0.3, 1.0, 17.0}) CHECK(max_commutator(a1, {0.0, g}, 5, 0.2) < 1e-14);
}

TEST_CASE("direct form with the extra variable as pivot") {
  const RootSystem g2 = build_root_system({Family::G, 2});
  for (const auto gamma : {gamma_from_c(240.0, GammaHypothesis::half), std::complex<double>(0.0, 3.0)}) {
    const auto params = make_params(g2, ones_d(g2), gamma);
    for (const auto& p : sample_chamber_point(g2, 9, 0.2, 4)) {
      const auto f = slices_at(params, p);
      const double comm = commutator_residual(f);
      const double eq1 = eq1_residual(f, 2);
      if (comm > 1e-6) CHECK(eq1 == Approx(comm / std::abs(gamma)).epsilon(1e-10));
      else CHECK(std::abs(eq1 - comm / std::abs(gamma)) < 1e-15);
      for (const auto& pr : pair_residuals(f, 2)) CHECK(pr.i < pr.j);
    }
  }
  const auto zero = make_params(g2, ones_d(g2), {0.0, 0.0});
  const auto f0 = slices_at(zero, sample_chamber_point(g2, 1)[0]);
  CHECK_THROWS_AS(eq1_residual(f0, 2), SingularPivot);
  CHECK_THROWS_AS(eq1_residual(f0, 0), SingularPivot);
}

TEST_CASE("mixed entries of slice products") {
  const RootSystem c3 = build_root_system({Family::C, 3});
  const std::complex<double> gamma(0.0, 1.9);
  const auto params = make_params(c3, ones_d(c3), gamma);
  const auto p = sample_chamber_point(c3, 77)[0];
  const auto t = third_derivative_tensor(params, p);
  const auto f = assemble_slices(t);
  const std::size_t n = 3;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Slice prod = f[i] * f[j];
      for (std::size_t l = 0; l < n; ++l)
        CHECK(std::abs(prod(static_cast<Eigen::Index>(l), n) - gamma * t(i, l, j)) < 1e-12 * std::abs(t(i, l, j)) + 1e-12);
    }
}

TEST_CASE("end-to-end verification passes under the half hypothesis") {
  for (const auto& spec : all_table_systems()) {
    CAPTURE(spec.name());
    const RootSystem rs = build_root_system(spec);
    const auto report = verify_wdvv(rs, ones(rs), GammaHypothesis::half, {});
    CHECK(report.pass);
    CHECK(report.per_point.size() == 10);
    CHECK(report.max_commutator_residual < 1e-9);
    CHECK(report.max_eq1_residual < 1e-9);
    if (rs.rank == 1) {
      CHECK(report.note == "rank 1: WDVV vacuous");
      CHECK_FALSE(report.c.has_value());
      continue;
    }
    const auto alt = verify_wdvv(rs, ones(rs), GammaHypothesis::full, {});
    CHECK_FALSE(alt.pass);
    CHECK(alt.max_commutator_residual > 1e-3);
  }
}

TEST_CASE("residuals stay small away from and near the walls") {
  const RootSystem f4 = build_root_system({Family::F, 4});
  const double c = to_double(extract_canonical_constant(coupling_tensor(f4), f4.projector).c);
  for (double margin : {0.2, 0.5}) {
    CAPTURE(margin);
    CHECK(max_commutator(f4, gamma_from_c(c, GammaHypothesis::half), 10, margin) < 1e-9);
  }
}

TEST_CASE("chart independence") {
  const RootSystem d4 = build_root_system({Family::D, 4});
  const auto gamma = gamma_from_c(16.0, GammaHypothesis::half);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd g(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) g(i, j) = normal(rng);
  const Eigen::MatrixXd rotation = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
  const Eigen::MatrixXd chart = d4.chart * rotation;
  const auto base = make_params(d4, ones_d(d4), gamma);
  const auto turned = make_params(d4, ones_d(d4), gamma, chart);
  CHECK((base.charted_roots * base.charted_roots.transpose() - turned.charted_roots * turned.charted_roots.transpose())
            .norm() < 1e-12);
  for (const auto& p : sample_chamber_point(d4, 8, 0.2, 5)) {
    const auto q = rechart(p, d4.chart, chart);
    CHECK(q.margin == Approx(p.margin).epsilon(1e-12));
    CHECK(std::abs(commutator_residual(slices_at(base, p)) - commutator_residual(slices_at(turned, q))) < 1e-10);
  }
}

TEST_CASE("multiplicities (2, 3) on B2") {
  const RootSystem b2 = build_root_system({Family::B, 2});
  const std::vector<Rational> k{Rational(2), Rational(3)};
  CHECK(weighted_canonical_constant(b2, k) == 24);
  CHECK(multiplicity_polynomial(b2).evaluate(k) == 24);
  const auto report = verify_wdvv(b2, k, GammaHypothesis::half, {});
  CHECK(report.pass);
  CHECK(report.c == Rational(24));
  CHECK(report.gamma.imag() == Approx(std::sqrt(12.0)).epsilon(1e-15));
  CHECK(report.max_commutator_residual < 1e-9);
  // The unweighted gamma is wrong once the multiplicities change.
  CHECK(max_commutator(b2, gamma_from_c(4.0, GammaHypothesis::half), 5, 0.2) < 1e-9);
  const auto params = make_params(b2, {2.0, 3.0}, gamma_from_c(4.0, GammaHypothesis::half));
  CHECK(commutator_residual(slices_at(params, sample_chamber_point(b2, 42)[0])) > 1e-3);
}

TEST_CASE("gamma scan") {
  const RootSystem b2 = build_root_system({Family::B, 2});
  const auto scan = gamma_scan(b2, ones(b2), 42);
  CHECK(scan.c == 4);
  CHECK(scan.verdict == "half");
  REQUIRE(scan.passing.size() == 1);
  CHECK(scan.passing[0] == GammaHypothesis::half);
  const double good = std::max(scan.outcomes[0].max_commutator_residual, 1e-300);
  CHECK(scan.outcomes[1].max_commutator_residual / good > 1e6);
  CHECK_THROWS_AS(gamma_scan(build_root_system({Family::A, 1}), std::vector<Rational>{Rational(1)}, 42),
                  DegenerateRank);
}
