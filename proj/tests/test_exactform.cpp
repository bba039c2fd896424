#include "doctest.h"
#include "oracles.hpp"
#include "trigwdvv/dunkl.hpp"
#include "trigwdvv/errors.hpp"
#include "trigwdvv/exactform.hpp"

using namespace trigwdvv;

namespace {

CanonicalFormResult canonical(const RootSystemSpec& spec) {
  const RootSystem rs = build_root_system(spec);
  return extract_canonical_constant(coupling_tensor(rs), rs.projector);
}

std::vector<oracle::IVec> oracle_positive(const RootSystem& rs) {
  std::vector<oracle::IVec> out;
  for (const auto& r : rs.positive_roots) out.push_back(oracle::doubled(r));
  return out;
}

RationalVector halved(const oracle::IVec& v) {
  RationalVector out;
  for (auto x : v) out.emplace_back(x, 2);
  return out;
}

bool simply_laced(Family f) { return f == Family::A || f == Family::D || f == Family::E; }

}  // namespace

TEST_CASE("trace contraction of small systems") {
  const RootSystem a1 = build_root_system({Family::A, 1});
  CHECK(coupling_tensor(a1).is_zero());
  CHECK(coupling_tensor(build_root_system({Family::B, 2})).trace_contraction() == 8);
  CHECK(coupling_tensor(build_root_system({Family::A, 2})).trace_contraction() == 12);
}

TEST_CASE("canonical constants of the rank-2 systems") {
  const auto b2 = canonical({Family::B, 2});
  CHECK(b2.c == 4);
  CHECK(b2.proportionality_residual == 0);
  CHECK(b2.verdict == Verdict::match);

  const auto c2 = canonical({Family::C, 2});
  CHECK(c2.c == 32);
  CHECK(c2.proportionality_residual == 0);
  CHECK(c2.verdict == Verdict::match);

  const auto a2 = canonical({Family::A, 2});
  CHECK(a2.c == 6);
  CHECK(a2.proportionality_residual == 0);
  CHECK(a2.table_value == Rational(8));
  CHECK(a2.verdict == Verdict::mismatch);

  const auto g2 = canonical({Family::G, 2});
  CHECK(g2.proportionality_residual == 0);
  CHECK_FALSE(g2.table_value.has_value());
  CHECK(g2.verdict == Verdict::no_table_entry);

  // C2 is B2 rotated and scaled by sqrt 2; S is homogeneous of degree 6.
  CHECK(c2.c == 8 * b2.c);
}

TEST_CASE("table comparison") {
  CHECK(table_compare({Family::D, 4}, canonical({Family::D, 4}).c).verdict == Verdict::match);
  CHECK(table_value({Family::D, 4}) == Rational(16));
  CHECK(table_value({Family::E, 7}) == Rational(96));
  CHECK(canonical({Family::E, 7}).c == 96);
  CHECK(table_value({Family::B, 4}) == Rational(20));
  CHECK(table_value({Family::E, 8}) == Rational(320));
  CHECK(table_value({Family::F, 4}) == Rational(30));
  CHECK_FALSE(table_value({Family::G, 2}).has_value());
  const auto g = table_compare({Family::G, 2}, 240);
  CHECK(g.verdict == Verdict::no_table_entry);
  CHECK(g.computed == 240);
  CHECK(table_compare({Family::A, 3}, 8).verdict == Verdict::mismatch);
}

TEST_CASE("every system: exact proportionality and the trace-formula oracle") {
  for (const auto& spec : all_table_systems()) {
    CAPTURE(spec.name());
    const RootSystem rs = build_root_system(spec);
    const CouplingTensor s = coupling_tensor(rs);
    if (rs.rank < 2) {
      CHECK(s.is_zero());
      CHECK_THROWS_AS(extract_canonical_constant(s, rs.projector), DegenerateRank);
      continue;
    }
    const auto result = extract_canonical_constant(s, rs.projector);
    CHECK(result.proportionality_residual == 0);
    CHECK(result.c > 0);
    CHECK(result.c == oracle::trace_c(oracle_positive(rs), rs.rank));
    if (simply_laced(spec.family)) CHECK(result.c == oracle::strange_formula_c(oracle_positive(rs), rs.rank));

    // Directions orthogonal to span R are annihilated.
    if (rs.ambient_dim > rs.rank) {
      RationalVector w(rs.ambient_dim);
      for (std::size_t k = 0; k < rs.ambient_dim; ++k) {
        RationalVector e(rs.ambient_dim);
        e[k] = 1;
        const RationalVector pe = rs.projector.apply(e);
        for (std::size_t i = 0; i < rs.ambient_dim; ++i) w[i] = e[i] - pe[i];
        for (const auto& x : s.contract_first(w)) REQUIRE(x == 0);
      }
    }
  }
}

TEST_CASE("audit findings: classical formulas and the A3 = D3 cross-constraint") {
  for (int n = 2; n <= 6; ++n) {
    CAPTURE(n);
    CHECK(canonical({Family::B, n}).c == 4 * (2 * n - 3));
    CHECK(canonical({Family::C, n}).c == 8 * (n + 2));
    CHECK(canonical({Family::A, n}).c == 2 * (n + 1));
    CHECK(canonical({Family::A, n}).verdict == Verdict::mismatch);
    if (n >= 3) CHECK(canonical({Family::D, n}).c == 8 * (n - 2));
  }
  CHECK(canonical({Family::A, 3}).c == canonical({Family::D, 3}).c);
  CHECK(canonical({Family::D, 3}).verdict == Verdict::match);
  CHECK(canonical({Family::F, 4}).verdict == Verdict::match);
  CHECK(canonical({Family::E, 6}).c == 48);
  CHECK(canonical({Family::E, 8}).c == 240);
  CHECK(canonical({Family::G, 2}).c == 240);
}

TEST_CASE("Weyl invariance and positive-system independence") {
  for (const RootSystemSpec spec : {RootSystemSpec{Family::B, 3}, RootSystemSpec{Family::G, 2},
                                    RootSystemSpec{Family::A, 3}, RootSystemSpec{Family::F, 4}}) {
    CAPTURE(spec.name());
    const RootSystem rs = build_root_system(spec);
    const CouplingTensor s = coupling_tensor(rs);
    for (std::size_t k = 0; k < std::min<std::size_t>(3, rs.simple_roots.size()); ++k)
      CHECK(s.conjugated(reflection_matrix(rs.simple_roots[k])) == s);
    // A generic functional picks a Weyl-conjugate positive system.
    std::set<oracle::IVec> all;
    for (const auto& r : rs.roots) all.insert(oracle::doubled(r));
    std::vector<RationalVector> other;
    for (const auto& v : oracle::functional_positive(all)) other.push_back(halved(v));
    std::vector<Rational> ones(rs.orbit_count(), Rational(1));
    CHECK(coupling_tensor_for_positive_system(rs, other, ones) == s);
    // w(R+) for a word of simple reflections.
    std::vector<RationalVector> moved = rs.positive_roots;
    for (std::size_t k : {0UL, 1UL, 0UL})
      for (auto& r : moved) r = reflect_vector(rs.simple_roots[k], r);
    CHECK(coupling_tensor_for_positive_system(rs, moved, ones) == s);
  }
}

TEST_CASE("the literal full-sum vanishes") {
  for (const auto& spec : all_table_systems()) {
    CAPTURE(spec.name());
    CHECK(parity_erratum_check(build_root_system(spec)).is_zero());
  }
}

TEST_CASE("multiplicity polynomial") {
  const RootSystem a2 = build_root_system({Family::A, 2});
  const auto pa = multiplicity_polynomial(a2);
  REQUIRE(pa.terms.size() == 1);
  CHECK(pa.terms[0].coefficient == 6);
  const std::vector<Rational> k3{Rational(3)};
  CHECK(pa.evaluate(k3) == 54);

  const RootSystem b2 = build_root_system({Family::B, 2});
  const auto pb = multiplicity_polynomial(b2);
  for (const auto& t : pb.terms) {
    CHECK(t.proportionality_residual == 0);
    CHECK(t.coefficient == (t.first != t.second ? 4 : 0));
  }
  const std::vector<Rational> k23{Rational(2), Rational(3)};
  CHECK(pb.evaluate(k23) == 24);
  const auto weighted = extract_canonical_constant(coupling_tensor(b2, k23), b2.projector);
  CHECK(weighted.c == 24);
  CHECK(weighted.proportionality_residual == 0);
  const std::vector<Rational> kq{Rational(1, 2), Rational(-5, 3)};
  CHECK(extract_canonical_constant(coupling_tensor(b2, kq), b2.projector).c == pb.evaluate(kq));

  for (const auto& spec : all_table_systems()) {
    const RootSystem rs = build_root_system(spec);
    if (rs.rank < 2) continue;
    CAPTURE(spec.name());
    const std::vector<Rational> ones(rs.orbit_count(), Rational(1));
    CHECK(multiplicity_polynomial(rs).evaluate(ones) == extract_canonical_constant(coupling_tensor(rs), rs.projector).c);
  }
}

TEST_CASE("per-root weights must be constant on orbits") {
  const RootSystem b2 = build_root_system({Family::B, 2});
  std::vector<Rational> w;
  for (int o : b2.positive_orbit) w.emplace_back(o == 0 ? 2 : 3);
  const std::vector<Rational> k23{Rational(2), Rational(3)};
  CHECK(coupling_tensor_from_root_weights(b2, w) == coupling_tensor(b2, k23));
  w[0] += 1;
  CHECK_THROWS_AS(coupling_tensor_from_root_weights(b2, w), MultiplicityOrbitMismatch);
  const std::vector<Rational> one{Rational(1)};
  CHECK_THROWS_AS(coupling_tensor(b2, one), MultiplicityOrbitMismatch);
}
