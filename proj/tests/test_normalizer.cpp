#include "doctest.h"
#include "thetaform/errors.hpp"
#include "thetaform/normalizer.hpp"
#include "thetaform/random.hpp"

using namespace thetaform;

namespace {

DiffPoly th(int s, int t) { return DiffPoly::theta({s, t}); }

BracketSeries example_bracket(int order) {
  BracketSeries p(order);
  p.set_component(1, p_leading());
  p.set_component(3, p_x(3) + p_theta(2, 1));
  return p;
}

std::vector<Rational> q(std::initializer_list<int> v) {
  std::vector<Rational> out;
  for (int x : v) out.emplace_back(x);
  return out;
}

BracketSeries random_conjugate(Rng& rng, const std::vector<Rational>& c, int order, int max_w) {
  BracketSeries p = build_normal_form(c, order);
  for (int degree = 1; degree <= 3; ++degree) p = miura_apply(random_vector_field(rng, degree, max_w, 2), p);
  return p;
}

}  // namespace

TEST_SUITE("normalizer") {
  TEST_CASE("example bracket") {
    const auto r = normalize(example_bracket(7));
    CHECK(r.constants() == q({1, -1, 1}));
    CHECK(r.invariants.front().first == 1);
    CHECK(r.generators.size() == 7);
    CHECK(r.normalized == build_normal_form(q({1, -1, 1}), 7));
    for (const auto& rec : r.diagnostics) {
      CHECK(rec.chi_zero);
      CHECK(rec.c.has_value() == (rec.degree % 2 == 1));
    }
  }

  TEST_CASE("order argument truncates") {
    const auto r = normalize(example_bracket(7), 3);
    CHECK(r.order == 3);
    CHECK(r.constants() == q({1}));
  }

  TEST_CASE("already normal input needs no generators") {
    BracketSeries p(5);
    p.set_component(1, p_leading());
    p.set_component(3, Rational(5) * p_x(3));
    p.set_component(5, Rational(-7) * p_x(5));
    const auto r = normalize(p);
    CHECK(r.constants() == q({5, -7}));
    for (const auto& g : r.generators) CHECK(g.is_zero());
  }

  TEST_CASE("idempotence on normal forms") {
    Rng rng(4);
    const auto c = random_constants(rng, 3);
    const auto r = normalize(build_normal_form(c, 7));
    CHECK(r.constants() == c);
    for (const auto& g : r.generators) CHECK(g.is_zero());
  }

  TEST_CASE("random conjugates recover their constants") {
    Rng rng(2718);
    for (int trial = 0; trial < 4; ++trial) {
      const auto c = random_constants(rng, 2);
      const BracketSeries p = random_conjugate(rng, c, 5, 3);
      const auto r = normalize(p);
      CHECK(r.constants() == c);
      BracketSeries replay = p;
      for (const auto& g : r.generators) replay = miura_apply(g, replay);
      CHECK(replay == r.normalized);
      // Nothing but the normal part is left at any degree.
      for (int d = 2; d <= 6; ++d) {
        const auto dec = decompose_h2(r.normalized.component(d), d);
        CHECK(dec.x.is_zero());
        CHECK(dec.chi.is_zero());
      }
      const auto [c1, c2] = invariants_fast(p);
      CHECK(c1 == c[0]);
      CHECK(c2 == c[1]);
    }
  }

  TEST_CASE("closed formulas for the first two invariants") {
    const auto [c1, c2] = invariants_fast(example_bracket(7));
    CHECK(c1 == 1);
    CHECK(c2 == -1);
    const auto [d1, d2] = invariants_fast(build_normal_form(q({3, -2}), 5));
    CHECK(d1 == 3);
    CHECK(d2 == -2);
    CHECK_THROWS_AS(invariants_fast(example_bracket(3)), MissingComponent);

    BracketSeries bad(5);
    bad.set_component(1, p_leading());
    bad.set_component(3, Functional(Rational(1, 2) * DiffPoly::u() * th(0, 0) * th(3, 0)));
    CHECK_THROWS_AS(invariants_fast(bad), NonconstantInvariant);
  }

  TEST_CASE("top coefficients ignore divergences") {
    Rng rng(31);
    const BracketSeries p = random_conjugate(rng, q({2, 1}), 5, 2);
    for (int trial = 0; trial < 5; ++trial) {
      BracketSeries shifted = p;
      for (int d : {3, 5}) {
        const DiffPoly noise = dx(random_density(rng, d - 1, 2, 3)) + dy(random_density(rng, d - 1, 2, 3));
        shifted.set_component(d, Functional(shifted.component(d).density() + noise));
      }
      CHECK(top_coefficient(shifted, 3, 3, 0) == top_coefficient(p, 3, 3, 0));
      CHECK(top_coefficient(shifted, 3, 2, 1) == top_coefficient(p, 3, 2, 1));
      CHECK(top_coefficient(shifted, 5, 5, 0) == top_coefficient(p, 5, 5, 0));
    }
  }

  TEST_CASE("normal forms") {
    CHECK(build_normal_form({}, 4) == [] {
      BracketSeries p(4);
      p.set_component(1, p_leading());
      return p;
    }());
    BracketSeries limit(7);
    limit.set_component(1, p_leading());
    for (int k = 1; k <= 3; ++k) limit.set_component(2 * k + 1, Rational(k % 2 ? 1 : -1) * p_x(2 * k + 1));
    CHECK(build_normal_form(q({1, -1, 1}), 7) == limit);
    Rng rng(6);
    for (int trial = 0; trial < 3; ++trial) CHECK(jacobi_check(build_normal_form(random_constants(rng, 4), 8)).ok);
  }

  TEST_CASE("distinct constants are not Miura equivalent") {
    CHECK_FALSE(verify_distinctness(q({1}), q({2}), 3));
    CHECK(verify_distinctness(q({1, 4}), q({1, 4}), 5));
    CHECK_FALSE(verify_distinctness(q({1, 0}), q({1, 1}), 5));
    CHECK(verify_distinctness(q({1, 0}), q({1, 1}), 3));
  }

  TEST_CASE("failure modes") {
    BracketSeries scaled(3);
    scaled.set_component(1, Rational(2) * p_leading());
    CHECK_THROWS_AS(normalize(scaled), NonstandardLeadingTerm);

    BracketSeries bad(5);
    bad.set_component(1, p_leading());
    bad.set_component(3, Functional(Rational(1, 2) * DiffPoly::u() * th(0, 0) * th(3, 0)));
    CHECK_THROWS_AS(normalize(bad), JacobiViolation);

    // A Bockstein class passes Jacobi at low order but cannot be removed.
    BracketSeries bock(2);
    bock.set_component(1, p_leading());
    bock.set_component(3, Functional(bockstein_split(ThetaPoly::monomial({2, 1, 0}))));
    try {
      normalize(bock);
      FAIL("expected an obstruction");
    } catch (const ObstructionNonzeroBockstein& e) {
      CHECK(e.degree() == 3);
      CHECK(e.chi() == to_string(ThetaPoly::monomial({2, 1, 0}).poly()));
    }
    // At higher order the quadratic Jacobi constraint sees it.
    CHECK_THROWS_AS(normalize(bock.with_order(4)), JacobiViolation);
  }
}
