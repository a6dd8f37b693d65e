#include "doctest.h"
#include "oracles.hpp"
#include "thetaform/errors.hpp"
#include "thetaform/variational.hpp"

using namespace thetaform;

namespace {

DiffPoly th(int s, int t) { return DiffPoly::theta({s, t}); }
DiffPoly ud(int s, int t, unsigned e = 1) { return DiffPoly::u({s, t}, e); }

}  // namespace

TEST_SUITE("variational") {
  TEST_CASE("Euler operators on small examples") {
    // u u_x^2: d/du = u_x^2, d/du_x = 2 u u_x, var = u_x^2 - 2 d_x(u u_x) = -u_x^2 - 2 u u_xx
    const DiffPoly f = DiffPoly::u() * ud(1, 0, 2);
    CHECK(var_u(f) == -ud(1, 0, 2) - Rational(2) * DiffPoly::u() * ud(2, 0));
    CHECK(var_theta(Rational(1, 2) * th(0, 0) * th(0, 1)) == th(0, 1));
    CHECK(var_u(DiffPoly::u(3)) == Rational(3) * DiffPoly::u(2));
    CHECK(var_theta(DiffPoly::u() * th(0, 0)) == DiffPoly::u());
  }

  TEST_CASE("divergences are exactly the kernel of the Euler operators") {
    CHECK(is_total_divergence(dx(DiffPoly::u() * th(0, 0))));
    CHECK(is_total_divergence(dy(DiffPoly::u(3) * ud(1, 1))));
    CHECK_FALSE(is_total_divergence(DiffPoly::constant(1)));
    CHECK_FALSE(is_total_divergence(DiffPoly::u()));
    CHECK_FALSE(is_total_divergence(th(0, 0) * th(1, 0) * th(0, 1)));
    CHECK(is_total_divergence(DiffPoly{}));
    CHECK_FALSE(is_total_divergence(th(1, 0) * th(0, 0)));
    CHECK(is_total_divergence(th(2, 0) * th(0, 0)));
    Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
      const DiffPoly a = random_density(rng, 3, trial % 3, 3);
      const DiffPoly b = random_density(rng, 3, trial % 3, 3);
      const DiffPoly div = dx(a) + dy(b);
      CHECK(is_total_divergence(div));
      CHECK(var_u(div).is_zero());
      CHECK(var_theta(div).is_zero());
      const auto witness = divergence_decompose(div);
      CHECK(dx(witness.bx) + dy(witness.by) == div);
    }
  }

  TEST_CASE("divergence_decompose rejects non-divergences") {
    CHECK_THROWS_AS(divergence_decompose(DiffPoly::u() * ud(1, 0, 2)), NotADivergence);
    CHECK_THROWS_AS(divergence_decompose(th(1, 0) * th(0, 0) * th(0, 1)), NotADivergence);
    CHECK_THROWS_AS(divergence_decompose(dx(DiffPoly::u(2)), Grade{2, 0, 2}), std::invalid_argument);
  }

  TEST_CASE("reduced densities represent the same functional") {
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
      const int p = trial % 4;
      const DiffPoly a = random_density(rng, 1 + trial % 5, p, 3);
      const Functional f(a);
      CHECK(f.reduced() == f);
      const Functional shifted(a + dx(random_density(rng, trial % 5, p, 3)) + dy(random_density(rng, trial % 5, p, 3)));
      CHECK(shifted == f);
      CHECK(shifted.reduced().density() == f.reduced().density());
    }
  }

  TEST_CASE("functional equality is not representative equality") {
    const Functional a(DiffPoly::u() * ud(1, 0));
    CHECK(a.is_zero());
    CHECK(a == Functional{});
    CHECK_FALSE(Functional(DiffPoly::u(2)) == Functional{});
  }
}
