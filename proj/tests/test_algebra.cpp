#include "doctest.h"
#include "oracles.hpp"
#include "thetaform/algebra.hpp"

using namespace thetaform;

namespace {

DiffPoly th(int s, int t) { return DiffPoly::theta({s, t}); }
DiffPoly ud(int s, int t, unsigned e = 1) { return DiffPoly::u({s, t}, e); }

int parity(const DiffPoly& a) { return super_degree_of(a).value() % 2; }

}  // namespace

TEST_SUITE("algebra") {
  TEST_CASE("odd variables anticommute and square to zero") {
    CHECK(th(0, 0) * th(1, 0) == -(th(1, 0) * th(0, 0)));
    CHECK((th(1, 0) * th(1, 0)).is_zero());
    const auto canon = theta_monomial({{0, 0}, {1, 0}});
    REQUIRE(canon);
    CHECK(canon->second == -1);
    CHECK_FALSE(theta_monomial({{2, 1}, {2, 1}}));
  }

  TEST_CASE("commutative part multiplies exponents") {
    const DiffPoly prod = DiffPoly::u() * (DiffPoly::u() * ud(1, 0));
    CHECK(prod == DiffPoly::u(2) * ud(1, 0));
    CHECK(grade_of(prod) == Grade{1, 0, 3});
  }

  TEST_CASE("total derivatives") {
    CHECK(dx(DiffPoly::u() * th(0, 0)) == ud(1, 0) * th(0, 0) + DiffPoly::u() * th(1, 0));
    CHECK(dy(th(0, 0)) == th(0, 1));
    CHECK(dx(Rational(1, 2) * DiffPoly::u(2)) == DiffPoly::u() * ud(1, 0));
    CHECK(dx(ud(1, 2, 3)) == Rational(3) * ud(1, 2, 2) * ud(2, 2));
    CHECK(dx(DiffPoly::constant(7)).is_zero());
    CHECK(total_derivative(DiffPoly::u(), VarIndex{2, 1}) == ud(2, 1));
  }

  TEST_CASE("partial derivatives") {
    // Left derivative: bring theta^(0,1) to the front, then drop it.
    CHECK(partial_theta(th(0, 0) * th(0, 1), {0, 1}) == -th(0, 0));
    CHECK(partial_theta(th(0, 1) * th(0, 0), {0, 1}) == th(0, 0));
    CHECK(partial_u(DiffPoly::u() * ud(1, 0, 2), {1, 0}) == Rational(2) * DiffPoly::u() * ud(1, 0));
    CHECK(partial_theta(th(1, 0), {2, 0}).is_zero());
    CHECK(partial_u(DiffPoly::u(3), {0, 0}) == Rational(3) * DiffPoly::u(2));
    CHECK(partial_derivative(th(2, 0), Variable{VarKind::theta, {2, 0}}) == DiffPoly::constant(1));
  }

  TEST_CASE("left theta derivative sign is consistent with both orderings") {
    // d/dtheta_a (theta_a X) = X for any X; the value on X theta_a follows
    // from anticommutation and must agree with the implementation.
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
      const DiffPoly x = random_density(rng, 3, 1 + trial % 3, 2);
      const DiffPoly a = th(4, 1);
      if (!(a * x).is_zero()) {
        CHECK(partial_theta(a * x, {4, 1}) == x);
        const Rational sign = parity(x) ? -1 : 1;
        CHECK(partial_theta(x * a, {4, 1}) == sign * x);
      }
      for (const auto& [v, part] : all_partials_theta(x)) {
        CHECK(part == partial_theta(x, v));
        CHECK(partial_theta(part, v).is_zero());
      }
      for (const auto& [v, part] : all_partials_u(x)) CHECK(part == partial_u(x, v));
    }
  }

  TEST_CASE("grades") {
    CHECK(grade_of(Rational(1, 2) * th(0, 0) * th(0, 1)) == Grade{1, 2, 0});
    CHECK(grade_of(ud(2, 0) * th(1, 0) * th(0, 0)) == Grade{3, 2, 1});
    CHECK_FALSE(grade_of(DiffPoly::u() + th(1, 0)));
    const DiffPoly mixed = DiffPoly::u() + th(1, 0) + ud(1, 0);
    CHECK(homogeneous_component(mixed, Grade{1, 0, 1}) == ud(1, 0));
    CHECK(split_by_super_degree(mixed).size() == 2);
  }

  TEST_CASE("enumerate_basis small cases") {
    auto b = enumerate_basis(Grade{1, 2, 0});
    REQUIRE(b.size() == 2);
    DiffPoly sum;
    for (const auto& m : b) sum += DiffPoly::from_monomial(m);
    // Up to the sign of the canonical ordering the basis is {theta theta_x, theta theta_y}.
    CHECK(sum == th(1, 0) * th(0, 0) + th(0, 1) * th(0, 0));
    CHECK(enumerate_basis(Grade{0, 0, 2}).size() == 1);
    CHECK(enumerate_basis(Grade{0, 1, 0}).size() == 1);
    for (const auto& m : enumerate_basis(Grade{4, 2, 2})) CHECK(m.grade() == Grade{4, 2, 2});
  }

  TEST_CASE("enumerate_basis matches generating-function counts") {
    for (int d = 0; d <= 6; ++d) {
      for (int p = 0; p <= 3; ++p) {
        for (int w = 0; w <= 3; ++w) {
          CAPTURE(d);
          CAPTURE(p);
          CAPTURE(w);
          CHECK(static_cast<long>(enumerate_basis(Grade{d, p, w}).size()) == oracle::basis_count(d, p, w));
        }
      }
    }
  }

  TEST_CASE("randomized algebra laws") {
    Rng rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
      std::uniform_int_distribution<int> dist(0, 6), pd(0, 3);
      const DiffPoly a = random_density(rng, dist(rng), pd(rng), 3);
      const DiffPoly b = random_density(rng, dist(rng), pd(rng), 3);
      const DiffPoly c = random_density(rng, dist(rng) % 3, pd(rng) % 2, 2);
      if (a.is_zero() || b.is_zero()) continue;
      const Rational sign = (parity(a) * parity(b)) ? -1 : 1;
      CHECK(a * b == sign * (b * a));
      CHECK((a * b) * c == a * (b * c));
      CHECK(dx(dy(a)) == dy(dx(a)));
      CHECK(dx(a * b) == dx(a) * b + a * dx(b));
      CHECK(dy(a * b) == dy(a) * b + a * dy(b));
      const Grade g = grade_of(a).value();
      CHECK(grade_of(dx(a)).value_or(Grade{g.d + 1, g.p, g.w}) == Grade{g.d + 1, g.p, g.w});
      if (!(a * b).is_zero()) {
        const Grade h = grade_of(b).value();
        CHECK(grade_of(a * b) == Grade{g.d + h.d, g.p + h.p, g.w + h.w});
      }
    }
  }

  TEST_CASE("printing uses the bracket syntax") {
    CHECK(to_string(Rational(1, 2) * th(0, 0) * th(0, 1)) == "-1/2*th[0,1]*th[0,0]");
    CHECK(to_string(DiffPoly{}) == "0");
    CHECK(to_string(DiffPoly::u(2) * ud(1, 0)) == "u^2*u[1,0]");
  }
}
