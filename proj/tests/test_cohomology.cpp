#include "doctest.h"
#include "oracles.hpp"
#include "thetaform/cohomology.hpp"
#include "thetaform/errors.hpp"

using namespace thetaform;

namespace {

DiffPoly th(int s, int t) { return DiffPoly::theta({s, t}); }
DiffPoly ud(int s, int t, unsigned e = 1) { return DiffPoly::u({s, t}, e); }
ThetaPoly theta_mono(std::initializer_list<int> k) { return ThetaPoly::monomial(k); }

// All theta monomials of degree <= max_d, any number of factors.
std::vector<ThetaPoly> all_theta_monomials(int max_d) {
  std::vector<ThetaPoly> out;
  for (int d = 0; d <= max_d; ++d) {
    for (int p = 0; p <= 5; ++p) {
      for (auto& t : theta_basis(p, d)) out.push_back(std::move(t));
    }
  }
  return out;
}

bool in_dx_image(const ThetaPoly& t, int p, int d) {
  if (t.is_zero()) return true;
  if (d == 0) return false;
  std::vector<DiffPoly> images;
  for (const auto& b : theta_basis(p, d - 1)) images.push_back(dx(b.poly()));
  return linalg::solve_combination(images, t.poly()).has_value();
}

}  // namespace

TEST_SUITE("cohomology") {
  TEST_CASE("differential on small inputs") {
    CHECK(delta(DiffPoly::u()) == th(0, 1));
    CHECK(delta(ud(1, 0) * th(0, 0)) == th(1, 1) * th(0, 0));
    CHECK(delta(DiffPoly::constant(3)).is_zero());
  }

  TEST_CASE("differential squares to zero") {
    for (int d = 0; d <= 8; ++d) {
      for (int p = 0; p <= 3; ++p) {
        for (int w = 0; w <= 3; ++w) {
          for (const auto& m : enumerate_basis(Grade{d, p, w})) {
            if (!delta(delta(DiffPoly::from_monomial(m))).is_zero()) FAIL("delta^2 != 0 on " << m);
          }
        }
      }
    }
  }

  TEST_CASE("Bockstein map") {
    CHECK(bockstein_split(theta_mono({2, 1, 0})) ==
          ud(2, 0) * th(1, 0) * th(0, 0) - ud(1, 0) * th(2, 0) * th(0, 0) + DiffPoly::u() * th(2, 0) * th(1, 0));
    CHECK(bockstein_split(ThetaPoly(DiffPoly::constant(1))).is_zero());
    for (const auto& t : all_theta_monomials(10)) {
      CHECK(delta(bockstein_split(t)) == dy(t.poly()));
      CHECK(bockstein_split(dx(t)) == dx(bockstein_split(t)));
    }
  }

  TEST_CASE("theta polynomials reject u and y-derivatives") {
    CHECK_THROWS(ThetaPoly(DiffPoly::u() * th(0, 0)));
    CHECK_THROWS(ThetaPoly(th(0, 1)));
    CHECK(theta_mono({1, 1}).is_zero());
    CHECK(theta_mono({0, 3}) == Rational(-1) * theta_mono({3, 0}));
  }

  TEST_CASE("quotient bases") {
    const auto b3 = theta_quotient_basis(3, 3);
    REQUIRE(b3.size() == 1);
    CHECK(b3[0] == theta_mono({2, 1, 0}));
    const auto b5 = theta_quotient_basis(3, 5);
    REQUIRE(b5.size() == 1);
    CHECK(b5[0] == theta_mono({3, 2, 0}));
    CHECK(theta_quotient_basis(1, 0).size() == 1);
    CHECK(theta_quotient_basis(1, 4).empty());

    for (int k = 2; k <= 8; ++k) {
      CAPTURE(k);
      CHECK(theta_quotient_basis(3, 2 * k - 1).size() == static_cast<std::size_t>((k - 2) / 3 + 1));
      if (k >= 3) CHECK(theta_quotient_basis(3, 2 * k).size() == static_cast<std::size_t>((k - 3) / 3 + 1));
      // Explicit form theta^{k-l} theta^{k-l-1} theta^{2l} in odd degree.
      const auto odd = theta_quotient_basis(3, 2 * k - 1);
      for (int l = 0; l <= (k - 2) / 3; ++l) CHECK(odd[l] == theta_mono({k - l, k - l - 1, 2 * l}));
    }
    for (int p = 1; p <= 4; ++p) {
      for (int d = 0; d <= 14; ++d) CHECK(theta_quotient_basis(p, d).size() == quotient_dimension_by_rank(p, d));
    }
    for (int k = 1; k <= 7; ++k) CHECK(theta_quotient_basis(2, 2 * k).size() == quotient_dimension_by_rank(2, 2 * k));
  }

  TEST_CASE("reduction modulo d_x") {
    CHECK(reduce_mod_dx(dx(theta_mono({2, 1, 0}))).is_zero());
    CHECK(reduce_mod_dx(theta_mono({3, 2, 0})) == theta_mono({3, 2, 0}));
    // Independent solve: theta^4 theta^1 theta^0 + a theta^3 theta^2 theta^0 in im d_x.
    const auto coeff = linalg::solve_combination({dx(theta_mono({3, 1, 0}).poly()), theta_mono({3, 2, 0}).poly()}, theta_mono({4, 1, 0}).poly());
    REQUIRE(coeff);
    CHECK(reduce_mod_dx(theta_mono({4, 1, 0})) == (*coeff)[1] * theta_mono({3, 2, 0}));
    CHECK((*coeff)[1] == -1);

    for (int p = 1; p <= 4; ++p) {
      for (int d = 0; d <= 10; ++d) {
        const auto std_basis = theta_quotient_basis(p, d);
        for (const auto& t : theta_basis(p, d)) {
          const ThetaPoly r = reduce_mod_dx(t);
          CHECK(reduce_mod_dx(r) == r);
          CHECK(in_dx_image(t - r, p, d));
          for (const auto& [m, c] : r.poly().terms()) {
            bool listed = false;
            for (const auto& b : std_basis) listed = listed || b.poly().terms().begin()->first == m;
            CHECK(listed);
          }
        }
        if (d >= 1) {
          for (const auto& t : theta_basis(p, d - 1)) CHECK(reduce_mod_dx(dx(t)).is_zero());
        }
      }
    }
  }

  TEST_CASE("decomposition of normal terms and coboundaries") {
    const auto normal = decompose_h2(p_x(3), 3);
    REQUIRE(normal.c);
    CHECK(*normal.c == 1);
    CHECK(normal.chi.is_zero());
    CHECK(normal.x.is_zero());

    const auto shifted = decompose_h2(p_theta(2, 1), 3);
    REQUIRE(shifted.c);
    CHECK(*shifted.c == 0);
    CHECK(shifted.chi.is_zero());
    CHECK(shifted.x.functional() == Functional(Rational(-1, 2) * ud(2, 0) * th(0, 0)));
    CHECK(ad(shifted.x, p_leading()) == p_theta(2, 1));

    const DiffPoly big_f = Rational(1, 3) * DiffPoly::u(3) - DiffPoly::u();
    const DiffPoly f = DiffPoly::u(2) - DiffPoly::constant(1);
    const Functional p2(Rational(1, 2) * th(0, 0) * (-(f * ud(0, 1)) * th(1, 0) + f * ud(1, 0) * th(0, 1)));
    const auto first = decompose_h2(p2, 2);
    CHECK_FALSE(first.c);
    CHECK(first.chi.is_zero());
    CHECK(ad(first.x, p_leading()) == p2);
    const VectorField expected = VectorField::from_characteristic(-(big_f * ud(1, 0)));
    // Generators are unique up to the kernel of [., p_1].
    CHECK(schouten(first.x.functional() - expected.functional(), p_leading()).is_zero());
  }

  TEST_CASE("non-cocycles are rejected") {
    CHECK_THROWS_AS(decompose_h2(Functional(Rational(1, 2) * DiffPoly::u() * th(0, 0) * th(3, 0)), 3), NotACocycle);
    CHECK_THROWS_AS(decompose_h2(p_leading(), 3), std::invalid_argument);
  }

  TEST_CASE("random cocycles decompose uniquely") {
    Rng rng(123);
    for (int trial = 0; trial < 24; ++trial) {
      const int d = 2 + trial % 7;
      const auto basis = theta_quotient_basis(3, d);
      ThetaPoly chi;
      for (const auto& b : basis) chi += random_rational(rng) * b;
      const Rational c = d % 2 ? random_rational(rng) : Rational(0);
      const VectorField x = random_vector_field(rng, d - 1, 3, 3);
      const Functional p = c * p_x(d) + Functional(bockstein_split(chi)) + ad(x, p_leading());

      const auto left = decompose_h2(p, d, linalg::PivotOrder::leftmost);
      const auto right = decompose_h2(p, d, linalg::PivotOrder::rightmost);
      CHECK(left.c == right.c);
      CHECK(left.chi == right.chi);
      CHECK(left.chi == chi);
      if (d % 2) CHECK(*left.c == c);
      CHECK(ad(left.x, p_leading()) == ad(right.x, p_leading()));
      CHECK(ad(left.x, p_leading()) == ad(x, p_leading()));
    }
  }

  TEST_CASE("square lemma") {
    for (int k = 1; k <= 8; ++k) {
      CAPTURE(k);
      CHECK(verify_square_lemma(k));
    }
    CHECK((theta_mono({3, 0}) * theta_mono({3, 0})).is_zero());
  }

  TEST_CASE("variational derivative lemma") {
    for (int d = 1; d <= 10; ++d) {
      CAPTURE(d);
      CHECK(verify_varder_lemma(d));
    }
  }

  TEST_CASE("nontriviality and injectivity of the splitting") {
    for (int d = 1; d <= 9; ++d) {
      CAPTURE(d);
      CHECK(verify_nontrivial_lemma(d));
      CHECK(verify_bockstein_injective(d));
    }
  }
}
