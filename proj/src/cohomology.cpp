#include "thetaform/cohomology.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "thetaform/errors.hpp"

namespace thetaform {

namespace {

using linalg::Coordinates;
using linalg::SparseVector;

// Univariate polynomials over Q, ascending coefficients, no trailing zeros.
using UPoly = std::vector<Rational>;

void trim(UPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

UPoly poly_mod(UPoly a, const UPoly& b) {
  trim(a);
  while (a.size() >= b.size()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return a;
}

UPoly poly_gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool has_real_root(const UPoly& p) {
  if (p.size() <= 1) return false;
  if (p.size() == 2) return true;
  if (p.size() == 3) return p[1] * p[1] - 4 * p[0] * p[2] >= 0;
  throw std::domain_error("real root test supports degree <= 2");
}

bool is_theta_standard(const Monomial& m) {
  const auto& th = m.thetas;
  if (th.empty()) return true;
  if (th.size() == 1) return th[0].s == 0;
  return th[0].s == th[1].s + 1;
}

bool in_span(const std::vector<SparseVector>& columns, const SparseVector& v) {
  return linalg::solve(columns, v).has_value();
}

}  // namespace

DiffPoly delta(const DiffPoly& a) {
  DiffPoly out;
  for (const auto& [v, part] : all_partials_u(a)) out += mul(DiffPoly::theta({v.s, v.t + 1}), part);
  return out;
}

ThetaPoly::ThetaPoly(DiffPoly poly) : poly_(std::move(poly)) {
  for (const auto& [m, c] : poly_.terms()) {
    bool ok = m.upow == 0 && m.ufactors.empty();
    for (const auto& v : m.thetas) ok = ok && v.t == 0;
    if (!ok) throw std::invalid_argument("not a polynomial in theta^(k,0): " + to_string(poly_));
  }
}

ThetaPoly ThetaPoly::monomial(std::initializer_list<int> orders, const Rational& c) {
  DiffPoly r = DiffPoly::constant(c);
  for (int k : orders) r = mul(r, DiffPoly::theta({k, 0}));
  return ThetaPoly(std::move(r));
}

std::vector<ThetaPoly> theta_basis(int p, int d) {
  auto mons = enumerate_basis(BiGrade{d, 0, p, 0});
  std::sort(mons.rbegin(), mons.rend());
  std::vector<ThetaPoly> out;
  out.reserve(mons.size());
  for (auto& m : mons) out.emplace_back(DiffPoly::from_monomial(std::move(m)));
  return out;
}

DiffPoly bockstein_split(const ThetaPoly& t) {
  DiffPoly out;
  for (const auto& [v, part] : all_partials_theta(t.poly())) out += mul(DiffPoly::u(v), part);
  return out;
}

std::vector<ThetaPoly> theta_quotient_basis(int p, int d) {
  if (p < 1 || d < 0) throw std::invalid_argument("theta_quotient_basis needs p >= 1 and d >= 0");
  std::vector<ThetaPoly> out;
  for (auto& t : theta_basis(p, d)) {
    if (is_theta_standard(t.poly().terms().begin()->first)) out.push_back(std::move(t));
  }
  return out;
}

std::size_t quotient_dimension_by_rank(int p, int d) {
  const auto target = theta_basis(p, d);
  if (d == 0) return target.size();
  Coordinates coords;
  std::vector<SparseVector> images;
  for (const auto& t : theta_basis(p, d - 1)) images.push_back(coords.vectorize(dx(t.poly())));
  return target.size() - linalg::rank(images);
}

ThetaPoly reduce_mod_dx(const ThetaPoly& t) {
  DiffPoly work = t.poly();
  DiffPoly out;
  // The leading term of d_x(theta^{i1} theta^{i2} ...) is theta^{i1+1} theta^{i2} ...
  // with coefficient one, so a descending sweep removes every non-standard term.
  while (!work.is_zero()) {
    const auto& [m, c] = *work.terms().rbegin();
    const Monomial lead = m;
    const Rational coeff = c;
    if (is_theta_standard(lead)) {
      out.add_term(lead, coeff);
      work.add_term(lead, -coeff);
      continue;
    }
    Monomial pre = lead;
    pre.thetas[0].s -= 1;
    work -= dx(DiffPoly::from_monomial(std::move(pre), coeff));
  }
  return ThetaPoly(std::move(out));
}

H2Decomposition decompose_h2(const Functional& p, int d, linalg::PivotOrder order) {
  if (d < 2) throw std::invalid_argument("decompose_h2 needs degree >= 2");
  for (const auto& [m, c] : p.density().terms()) {
    const Grade g = m.grade();
    if (g.d != d || g.p != 2) {
      std::ostringstream msg;
      msg << "decompose_h2: term of grade (" << g.d << "," << g.p << "," << g.w << ") in a degree-" << d
          << " bivector";
      throw std::invalid_argument(msg.str());
    }
  }
  if (!is_total_divergence(delta(p.density()))) {
    throw NotACocycle("degree-" + std::to_string(d) + " component is not closed under [p_1, .]");
  }

  const DiffPoly theta0 = DiffPoly::theta({0, 0});
  std::optional<Rational> c;
  if (d % 2 == 1) c = Rational(0);
  ThetaPoly chi;
  DiffPoly xdensity;

  auto fail = [d](const std::string& what) {
    throw InternalInconsistency("decompose_h2 at degree " + std::to_string(d) + ": " + what);
  };

  for (const auto& [bg, block] : split_by_bigrade(var_theta(p.density()))) {
    if (bg.dy == 0 && bg.w == 0) {
      const DiffPoly column = var_theta(p_x(d).density());
      if (column.is_zero()) fail("constant class at even degree");
      auto sol = linalg::solve_combination({column}, block, order);
      if (!sol) fail("weight-0 part is not a multiple of p_d");
      c = (*sol)[0];
    } else if (bg.dy == 0 && bg.w == 1) {
      const auto basis = theta_quotient_basis(3, d);
      std::vector<DiffPoly> columns;
      for (const auto& b : basis) columns.push_back(var_theta(bockstein_split(b)));
      auto sol = linalg::solve_combination(columns, block, order);
      if (!sol) fail("weight-1 part is not in the image of B");
      for (std::size_t i = 0; i < basis.size(); ++i) chi += (*sol)[i] * basis[i];
    } else if (bg.dy == 0) {
      fail("nonzero part of weight " + std::to_string(bg.w) + " without y-derivatives");
    } else {
      const auto mons = enumerate_basis(BiGrade{bg.dx, bg.dy - 1, 0, bg.w + 1});
      std::vector<DiffPoly> columns;
      columns.reserve(mons.size());
      for (const auto& m : mons) columns.push_back(var_theta(delta(mul(DiffPoly::from_monomial(m), theta0))));
      auto sol = linalg::solve_combination(columns, block, order);
      if (!sol) fail("part of bigrade (" + std::to_string(bg.dx) + "," + std::to_string(bg.dy) + ") is not exact");
      for (std::size_t i = 0; i < mons.size(); ++i) {
        if (sgn((*sol)[i]) != 0) xdensity += mul(DiffPoly::from_monomial(mons[i], (*sol)[i]), theta0);
      }
    }
  }

  H2Decomposition out{c, chi, VectorField(Functional(xdensity), d - 1)};
  Functional rebuilt(bockstein_split(chi) + delta(xdensity));
  if (c) rebuilt += *c * p_x(d);
  if (!(rebuilt == p)) fail("round trip does not reproduce the input");
  return out;
}

bool verify_square_lemma(int k) {
  if (k < 1) throw std::invalid_argument("verify_square_lemma needs k >= 1");
  std::vector<int> idx;
  for (int i = k / 2 + 1; i <= k; ++i) idx.push_back(i);
  const std::size_t n = idx.size();
  if (n < 2) return true;

  std::vector<ThetaPoly> mono;
  for (int i : idx) mono.push_back(ThetaPoly::monomial({i, k - i}));

  // Squares are 2 sum_{a<b} alpha_a alpha_b m_a m_b; work in quotient coordinates.
  Coordinates coords;
  std::map<std::pair<std::size_t, std::size_t>, SparseVector> pair_class;
  std::vector<SparseVector> all;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      auto v = coords.vectorize(reduce_mod_dx(mono[a] * mono[b]).poly());
      pair_class.emplace(std::make_pair(a, b), v);
      all.push_back(std::move(v));
    }
  }
  if (linalg::rank(all) == all.size()) return true;

  // Some combination of products is exact.  Let t be the largest and s the
  // second largest index in the support of alpha; alpha_s alpha_t != 0, and
  // every other product occurring involves either (i, t) with i < s or two
  // indices <= s.  If m_s m_t is independent of those, alpha^2 is not exact.
  for (std::size_t t = 1; t < n; ++t) {
    for (std::size_t s = 0; s < t; ++s) {
      std::vector<SparseVector> others;
      for (std::size_t i = 0; i < s; ++i) others.push_back(pair_class.at({i, t}));
      for (std::size_t j = 1; j <= s; ++j) {
        for (std::size_t i = 0; i < j; ++i) others.push_back(pair_class.at({i, j}));
      }
      if (in_span(others, pair_class.at({s, t}))) return false;
    }
  }
  return true;
}

bool verify_varder_lemma(int d) {
  if (d < 1) throw std::invalid_argument("verify_varder_lemma needs d >= 1");
  Coordinates coords;
  std::vector<SparseVector> images;
  for (const auto& t : theta_basis(3, d)) images.push_back(coords.vectorize(var_theta(t.poly())));
  for (int i = 0; 2 * i <= d - 1; ++i) {
    const SparseVector target = coords.vectorize(ThetaPoly::monomial({d - i, i}).poly());
    if (in_span(images, target)) return false;
  }
  return true;
}

bool verify_nontrivial_lemma(int d) {
  const auto basis = theta_quotient_basis(3, d);
  const std::size_t n = basis.size();
  if (n == 0) return true;
  if (n > 2) throw std::domain_error("verify_nontrivial_lemma supports quotient dimension <= 2");

  std::vector<Functional> b;
  for (const auto& t : basis) b.emplace_back(bockstein_split(t));
  // Products are equal in the quotient iff their theta-Euler images agree.
  auto image = [&](std::size_t i, std::size_t j) { return var_theta(schouten(b[i], b[j]).density()); };

  const DiffPoly v11 = image(0, 0);
  if (n == 1) return !v11.is_zero();
  if (v11.is_zero()) return false;
  const DiffPoly v12 = image(0, 1);
  const DiffPoly v22 = image(1, 1);

  // chi = a v1 + b v2 with b != 0: the square is b^2 (r^2 v11 + 2 r v12 + v22), r = a/b.
  std::map<Monomial, UPoly> rows;
  for (const auto& [m, c] : v11.terms()) rows[m].resize(3), rows[m][2] += c;
  for (const auto& [m, c] : v12.terms()) rows[m].resize(3), rows[m][1] += 2 * c;
  for (const auto& [m, c] : v22.terms()) rows[m].resize(3), rows[m][0] += c;
  UPoly g;
  for (auto& [m, row] : rows) g = poly_gcd(g, row);
  if (g.empty()) return false;
  return !has_real_root(g);
}

bool verify_bockstein_injective(int d) {
  const auto basis = theta_quotient_basis(3, d);
  if (basis.empty()) return true;
  const DiffPoly theta0 = DiffPoly::theta({0, 0});
  Coordinates coords;
  std::vector<SparseVector> exact;
  for (const auto& m : enumerate_basis(Grade{d - 1, 0, 2})) {
    exact.push_back(coords.vectorize(var_theta(delta(mul(DiffPoly::from_monomial(m), theta0)))));
  }
  std::vector<SparseVector> all = exact;
  for (const auto& t : basis) all.push_back(coords.vectorize(var_theta(bockstein_split(t))));
  return linalg::rank(all) == linalg::rank(exact) + basis.size();
}

}  // namespace thetaform
