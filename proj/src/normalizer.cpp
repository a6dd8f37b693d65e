#include "thetaform/normalizer.hpp"

#include <sstream>
#include <stdexcept>

#include "thetaform/errors.hpp"

namespace thetaform {

std::vector<Rational> NormalizationResult::constants() const {
  std::vector<Rational> out;
  for (const auto& [k, c] : invariants) out.push_back(c);
  return out;
}

NormalizationResult normalize(const BracketSeries& input, std::optional<int> order) {
  const BracketSeries p = order ? input.with_order(*order) : input;
  if (!p.is_standard()) throw NonstandardLeadingTerm("leading term is not 1/2 theta theta^(0,1)");
  const auto jacobi = jacobi_check(p);
  if (!jacobi.ok) {
    throw JacobiViolation(*jacobi.violation_degree,
                          "[P, P] does not vanish at degree " + std::to_string(*jacobi.violation_degree));
  }

  NormalizationResult result;
  result.order = p.order();
  BracketSeries current = p;
  for (int d = 2; d <= p.max_degree(); ++d) {
    DegreeRecord rec;
    rec.degree = d;
    const H2Decomposition dec = decompose_h2(current.component(d), d);
    rec.c = dec.c;
    rec.chi_zero = dec.chi.is_zero();
    rec.generator_zero = dec.x.is_zero();
    result.diagnostics.push_back(rec);
    if (!dec.chi.is_zero()) {
      std::ostringstream msg;
      msg << "nonzero Bockstein class at degree " << d << ": " << dec.chi.poly()
          << " (raise the order to test whether it is transient)";
      throw ObstructionNonzeroBockstein(d, to_string(dec.chi.poly()), msg.str());
    }
    if (d % 2 == 1) result.invariants.emplace_back((d - 1) / 2, *dec.c);

    const VectorField generator = -dec.x;
    current = miura_apply(generator, current);
    result.generators.push_back(generator);

    const Functional expected = dec.c ? *dec.c * p_x(d) : Functional{};
    if (!(current.component(d) == expected)) {
      throw InternalInconsistency("degree " + std::to_string(d) + " is not in normal form after its step");
    }
  }

  if (!(current == build_normal_form(result.constants(), p.order()))) {
    throw InternalInconsistency("normalized series differs from the normal form of its constants");
  }
  BracketSeries replay = p;
  for (const auto& g : result.generators) replay = miura_apply(g, replay);
  if (!(replay == current)) throw InternalInconsistency("replaying the generators does not reproduce the result");

  result.normalized = std::move(current);
  return result;
}

DiffPoly top_coefficient(const BracketSeries& p, int d, int k1, int k2) {
  if (k1 + k2 != d) throw std::invalid_argument("top_coefficient needs k1 + k2 = d");
  if (d > p.max_degree()) {
    throw MissingComponent("component of degree " + std::to_string(d) + " lies beyond the series order");
  }
  // In 1/2 theta A(d) theta the top order terms survive integration by parts
  // only when odd, and then the Euler image carries them with coefficient A.
  DiffPoly out;
  const DiffPoly g = var_theta(p.component(d));
  for (const auto& [m, c] : g.terms()) {
    if (m.thetas.size() == 1 && m.thetas[0] == VarIndex{k1, k2}) {
      Monomial rest = m;
      rest.thetas.clear();
      out.add_term(rest, c);
    }
  }
  return out;
}

namespace {

Rational constant_of(const DiffPoly& a, const char* name) {
  for (const auto& [m, c] : a.terms()) {
    if (!m.is_constant()) throw NonconstantInvariant(std::string(name) + " depends on u: " + to_string(a));
  }
  return a.constant_term();
}

}  // namespace

std::pair<Rational, Rational> invariants_fast(const BracketSeries& p) {
  if (!p.is_standard()) throw NonstandardLeadingTerm("leading term is not 1/2 theta theta^(0,1)");
  const DiffPoly a230 = top_coefficient(p, 3, 3, 0);
  const DiffPoly a221 = top_coefficient(p, 3, 2, 1);
  const DiffPoly a450 = top_coefficient(p, 5, 5, 0);
  const Rational c1 = constant_of(a230, "c1");
  const Rational c2 = constant_of(a450 - c1 * a221, "c2");
  return {c1, c2};
}

BracketSeries build_normal_form(const std::vector<Rational>& c, int order) {
  BracketSeries out(order);
  out.set_component(1, p_leading());
  for (std::size_t k = 1; k <= c.size(); ++k) {
    const int d = 2 * static_cast<int>(k) + 1;
    if (sgn(c[k - 1]) != 0) out.set_component(d, c[k - 1] * p_x(d));
  }
  return out;
}

bool verify_distinctness(const std::vector<Rational>& c, const std::vector<Rational>& other, int order) {
  const auto at = [](const std::vector<Rational>& v, std::size_t i) { return i < v.size() ? v[i] : Rational(0); };
  int first = 0;
  for (int k = 1; 2 * k + 1 <= order + 1; ++k) {
    if (at(c, k - 1) != at(other, k - 1)) {
      first = k;
      break;
    }
  }
  if (first == 0) return true;

  // The difference p(other) - p(c) has u-weight 0.  Generators have weight
  // >= 1 and ad_X shifts weight by weight(X) - 1, so only the weight-1 parts
  // of the generators reach it, and its lowest-degree part is governed by
  // the linearized equation ad_X p(c) = (other_k - c_k) p_{2k+1}.
  const int top = 2 * first + 1;
  const BracketSeries pc = build_normal_form(c, order);
  const DiffPoly theta0 = DiffPoly::theta({0, 0});
  linalg::Coordinates coords;
  std::vector<linalg::SparseVector> columns;
  for (int j = 1; j < top; ++j) {
    for (const auto& m : enumerate_basis(Grade{j, 0, 1})) {
      const Functional x(mul(DiffPoly::from_monomial(m), theta0));
      DiffPoly image;
      for (const auto& [l, pl] : pc.components()) {
        if (l + j <= top) image += var_theta(schouten(x, pl).density());
      }
      columns.push_back(coords.vectorize(image));
    }
  }
  const Rational diff = at(other, first - 1) - at(c, first - 1);
  const auto rhs = coords.vectorize(var_theta((diff * p_x(top)).density()));
  return linalg::solve(columns, rhs).has_value();
}

}  // namespace thetaform
