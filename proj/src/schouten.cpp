#include "thetaform/schouten.hpp"

#include <sstream>
#include <stdexcept>

#include "thetaform/errors.hpp"

namespace thetaform {

namespace {

// Memoised d_x^s d_y^t of a fixed polynomial.
class DerivativeTable {
 public:
  explicit DerivativeTable(DiffPoly base) { table_.emplace(VarIndex{0, 0}, std::move(base)); }

  const DiffPoly& get(VarIndex v) {
    auto it = table_.find(v);
    if (it != table_.end()) return it->second;
    DiffPoly d = v.s > 0 ? dx(get({v.s - 1, v.t})) : dy(get({v.s, v.t - 1}));
    return table_.emplace(v, std::move(d)).first->second;
  }

 private:
  std::map<VarIndex, DiffPoly> table_;
};

}  // namespace

Functional schouten(const Functional& p, const Functional& q) {
  if (p.density().is_zero() || q.density().is_zero()) return {};
  const auto pdeg = p.super_degree();
  const auto qdeg = q.super_degree();
  if (!pdeg || !qdeg) throw InhomogeneousSuperDegree("schouten: arguments must be homogeneous in super degree");

  // \int a * (-d)^{s,t} b = \int (d^{s,t} a) * b lets every derivative land on
  // the variational derivatives of p, which are typically the smaller side.
  DerivativeTable dtheta(var_theta(p.density()));
  DerivativeTable du(var_u(p.density()));
  const Rational sign = (*pdeg % 2 == 0) ? 1 : -1;

  DiffPoly result;
  for (const auto& [v, part] : all_partials_u(q.density())) result += mul(dtheta.get(v), part);
  DiffPoly second;
  for (const auto& [v, part] : all_partials_theta(q.density())) second += mul(du.get(v), part);
  result += second * sign;
  return Functional(std::move(result)).reduced();
}

Functional p_theta(int s, int t) {
  DiffPoly d = mul(DiffPoly::theta({0, 0}), DiffPoly::theta({s, t})) * Rational(1, 2);
  return Functional(std::move(d));
}

VectorField::VectorField(Functional f, int degree) : f_(std::move(f)), degree_(degree) {
  if (degree < 1) throw std::invalid_argument("vector field degree must be >= 1");
  if (f_.density().is_zero()) return;
  const auto g = f_.grade();
  if (!g) {
    const auto p = f_.super_degree();
    bool same_degree = true;
    for (const auto& [m, c] : f_.density().terms()) same_degree = same_degree && m.grade().d == degree;
    if (p == 1 && same_degree) return;
    throw std::invalid_argument("vector field must have super degree 1 and homogeneous standard degree");
  }
  if (g->p != 1 || g->d != degree) {
    std::ostringstream msg;
    msg << "vector field of grade (" << g->d << "," << g->p << "," << g->w << ") does not match degree " << degree;
    throw std::invalid_argument(msg.str());
  }
}

VectorField VectorField::from_characteristic(const DiffPoly& g) {
  int degree = 0;
  for (const auto& [m, c] : g.terms()) {
    if (!m.thetas.empty()) throw std::invalid_argument("characteristic must not contain thetas");
    const int d = m.grade().d;
    if (degree == 0) degree = d;
    if (d != degree) throw std::invalid_argument("characteristic must be homogeneous in standard degree");
  }
  if (degree == 0) {
    if (g.is_zero()) throw std::invalid_argument("zero characteristic has no degree; use VectorField(Functional{}, d)");
    throw std::invalid_argument("characteristic of degree 0 is not a Miura generator");
  }
  return VectorField(Functional(mul(g, DiffPoly::theta({0, 0}))), degree);
}

BracketSeries::BracketSeries(int order) : order_(order) {
  if (order < 1) throw std::invalid_argument("bracket series order must be >= 1");
}

const Functional& BracketSeries::component(int d) const {
  static const Functional zero;
  auto it = components_.find(d);
  return it == components_.end() ? zero : it->second;
}

void BracketSeries::set_component(int d, Functional f) {
  if (d < 1) throw std::invalid_argument("bracket components start at degree 1");
  if (d > max_degree()) return;
  for (const auto& [m, c] : f.density().terms()) {
    const Grade g = m.grade();
    if (g.p != 2 || g.d != d) {
      std::ostringstream msg;
      msg << "component " << d << " contains a term of grade (" << g.d << "," << g.p << "," << g.w << ")";
      throw std::invalid_argument(msg.str());
    }
  }
  if (f.density().is_zero()) {
    components_.erase(d);
  } else {
    components_[d] = std::move(f);
  }
}

void BracketSeries::add_to_component(int d, const Functional& f) {
  if (d > max_degree()) return;
  set_component(d, (component(d) + f).reduced());
}

BracketSeries BracketSeries::with_order(int order) const {
  BracketSeries out(order);
  for (const auto& [d, f] : components_) out.set_component(d, f);
  return out;
}

bool BracketSeries::is_standard() const { return component(1) == p_leading(); }

bool operator==(const BracketSeries& a, const BracketSeries& b) {
  const int top = std::max(a.max_degree(), b.max_degree());
  for (int d = 1; d <= top; ++d) {
    if (!(a.component(d) == b.component(d))) return false;
  }
  return true;
}

BracketSeries miura_apply(const VectorField& x, const BracketSeries& p) {
  BracketSeries out = p;
  if (x.is_zero()) return out;
  const int m = x.degree();
  for (const auto& [l, pl] : p.components()) {
    Functional term = pl;
    for (int n = 1; l + n * m <= p.max_degree(); ++n) {
      term = Rational(1, n) * ad(x, term);
      if (term.density().is_zero()) break;
      out.add_to_component(l + n * m, term);
    }
  }
  return out;
}

Functional schouten_square(const BracketSeries& p, int n) {
  Functional sum;
  for (int l = 1; 2 * l <= n; ++l) {
    const Functional& a = p.component(l);
    const Functional& b = p.component(n - l);
    if (a.density().is_zero() || b.density().is_zero()) continue;
    // [P_l, P_m] = [P_m, P_l] for bivectors, so off-diagonal pairs count twice.
    Functional term = schouten(a, b);
    if (2 * l != n) term *= Rational(2);
    sum += term;
  }
  return sum;
}

JacobiReport jacobi_check(const BracketSeries& p) {
  for (int n = 2; n <= p.order() + 2; ++n) {
    if (!schouten_square(p, n).is_zero()) return {false, n};
  }
  return {};
}

}  // namespace thetaform
