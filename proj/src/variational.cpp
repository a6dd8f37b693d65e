#include "thetaform/variational.hpp"

#include <sstream>
#include <stdexcept>

#include "thetaform/errors.hpp"
#include "thetaform/linalg.hpp"

namespace thetaform {

namespace {

// sum_{s,t} (-d_x)^s (-d_y)^t f_{s,t}, evaluated Horner-style in both axes.
DiffPoly euler_sum(const std::map<VarIndex, DiffPoly>& parts) {
  if (parts.empty()) return {};
  std::map<int, std::map<int, const DiffPoly*>> by_s;
  int max_s = 0;
  for (const auto& [v, f] : parts) {
    by_s[v.s][v.t] = &f;
    max_s = std::max(max_s, v.s);
  }
  DiffPoly result;
  for (int s = max_s; s >= 0; --s) {
    DiffPoly h;
    auto row = by_s.find(s);
    if (row != by_s.end()) {
      const int max_t = row->second.rbegin()->first;
      for (int t = max_t; t >= 0; --t) {
        h = -dy(h);
        auto it = row->second.find(t);
        if (it != row->second.end()) h += *it->second;
      }
    }
    result = -dx(result);
    result += h;
  }
  return result;
}

}  // namespace

DiffPoly var_u(const DiffPoly& density) { return euler_sum(all_partials_u(density)); }

DiffPoly var_theta(const DiffPoly& density) { return euler_sum(all_partials_theta(density)); }

bool is_total_divergence(const DiffPoly& a) {
  if (sgn(a.constant_term()) != 0) return false;
  return var_theta(a).is_zero() && var_u(a).is_zero();
}

DiffPoly reduce_density(const DiffPoly& density) {
  DiffPoly out;
  const DiffPoly theta0 = DiffPoly::theta({0, 0});
  const DiffPoly u = DiffPoly::u();
  for (const auto& [p, part] : split_by_super_degree(density)) {
    if (p >= 1) {
      out += mul(theta0, var_theta(part)) * Rational(1, p);
      continue;
    }
    for (const auto& [w, piece] : split_by_weight(part)) {
      if (w >= 1) {
        out += mul(u, var_u(piece)) * Rational(1, w);
      } else {
        out += piece;
      }
    }
  }
  return out;
}

DivergenceWitness divergence_decompose(const DiffPoly& a, std::optional<Grade> hint) {
  if (hint && !a.is_zero()) {
    const auto g = grade_of(a);
    if (!g || *g != *hint) throw std::invalid_argument("divergence_decompose: density does not have the hinted grade");
  }
  DivergenceWitness out;
  for (const auto& [bg, block] : split_by_bigrade(a)) {
    std::vector<DiffPoly> images;
    std::vector<std::pair<Monomial, bool>> unknowns;  // (monomial, is_x)
    if (bg.dx >= 1) {
      for (auto& m : enumerate_basis(BiGrade{bg.dx - 1, bg.dy, bg.p, bg.w})) {
        images.push_back(dx(DiffPoly::from_monomial(m)));
        unknowns.emplace_back(std::move(m), true);
      }
    }
    if (bg.dy >= 1) {
      for (auto& m : enumerate_basis(BiGrade{bg.dx, bg.dy - 1, bg.p, bg.w})) {
        images.push_back(dy(DiffPoly::from_monomial(m)));
        unknowns.emplace_back(std::move(m), false);
      }
    }
    auto x = linalg::solve_combination(images, block);
    if (!x) {
      std::ostringstream msg;
      msg << "density is not a total divergence: " << block;
      throw NotADivergence(msg.str());
    }
    for (std::size_t j = 0; j < unknowns.size(); ++j) {
      if (sgn((*x)[j]) == 0) continue;
      auto& target = unknowns[j].second ? out.bx : out.by;
      target.add_term(unknowns[j].first, (*x)[j]);
    }
  }
  return out;
}

}  // namespace thetaform
