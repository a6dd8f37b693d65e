#include "thetaform/algebra.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace thetaform {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

namespace {

using ThetaVec = decltype(Monomial::thetas);

VarIndex shifted(VarIndex v, Axis axis) {
  return axis == Axis::x ? VarIndex{v.s + 1, v.t} : VarIndex{v.s, v.t + 1};
}

// Sorts descending by insertion; returns the permutation sign or nullopt on a repeat.
std::optional<int> canonicalize_thetas(ThetaVec& v) {
  int sign = 1;
  for (std::size_t i = 1; i < v.size(); ++i) {
    for (std::size_t j = i; j > 0; --j) {
      if (v[j - 1] == v[j]) return std::nullopt;
      if (v[j - 1] < v[j]) {
        std::swap(v[j - 1], v[j]);
        sign = -sign;
      } else {
        break;
      }
    }
  }
  return sign;
}

void add_ufactor(Monomial& m, VarIndex v, unsigned e) {
  if (e == 0) return;
  if (v == VarIndex{0, 0}) {
    m.upow += e;
    return;
  }
  auto it = std::lower_bound(m.ufactors.begin(), m.ufactors.end(), v,
                             [](const Monomial::UFactor& f, VarIndex key) { return f.first < key; });
  if (it != m.ufactors.end() && it->first == v) {
    it->second += e;
  } else {
    m.ufactors.insert(it, {v, e});
  }
}

// Removes one power of u^(v); precondition: the factor is present.
void drop_ufactor(Monomial& m, std::size_t pos) {
  if (--m.ufactors[pos].second == 0) m.ufactors.erase(m.ufactors.begin() + static_cast<long>(pos));
}

void accumulate(DiffPoly::Terms& out, const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = out.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) out.erase(it);
  }
}

// Visits every term of the derivative of a single monomial.
template <class Emit>
void derive_monomial(const Monomial& m, Axis axis, Emit&& emit) {
  if (m.upow > 0) {
    Monomial r = m;
    r.upow -= 1;
    add_ufactor(r, shifted({0, 0}, axis), 1);
    emit(r, static_cast<long>(m.upow));
  }
  for (std::size_t i = 0; i < m.ufactors.size(); ++i) {
    const auto [v, e] = m.ufactors[i];
    Monomial r = m;
    drop_ufactor(r, i);
    add_ufactor(r, shifted(v, axis), 1);
    emit(r, static_cast<long>(e));
  }
  for (std::size_t i = 0; i < m.thetas.size(); ++i) {
    const VarIndex nv = shifted(m.thetas[i], axis);
    Monomial r = m;
    r.thetas[i] = nv;
    // nv is larger than the old index, so it can only travel towards the front.
    long sign = 1;
    std::size_t j = i;
    bool zero = false;
    while (j > 0) {
      if (r.thetas[j - 1] == nv) {
        zero = true;
        break;
      }
      if (r.thetas[j - 1] < nv) {
        std::swap(r.thetas[j - 1], r.thetas[j]);
        sign = -sign;
        --j;
      } else {
        break;
      }
    }
    if (!zero) emit(r, sign);
  }
}

}  // namespace

Grade Monomial::grade() const {
  const BiGrade b = bigrade();
  return b.grade();
}

BiGrade Monomial::bigrade() const {
  BiGrade g;
  g.w = static_cast<int>(upow);
  for (const auto& [v, e] : ufactors) {
    g.dx += v.s * static_cast<int>(e);
    g.dy += v.t * static_cast<int>(e);
    g.w += static_cast<int>(e);
  }
  for (const auto& v : thetas) {
    g.dx += v.s;
    g.dy += v.t;
  }
  g.p = static_cast<int>(thetas.size());
  return g;
}

bool operator<(const Monomial& a, const Monomial& b) {
  if (a.thetas.size() != b.thetas.size()) return a.thetas.size() < b.thetas.size();
  if (a.thetas != b.thetas) {
    return std::lexicographical_compare(a.thetas.begin(), a.thetas.end(), b.thetas.begin(), b.thetas.end());
  }
  if (a.ufactors != b.ufactors) {
    return std::lexicographical_compare(a.ufactors.begin(), a.ufactors.end(), b.ufactors.begin(),
                                        b.ufactors.end());
  }
  return a.upow < b.upow;
}

std::optional<std::pair<Monomial, int>> theta_monomial(std::initializer_list<VarIndex> thetas) {
  Monomial m;
  m.thetas.assign(thetas.begin(), thetas.end());
  auto sign = canonicalize_thetas(m.thetas);
  if (!sign) return std::nullopt;
  return std::pair{std::move(m), *sign};
}

std::optional<std::pair<Monomial, int>> multiply(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.upow = a.upow + b.upow;
  r.ufactors = a.ufactors;
  for (const auto& [v, e] : b.ufactors) add_ufactor(r, v, e);

  // Merge two descending sequences; every b-element overtaking a remaining
  // a-element is one transposition of odd variables.
  std::size_t inversions = 0;
  std::size_t i = 0, j = 0;
  r.thetas.reserve(a.thetas.size() + b.thetas.size());
  while (i < a.thetas.size() || j < b.thetas.size()) {
    if (j == b.thetas.size()) {
      r.thetas.push_back(a.thetas[i++]);
    } else if (i == a.thetas.size()) {
      r.thetas.push_back(b.thetas[j++]);
    } else if (a.thetas[i] == b.thetas[j]) {
      return std::nullopt;
    } else if (a.thetas[i] > b.thetas[j]) {
      r.thetas.push_back(a.thetas[i++]);
    } else {
      inversions += a.thetas.size() - i;
      r.thetas.push_back(b.thetas[j++]);
    }
  }
  return std::pair{std::move(r), inversions % 2 == 0 ? 1 : -1};
}

DiffPoly DiffPoly::constant(const Rational& c) {
  DiffPoly p;
  p.add_term(Monomial{}, c);
  return p;
}

DiffPoly DiffPoly::u(unsigned power) {
  Monomial m;
  m.upow = power;
  return from_monomial(std::move(m));
}

DiffPoly DiffPoly::u(VarIndex v, unsigned exponent) {
  Monomial m;
  add_ufactor(m, v, exponent);
  return from_monomial(std::move(m));
}

DiffPoly DiffPoly::theta(VarIndex v) {
  Monomial m;
  m.thetas.push_back(v);
  return from_monomial(std::move(m));
}

DiffPoly DiffPoly::from_monomial(Monomial m, const Rational& c) {
  DiffPoly p;
  p.add_term(m, c);
  return p;
}

void DiffPoly::add_term(const Monomial& m, const Rational& c) { accumulate(terms_, m, c); }

Rational DiffPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational DiffPoly::constant_term() const { return coefficient(Monomial{}); }

DiffPoly& DiffPoly::operator+=(const DiffPoly& other) {
  for (const auto& [m, c] : other.terms_) accumulate(terms_, m, c);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& other) {
  for (const auto& [m, c] : other.terms_) accumulate(terms_, m, -c);
  return *this;
}

DiffPoly& DiffPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

DiffPoly mul(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly r;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      auto prod = multiply(ma, mb);
      if (!prod) continue;
      Rational c = ca * cb;
      if (prod->second < 0) c = -c;
      r.add_term(prod->first, c);
    }
  }
  return r;
}

DiffPoly total_derivative(const DiffPoly& a, Axis axis) {
  DiffPoly r;
  for (const auto& [m, c] : a.terms()) {
    derive_monomial(m, axis, [&](const Monomial& dm, long mult) { r.add_term(dm, c * mult); });
  }
  return r;
}

DiffPoly total_derivative(const DiffPoly& a, VarIndex times) {
  DiffPoly r = a;
  for (int i = 0; i < times.s; ++i) r = dx(r);
  for (int i = 0; i < times.t; ++i) r = dy(r);
  return r;
}

DiffPoly partial_u(const DiffPoly& a, VarIndex v) {
  DiffPoly r;
  for (const auto& [m, c] : a.terms()) {
    if (v == VarIndex{0, 0}) {
      if (m.upow == 0) continue;
      Monomial dm = m;
      dm.upow -= 1;
      r.add_term(dm, c * static_cast<long>(m.upow));
      continue;
    }
    for (std::size_t i = 0; i < m.ufactors.size(); ++i) {
      if (m.ufactors[i].first != v) continue;
      Monomial dm = m;
      drop_ufactor(dm, i);
      r.add_term(dm, c * static_cast<long>(m.ufactors[i].second));
      break;
    }
  }
  return r;
}

DiffPoly partial_theta(const DiffPoly& a, VarIndex v) {
  DiffPoly r;
  for (const auto& [m, c] : a.terms()) {
    for (std::size_t i = 0; i < m.thetas.size(); ++i) {
      if (m.thetas[i] != v) continue;
      Monomial dm = m;
      dm.thetas.erase(dm.thetas.begin() + static_cast<long>(i));
      r.add_term(dm, i % 2 == 0 ? c : Rational(-c));
      break;
    }
  }
  return r;
}

DiffPoly partial_derivative(const DiffPoly& a, Variable v) {
  return v.kind == VarKind::u ? partial_u(a, v.index) : partial_theta(a, v.index);
}

std::map<VarIndex, DiffPoly> all_partials_u(const DiffPoly& a) {
  std::map<VarIndex, DiffPoly> out;
  for (const auto& [m, c] : a.terms()) {
    if (m.upow > 0) {
      Monomial dm = m;
      dm.upow -= 1;
      out[VarIndex{0, 0}].add_term(dm, c * static_cast<long>(m.upow));
    }
    for (std::size_t i = 0; i < m.ufactors.size(); ++i) {
      Monomial dm = m;
      drop_ufactor(dm, i);
      out[m.ufactors[i].first].add_term(dm, c * static_cast<long>(m.ufactors[i].second));
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

std::map<VarIndex, DiffPoly> all_partials_theta(const DiffPoly& a) {
  std::map<VarIndex, DiffPoly> out;
  for (const auto& [m, c] : a.terms()) {
    for (std::size_t i = 0; i < m.thetas.size(); ++i) {
      Monomial dm = m;
      dm.thetas.erase(dm.thetas.begin() + static_cast<long>(i));
      out[m.thetas[i]].add_term(dm, i % 2 == 0 ? c : Rational(-c));
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

std::optional<Grade> grade_of(const DiffPoly& a) {
  std::optional<Grade> g;
  for (const auto& [m, c] : a.terms()) {
    const Grade mg = m.grade();
    if (!g) {
      g = mg;
    } else if (*g != mg) {
      return std::nullopt;
    }
  }
  return g;
}

std::optional<int> super_degree_of(const DiffPoly& a) {
  std::optional<int> p;
  for (const auto& [m, c] : a.terms()) {
    const int mp = static_cast<int>(m.thetas.size());
    if (!p) {
      p = mp;
    } else if (*p != mp) {
      return std::nullopt;
    }
  }
  return p;
}

DiffPoly homogeneous_component(const DiffPoly& a, Grade g) {
  DiffPoly r;
  for (const auto& [m, c] : a.terms()) {
    if (m.grade() == g) r.add_term(m, c);
  }
  return r;
}

std::map<BiGrade, DiffPoly> split_by_bigrade(const DiffPoly& a) {
  std::map<BiGrade, DiffPoly> out;
  for (const auto& [m, c] : a.terms()) out[m.bigrade()].add_term(m, c);
  return out;
}

std::map<int, DiffPoly> split_by_super_degree(const DiffPoly& a) {
  std::map<int, DiffPoly> out;
  for (const auto& [m, c] : a.terms()) out[static_cast<int>(m.thetas.size())].add_term(m, c);
  return out;
}

std::map<int, DiffPoly> split_by_weight(const DiffPoly& a) {
  std::map<int, DiffPoly> out;
  for (const auto& [m, c] : a.terms()) out[m.bigrade().w].add_term(m, c);
  return out;
}

std::vector<Monomial> enumerate_basis(BiGrade g) {
  std::vector<Monomial> out;
  if (g.dx < 0 || g.dy < 0 || g.p < 0 || g.w < 0) return out;

  std::vector<VarIndex> indices;
  for (int s = 0; s <= g.dx; ++s) {
    for (int t = 0; t <= g.dy; ++t) indices.push_back({s, t});
  }
  // Descending, so chosen thetas come out already in canonical order.
  std::sort(indices.begin(), indices.end(), std::greater<>());

  Monomial current;
  // u-factors: multiset over non-(0,0) indices with x/y budget and count <= w.
  std::function<void(std::size_t, int, int, int)> choose_u = [&](std::size_t pos, int rx, int ry, int left) {
    if (rx == 0 && ry == 0) {
      Monomial m = current;
      m.upow = static_cast<unsigned>(left);
      std::sort(m.ufactors.begin(), m.ufactors.end());
      out.push_back(std::move(m));
      return;
    }
    if (pos == indices.size() || left == 0) return;
    const VarIndex v = indices[pos];
    if (v == VarIndex{0, 0}) return;
    choose_u(pos + 1, rx, ry, left);
    for (int e = 1; e <= left && e * v.s <= rx && e * v.t <= ry; ++e) {
      current.ufactors.push_back({v, static_cast<unsigned>(e)});
      choose_u(pos + 1, rx - e * v.s, ry - e * v.t, left - e);
      current.ufactors.pop_back();
    }
  };
  std::function<void(std::size_t, int, int, int)> choose_theta = [&](std::size_t pos, int rx, int ry, int left) {
    if (left == 0) {
      choose_u(0, rx, ry, g.w);
      return;
    }
    for (std::size_t i = pos; i < indices.size(); ++i) {
      const VarIndex v = indices[i];
      if (v.s > rx || v.t > ry) continue;
      current.thetas.push_back(v);
      choose_theta(i + 1, rx - v.s, ry - v.t, left - 1);
      current.thetas.pop_back();
    }
  };
  choose_theta(0, g.dx, g.dy, g.p);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Monomial> enumerate_basis(Grade g) {
  std::vector<Monomial> out;
  for (int x = 0; x <= g.d; ++x) {
    auto part = enumerate_basis(BiGrade{x, g.d - x, g.p, g.w});
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void write_factors(std::ostream& os, const Monomial& m, bool& first) {
  auto sep = [&] {
    if (!first) os << '*';
    first = false;
  };
  if (m.upow > 0) {
    sep();
    os << 'u';
    if (m.upow > 1) os << '^' << m.upow;
  }
  for (const auto& [v, e] : m.ufactors) {
    sep();
    os << "u[" << v.s << ',' << v.t << ']';
    if (e > 1) os << '^' << e;
  }
  for (const auto& v : m.thetas) {
    sep();
    os << "th[" << v.s << ',' << v.t << ']';
  }
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const Monomial& m) {
  bool first = true;
  write_factors(os, m, first);
  if (first) os << '1';
  return os;
}

std::ostream& operator<<(std::ostream& os, const DiffPoly& a) {
  if (a.is_zero()) return os << '0';
  bool leading = true;
  for (const auto& [m, c] : a.terms()) {
    const bool negative = sgn(c) < 0;
    if (leading) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    leading = false;
    const Rational mag = abs(c);
    bool first = true;
    if (mag != 1 || m.is_constant()) {
      os << mag.get_str();
      first = false;
    }
    write_factors(os, m, first);
  }
  return os;
}

std::string to_string(const DiffPoly& a) {
  std::ostringstream os;
  os << a;
  return os.str();
}

}  // namespace thetaform
