#pragma once

// Super-commutative differential algebra of differential polynomials in one
// dependent variable u(x, y) and the odd variables theta^(s,t).
//
// A monomial is  u^upow * prod u^(s,t)^e * theta^(s1,t1) theta^(s2,t2) ...
// with the theta factors kept strictly descending in lexicographic (s,t)
// order; any reordering is absorbed into the coefficient as a Koszul sign.

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thetaform/rational.hpp"

namespace thetaform {

/// Derivative multi-index: s derivatives in x, t in y.
struct VarIndex {
  int s = 0;
  int t = 0;

  constexpr int order() const { return s + t; }
  friend constexpr auto operator<=>(const VarIndex&, const VarIndex&) = default;
};

enum class Axis { x, y };

/// Standard degree d, super degree p (number of thetas), u-weight w.
struct Grade {
  int d = 0;
  int p = 0;
  int w = 0;
  friend constexpr auto operator<=>(const Grade&, const Grade&) = default;
};

/// Refinement of Grade that splits d into its x and y parts.  Every operator
/// in the library is homogeneous for it, so linear systems decouple per block.
struct BiGrade {
  int dx = 0;
  int dy = 0;
  int p = 0;
  int w = 0;

  constexpr Grade grade() const { return {dx + dy, p, w}; }
  friend constexpr auto operator<=>(const BiGrade&, const BiGrade&) = default;
};

struct Monomial {
  using UFactor = std::pair<VarIndex, unsigned>;

  unsigned upow = 0;
  boost::container::small_vector<UFactor, 4> ufactors;  // ascending index, never (0,0)
  boost::container::small_vector<VarIndex, 4> thetas;   // strictly descending

  Grade grade() const;
  BiGrade bigrade() const;
  bool is_constant() const { return upow == 0 && ufactors.empty() && thetas.empty(); }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend bool operator<(const Monomial& a, const Monomial& b);
};

/// Builds the canonical monomial for a product of thetas given in any order.
/// Returns the Koszul sign of the reordering, or nullopt when an index repeats.
std::optional<std::pair<Monomial, int>> theta_monomial(std::initializer_list<VarIndex> thetas);

/// Product of two monomials with the sign picked up by merging theta factors.
std::optional<std::pair<Monomial, int>> multiply(const Monomial& a, const Monomial& b);

/// Element of the algebra: canonical sparse map monomial -> nonzero coefficient.
class DiffPoly {
 public:
  using Terms = std::map<Monomial, Rational>;

  DiffPoly() = default;

  static DiffPoly constant(const Rational& c);
  /// u^power of the undifferentiated field.
  static DiffPoly u(unsigned power = 1);
  /// u^(s,t) raised to exponent; (0,0) is the undifferentiated u.
  static DiffPoly u(VarIndex v, unsigned exponent = 1);
  static DiffPoly theta(VarIndex v);
  static DiffPoly from_monomial(Monomial m, const Rational& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const Rational& c);
  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const;

  DiffPoly& operator+=(const DiffPoly& other);
  DiffPoly& operator-=(const DiffPoly& other);
  DiffPoly& operator*=(const Rational& c);

  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator-(DiffPoly a) { return a *= Rational(-1); }
  friend DiffPoly operator*(DiffPoly a, const Rational& c) { return a *= c; }
  friend DiffPoly operator*(const Rational& c, DiffPoly a) { return a *= c; }
  friend bool operator==(const DiffPoly&, const DiffPoly&) = default;

 private:
  Terms terms_;
};

/// Super-commutative product.
DiffPoly mul(const DiffPoly& a, const DiffPoly& b);
inline DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) { return mul(a, b); }

/// Total derivative d/dx or d/dy (an even derivation).
DiffPoly total_derivative(const DiffPoly& a, Axis axis);
inline DiffPoly dx(const DiffPoly& a) { return total_derivative(a, Axis::x); }
inline DiffPoly dy(const DiffPoly& a) { return total_derivative(a, Axis::y); }
/// d_x^s d_y^t a.
DiffPoly total_derivative(const DiffPoly& a, VarIndex times);

enum class VarKind { u, theta };

struct Variable {
  VarKind kind = VarKind::u;
  VarIndex index;
};

/// Ordinary partial derivative in u^(s,t); (0,0) differentiates the coefficient.
DiffPoly partial_u(const DiffPoly& a, VarIndex v);
/// Left derivative in theta^(s,t): the factor is moved to the front, then removed.
DiffPoly partial_theta(const DiffPoly& a, VarIndex v);
DiffPoly partial_derivative(const DiffPoly& a, Variable v);

/// All partial derivatives at once, keyed by variable index.  Cheaper than
/// calling partial_u / partial_theta for every index separately.
std::map<VarIndex, DiffPoly> all_partials_u(const DiffPoly& a);
std::map<VarIndex, DiffPoly> all_partials_theta(const DiffPoly& a);

/// Common grade of all terms, or nullopt when inhomogeneous.  The zero
/// polynomial has no grade either.
std::optional<Grade> grade_of(const DiffPoly& a);
std::optional<int> super_degree_of(const DiffPoly& a);
DiffPoly homogeneous_component(const DiffPoly& a, Grade g);
std::map<BiGrade, DiffPoly> split_by_bigrade(const DiffPoly& a);
std::map<int, DiffPoly> split_by_super_degree(const DiffPoly& a);
std::map<int, DiffPoly> split_by_weight(const DiffPoly& a);

/// Monomial basis of the component at grade g (resp. bigrade), sorted.
std::vector<Monomial> enumerate_basis(Grade g);
std::vector<Monomial> enumerate_basis(BiGrade g);

std::ostream& operator<<(std::ostream& os, const Monomial& m);
/// Writes the polynomial in the bracket DSL syntax, e.g. "1/2*th[0,0]*th[0,1]".
std::ostream& operator<<(std::ostream& os, const DiffPoly& a);
std::string to_string(const DiffPoly& a);

}  // namespace thetaform
