#pragma once

// Poisson cohomology of the standard leading term: the differential, the
// ring of constant x-thetas, its quotient by d_x, the Bockstein splitting
// and the degree-by-degree decomposition of cocycles.

#include <initializer_list>
#include <optional>
#include <vector>

#include "thetaform/linalg.hpp"
#include "thetaform/schouten.hpp"

namespace thetaform {

/// Differential sum_{s,t} theta^(s,t+1) d/du^(s,t), an odd derivation.
DiffPoly delta(const DiffPoly& a);

/// Polynomial in the variables theta^(k,0) only (written theta^k).
class ThetaPoly {
 public:
  ThetaPoly() = default;
  /// Throws std::invalid_argument when u or a y-derivative appears.
  explicit ThetaPoly(DiffPoly poly);
  /// theta^{k1} theta^{k2} ... in the given order; zero on a repeated index.
  static ThetaPoly monomial(std::initializer_list<int> orders, const Rational& c = 1);

  const DiffPoly& poly() const { return poly_; }
  bool is_zero() const { return poly_.is_zero(); }

  ThetaPoly& operator+=(const ThetaPoly& o) {
    poly_ += o.poly_;
    return *this;
  }
  ThetaPoly& operator-=(const ThetaPoly& o) {
    poly_ -= o.poly_;
    return *this;
  }
  friend ThetaPoly operator+(ThetaPoly a, const ThetaPoly& b) { return a += b; }
  friend ThetaPoly operator-(ThetaPoly a, const ThetaPoly& b) { return a -= b; }
  friend ThetaPoly operator*(const Rational& c, ThetaPoly a) {
    a.poly_ *= c;
    return a;
  }
  friend ThetaPoly operator*(const ThetaPoly& a, const ThetaPoly& b) { return ThetaPoly(mul(a.poly_, b.poly_)); }
  friend bool operator==(const ThetaPoly&, const ThetaPoly&) = default;

 private:
  DiffPoly poly_;
};

inline ThetaPoly dx(const ThetaPoly& t) { return ThetaPoly(dx(t.poly())); }

/// All theta monomials of super degree p and degree d, descending.
std::vector<ThetaPoly> theta_basis(int p, int d);

/// B = sum_i u^(i,0) d/dtheta^(i,0).
DiffPoly bockstein_split(const ThetaPoly& t);

/// Representatives theta^{i+1} theta^i theta^{i3} ... of (Theta / d_x Theta)^p_d,
/// in descending lexicographic order.
std::vector<ThetaPoly> theta_quotient_basis(int p, int d);

/// dim Theta^p_d - rank(d_x : Theta^p_{d-1} -> Theta^p_d), by elimination.
std::size_t quotient_dimension_by_rank(int p, int d);

/// Canonical representative of the class of t modulo d_x Theta: a combination
/// of theta_quotient_basis monomials.
ThetaPoly reduce_mod_dx(const ThetaPoly& t);

struct H2Decomposition {
  std::optional<Rational> c;  // only for odd degree
  ThetaPoly chi;              // combination of theta_quotient_basis(3, d)
  VectorField x;              // degree d - 1
};

/// Writes a cocycle P of degree d as c p_d + B(chi) + [p_1, X].
/// Throws NotACocycle when [p_1, P] != 0 and InternalInconsistency when no
/// decomposition exists.
H2Decomposition decompose_h2(const Functional& p, int d,
                             linalg::PivotOrder order = linalg::PivotOrder::leftmost);

/// sq(Theta^2_k) meets d_x Theta^4_{2k-1} only in zero.
bool verify_square_lemma(int k);
/// No chi in Theta^3_d has var_theta(chi) = c theta^{d-i} theta^i, c != 0.
bool verify_varder_lemma(int d);
/// [B(chi), B(chi)] != 0 for every nonzero chi in the quotient at degree d.
/// Supports quotient dimension at most 2 (all d <= 9).
bool verify_nontrivial_lemma(int d);
/// No nonzero chi in the quotient at degree d has B(chi) = [p_1, X].
bool verify_bockstein_injective(int d);

}  // namespace thetaform
