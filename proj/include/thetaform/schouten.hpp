#pragma once

#include <map>
#include <optional>

#include "thetaform/variational.hpp"

namespace thetaform {

/// Schouten-Nijenhuis bracket of a p-vector and a q-vector:
///   [P, Q] = \int ( dP/dtheta * dQ/du + (-1)^p dP/du * dQ/dtheta ),
/// with variational derivatives.  Both arguments must be homogeneous in
/// super degree; the result is returned in reduced form.
Functional schouten(const Functional& p, const Functional& q);

/// p_{s,t} = 1/2 \int theta theta^(s,t).
Functional p_theta(int s, int t);
/// The standard leading term p_1 = 1/2 \int theta theta^(0,1).
inline Functional p_leading() { return p_theta(0, 1); }
/// p_k = 1/2 \int theta theta^(k,0); nonzero only for odd k.
inline Functional p_x(int k) { return p_theta(k, 0); }

/// Local vector field \int g theta of homogeneous standard degree >= 1.
class VectorField {
 public:
  /// Validates super degree 1 and homogeneous degree (zero fields carry `degree`).
  VectorField(Functional f, int degree);
  /// \int g theta for a characteristic g without thetas.
  static VectorField from_characteristic(const DiffPoly& g);

  const Functional& functional() const { return f_; }
  int degree() const { return degree_; }
  /// dX/dtheta, the unique theta-free representative of the class.
  DiffPoly characteristic() const { return var_theta(f_); }
  bool is_zero() const { return f_.is_zero(); }

  friend VectorField operator-(const VectorField& x) { return VectorField(-x.f_, x.degree_); }
  friend VectorField operator*(const Rational& c, const VectorField& x) { return VectorField(c * x.f_, x.degree_); }

 private:
  Functional f_;
  int degree_;
};

inline Functional ad(const VectorField& x, const Functional& q) { return schouten(x.functional(), q); }

/// Bivector series P = sum_d P_d, kept up to standard degree order + 1.
class BracketSeries {
 public:
  explicit BracketSeries(int order);

  int order() const { return order_; }
  int max_degree() const { return order_ + 1; }

  /// Zero when absent.
  const Functional& component(int d) const;
  /// Stores P_d after checking it is a bivector of standard degree d.
  /// Components above max_degree() are discarded.
  void set_component(int d, Functional f);
  void add_to_component(int d, const Functional& f);
  const std::map<int, Functional>& components() const { return components_; }

  /// Same components, truncated or zero-extended to a new order.
  BracketSeries with_order(int order) const;

  /// Leading term equals p_1 in the quotient.
  bool is_standard() const;

  friend bool operator==(const BracketSeries& a, const BracketSeries& b);

 private:
  int order_;
  std::map<int, Functional> components_;
};

/// e^{ad_X} P truncated to the order of P.
BracketSeries miura_apply(const VectorField& x, const BracketSeries& p);

/// Degree-n part of [P, P].
Functional schouten_square(const BracketSeries& p, int n);

struct JacobiReport {
  bool ok = true;
  std::optional<int> violation_degree;
};

/// Tests [P, P] = 0 degree by degree through order + 2.
JacobiReport jacobi_check(const BracketSeries& p);

}  // namespace thetaform
