#pragma once

// Local functionals: densities modulo total divergences d_x(.) + d_y(.).

#include <optional>

#include "thetaform/algebra.hpp"

namespace thetaform {

/// Euler operator in u: sum_{s,t} (-d_x)^s (-d_y)^t  df/du^(s,t).
DiffPoly var_u(const DiffPoly& density);
/// Euler operator in theta, built from left theta-derivatives.
DiffPoly var_theta(const DiffPoly& density);

/// True iff a lies in d_x(A) + d_y(A).  Decided by the kernel of the Euler
/// operators; constants are never divergences.
bool is_total_divergence(const DiffPoly& a);

struct DivergenceWitness {
  DiffPoly bx;
  DiffPoly by;
};

/// Finds bx, by with a = d_x bx + d_y by by an exact solve on each
/// homogeneous block.  Throws NotADivergence when no such pair exists.
DivergenceWitness divergence_decompose(const DiffPoly& a, std::optional<Grade> hint = std::nullopt);

/// Canonical representative of the class of a density:
///   super degree p >= 1:  (1/p) theta * var_theta(f)
///   super degree 0, weight w >= 1:  (1/w) u * var_u(f)
/// Two densities are equal in the quotient iff their reductions coincide.
DiffPoly reduce_density(const DiffPoly& density);

class Functional {
 public:
  Functional() = default;
  explicit Functional(DiffPoly density) : density_(std::move(density)) {}

  const DiffPoly& density() const { return density_; }
  std::optional<Grade> grade() const { return grade_of(density_); }
  std::optional<int> super_degree() const { return super_degree_of(density_); }

  /// Same class, smaller representative (see reduce_density).
  Functional reduced() const { return Functional(reduce_density(density_)); }
  bool is_zero() const { return is_total_divergence(density_); }

  Functional& operator+=(const Functional& o) {
    density_ += o.density_;
    return *this;
  }
  Functional& operator-=(const Functional& o) {
    density_ -= o.density_;
    return *this;
  }
  Functional& operator*=(const Rational& c) {
    density_ *= c;
    return *this;
  }
  friend Functional operator+(Functional a, const Functional& b) { return a += b; }
  friend Functional operator-(Functional a, const Functional& b) { return a -= b; }
  friend Functional operator-(Functional a) { return a *= Rational(-1); }
  friend Functional operator*(const Rational& c, Functional a) { return a *= c; }

  /// Equality in the quotient, not of representatives.
  friend bool operator==(const Functional& a, const Functional& b) { return (a - b).is_zero(); }

 private:
  DiffPoly density_;
};

inline DiffPoly var_u(const Functional& f) { return var_u(f.density()); }
inline DiffPoly var_theta(const Functional& f) { return var_theta(f.density()); }

}  // namespace thetaform
