#pragma once

// Exact sparse linear algebra over Q.  Elimination is fraction-free on
// primitive integer rows with a deterministic pivot rule, so solutions
// and kernels are reproducible across runs and platforms.

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "thetaform/algebra.hpp"

namespace thetaform::linalg {

enum class PivotOrder { leftmost, rightmost };

/// (index, value) pairs with strictly increasing indices and nonzero values.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

/// Assigns row indices to monomials on first sight.
class Coordinates {
 public:
  std::size_t index(const Monomial& m);
  SparseVector vectorize(const DiffPoly& p);
  std::size_t size() const { return index_.size(); }

 private:
  std::map<Monomial, std::size_t> index_;
};

/// Finds x with sum_j x_j * columns[j] = rhs.  Free variables are set to
/// zero.  Returns nullopt when the system is inconsistent.
std::optional<std::vector<Rational>> solve(const std::vector<SparseVector>& columns, const SparseVector& rhs,
                                           PivotOrder order = PivotOrder::leftmost);

std::size_t rank(const std::vector<SparseVector>& columns);

/// Basis of {x : sum_j x_j * columns[j] = 0}, one vector per free column.
std::vector<std::vector<Rational>> nullspace(const std::vector<SparseVector>& columns);

/// Convenience: express target as a combination of the given polynomials.
std::optional<std::vector<Rational>> solve_combination(const std::vector<DiffPoly>& spanning, const DiffPoly& target,
                                                       PivotOrder order = PivotOrder::leftmost);

}  // namespace thetaform::linalg
