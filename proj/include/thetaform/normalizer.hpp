#pragma once

// Reduction of a Poisson bracket with standard leading term to its normal
// form p(c) = p_1 + sum_k c_k p_{2k+1} by successive Miura transformations.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thetaform/cohomology.hpp"

namespace thetaform {

struct DegreeRecord {
  int degree = 0;
  bool cocycle = true;
  std::optional<Rational> c;
  bool chi_zero = true;
  bool generator_zero = true;
};

struct NormalizationResult {
  int order = 0;
  std::vector<std::pair<int, Rational>> invariants;  // (k, c_k) for 2k+1 <= order+1
  /// Applied in sequence with miura_apply, starting from the input.
  std::vector<VectorField> generators;
  BracketSeries normalized{1};
  std::vector<DegreeRecord> diagnostics;

  std::vector<Rational> constants() const;
};

/// Runs the reduction to the order of P, or to `order` when given.
/// Throws NonstandardLeadingTerm, JacobiViolation, ObstructionNonzeroBockstein,
/// and InternalInconsistency if a post-condition fails.
NormalizationResult normalize(const BracketSeries& p, std::optional<int> order = std::nullopt);

/// (c_1, c_2) read from the top coefficients of P_3 and P_5.
std::pair<Rational, Rational> invariants_fast(const BracketSeries& p);

/// Coefficient of theta^(k1,k2) in the skew operator of P_d, as a function
/// of u; well defined when k1 + k2 = d.
DiffPoly top_coefficient(const BracketSeries& p, int d, int k1, int k2);

/// p_1 + sum_k c_k p_{2k+1}, truncated at `order`.
BracketSeries build_normal_form(const std::vector<Rational>& c, int order);

/// True iff some Miura transformation maps p(c) to p(other) through `order`,
/// which happens exactly when the constants agree in range.
bool verify_distinctness(const std::vector<Rational>& c, const std::vector<Rational>& other, int order);

}  // namespace thetaform
