#pragma once

// Seeded generators for randomized checks.

#include <random>
#include <vector>

#include "thetaform/schouten.hpp"

namespace thetaform {

using Rng = std::mt19937_64;

/// p/q with |p| <= max_num, 1 <= q <= max_den, nonzero.
Rational random_rational(Rng& rng, int max_num = 5, int max_den = 3);

/// Up to `max_terms` random basis monomials of the given grade.
DiffPoly random_homogeneous(Rng& rng, Grade g, int max_terms = 3);

/// Random density of super degree p, degree d, weight <= max_w.
DiffPoly random_density(Rng& rng, int d, int p, int max_w, int max_terms = 3);

/// Nonzero \int g theta of the given degree with u-weight of g in 1..max_w.
VectorField random_vector_field(Rng& rng, int degree, int max_w = 3, int max_terms = 3);

std::vector<Rational> random_constants(Rng& rng, std::size_t count);

}  // namespace thetaform
