#include "thetaform/random.hpp"

namespace thetaform {

Rational random_rational(Rng& rng, int max_num, int max_den) {
  std::uniform_int_distribution<int> num(-max_num, max_num - 1);
  std::uniform_int_distribution<int> den(1, max_den);
  int n = num(rng);
  if (n >= 0) ++n;
  Rational q(n, den(rng));
  q.canonicalize();
  return q;
}

DiffPoly random_homogeneous(Rng& rng, Grade g, int max_terms) {
  const auto basis = enumerate_basis(g);
  DiffPoly out;
  if (basis.empty()) return out;
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<int> count(1, max_terms);
  for (int i = count(rng); i > 0; --i) out.add_term(basis[pick(rng)], random_rational(rng));
  return out;
}

DiffPoly random_density(Rng& rng, int d, int p, int max_w, int max_terms) {
  std::uniform_int_distribution<int> weight(0, max_w);
  for (int attempt = 0; attempt < 16; ++attempt) {
    DiffPoly a = random_homogeneous(rng, Grade{d, p, weight(rng)}, max_terms);
    if (!a.is_zero()) return a;
  }
  return random_homogeneous(rng, Grade{d, p, max_w}, max_terms);
}

VectorField random_vector_field(Rng& rng, int degree, int max_w, int max_terms) {
  std::uniform_int_distribution<int> weight(1, max_w);
  for (;;) {
    DiffPoly g = random_homogeneous(rng, Grade{degree, 0, weight(rng)}, max_terms);
    if (g.is_zero()) continue;
    VectorField x = VectorField::from_characteristic(g);
    if (!x.is_zero()) return x;
  }
}

std::vector<Rational> random_constants(Rng& rng, std::size_t count) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_rational(rng));
  return out;
}

}  // namespace thetaform
