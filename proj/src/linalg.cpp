#include "thetaform/linalg.hpp"

#include <algorithm>

namespace thetaform::linalg {

namespace {

using IntRow = std::vector<std::pair<std::size_t, Integer>>;

void make_primitive(IntRow& row) {
  if (row.empty()) return;
  Integer g = 0;
  for (const auto& [j, v] : row) {
    g = gcd(g, v);
    if (g == 1) break;
  }
  if (sgn(row.front().second) < 0) g = -g;
  if (g != 1) {
    for (auto& [j, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
}

IntRow to_integer_row(const std::vector<std::pair<std::size_t, Rational>>& entries) {
  Integer l = 1;
  for (const auto& [j, q] : entries) l = lcm(l, Integer(q.get_den()));
  IntRow row;
  row.reserve(entries.size());
  for (const auto& [j, q] : entries) {
    Integer v = l / q.get_den();
    v *= q.get_num();
    row.emplace_back(j, std::move(v));
  }
  make_primitive(row);
  return row;
}

// row <- a*row - b*pivot, with a, b chosen to cancel the leading entry.
void eliminate(IntRow& row, const IntRow& pivot) {
  const Integer& pr = pivot.front().second;
  const Integer& rr = row.front().second;
  const Integer g = gcd(pr, rr);
  const Integer a = pr / g;
  const Integer b = rr / g;

  IntRow out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 0, k = 0;
  while (i < row.size() || k < pivot.size()) {
    if (k == pivot.size() || (i < row.size() && row[i].first < pivot[k].first)) {
      out.emplace_back(row[i].first, a * row[i].second);
      ++i;
    } else if (i == row.size() || pivot[k].first < row[i].first) {
      out.emplace_back(pivot[k].first, -b * pivot[k].second);
      ++k;
    } else {
      Integer v = a * row[i].second - b * pivot[k].second;
      if (sgn(v) != 0) out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++k;
    }
  }
  make_primitive(out);
  row = std::move(out);
}

// Row echelon form, pivots keyed by leading column.
class Echelon {
 public:
  void insert(IntRow row) {
    while (!row.empty()) {
      auto it = pivots_.find(row.front().first);
      if (it == pivots_.end()) {
        const std::size_t lead = row.front().first;
        pivots_.emplace(lead, std::move(row));
        return;
      }
      eliminate(row, it->second);
    }
  }

  const std::map<std::size_t, IntRow>& pivots() const { return pivots_; }

  // Back substitution with the given values for free columns; `augmented`
  // is the column holding the right-hand side (if any).
  std::vector<Rational> back_substitute(std::size_t ncols, std::vector<Rational> x,
                                        std::optional<std::size_t> augmented) const {
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      const auto& [lead, row] = *it;
      if (augmented && lead == *augmented) continue;
      Rational acc = 0;
      for (std::size_t k = 1; k < row.size(); ++k) {
        const auto& [j, v] = row[k];
        if (augmented && j == *augmented) {
          acc += Rational(v);
        } else if (j < ncols) {
          acc -= Rational(v) * x[j];
        }
      }
      x[lead] = acc / Rational(row.front().second);
    }
    return x;
  }

 private:
  std::map<std::size_t, IntRow> pivots_;
};

// Transposes column vectors into equation rows; column indices are remapped
// through `perm` (perm[j] = new index of column j).
std::map<std::size_t, std::vector<std::pair<std::size_t, Rational>>> to_rows(const std::vector<SparseVector>& columns,
                                                                              const std::vector<std::size_t>& perm) {
  std::map<std::size_t, std::vector<std::pair<std::size_t, Rational>>> rows;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (const auto& [i, v] : columns[j]) rows[i].emplace_back(perm[j], v);
  }
  for (auto& [i, r] : rows) std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return rows;
}

std::vector<std::size_t> permutation(std::size_t n, PivotOrder order) {
  std::vector<std::size_t> perm(n);
  for (std::size_t j = 0; j < n; ++j) perm[j] = order == PivotOrder::leftmost ? j : n - 1 - j;
  return perm;
}

}  // namespace

std::size_t Coordinates::index(const Monomial& m) {
  auto [it, inserted] = index_.try_emplace(m, index_.size());
  return it->second;
}

SparseVector Coordinates::vectorize(const DiffPoly& p) {
  SparseVector v;
  v.reserve(p.size());
  for (const auto& [m, c] : p.terms()) v.emplace_back(index(m), c);
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

std::optional<std::vector<Rational>> solve(const std::vector<SparseVector>& columns, const SparseVector& rhs,
                                           PivotOrder order) {
  const std::size_t n = columns.size();
  const auto perm = permutation(n, order);
  auto rows = to_rows(columns, perm);
  for (const auto& [i, v] : rhs) rows[i].emplace_back(n, v);

  Echelon ech;
  for (auto& [i, r] : rows) {
    if (!r.empty()) ech.insert(to_integer_row(r));
  }
  if (ech.pivots().count(n)) return std::nullopt;

  auto xp = ech.back_substitute(n, std::vector<Rational>(n, Rational(0)), n);
  std::vector<Rational> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = xp[perm[j]];
  return x;
}

std::size_t rank(const std::vector<SparseVector>& columns) {
  auto rows = to_rows(columns, permutation(columns.size(), PivotOrder::leftmost));
  Echelon ech;
  for (auto& [i, r] : rows) {
    if (!r.empty()) ech.insert(to_integer_row(r));
  }
  return ech.pivots().size();
}

std::vector<std::vector<Rational>> nullspace(const std::vector<SparseVector>& columns) {
  const std::size_t n = columns.size();
  auto rows = to_rows(columns, permutation(n, PivotOrder::leftmost));
  Echelon ech;
  for (auto& [i, r] : rows) {
    if (!r.empty()) ech.insert(to_integer_row(r));
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (ech.pivots().count(f)) continue;
    std::vector<Rational> x(n, Rational(0));
    x[f] = 1;
    basis.push_back(ech.back_substitute(n, std::move(x), std::nullopt));
  }
  return basis;
}

std::optional<std::vector<Rational>> solve_combination(const std::vector<DiffPoly>& spanning, const DiffPoly& target,
                                                       PivotOrder order) {
  Coordinates coords;
  std::vector<SparseVector> cols;
  cols.reserve(spanning.size());
  for (const auto& p : spanning) cols.push_back(coords.vectorize(p));
  return solve(cols, coords.vectorize(target), order);
}

}  // namespace thetaform::linalg
