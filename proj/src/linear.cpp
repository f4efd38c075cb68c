#include "rightham/linear.hpp"

#include <set>

#include "rightham/errors.hpp"

namespace rightham {

std::vector<std::vector<Rational>> nullspace(const SparseEchelon<std::size_t>& echelon,
                                             std::size_t columns) {
  std::set<std::size_t> pivots;
  for (const auto& row : echelon.rows()) pivots.insert(row.pivot);
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (pivots.contains(free)) continue;
    std::vector<Rational> x(columns, 0);
    x[free] = 1;
    for (const auto& row : echelon.rows()) {
      auto it = row.values.find(free);
      if (it != row.values.end()) x[row.pivot] = -it->second;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

RationalMatrix identity_matrix(std::size_t n) {
  RationalMatrix m(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RationalMatrix transpose(const RationalMatrix& m) {
  if (m.empty()) return {};
  RationalMatrix t(m.front().size(), std::vector<Rational>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  }
  return t;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.empty()) return {};
  if (a.front().size() != b.size()) throw InvalidInput("matrix dimensions do not agree");
  const std::size_t cols = b.empty() ? 0 : b.front().size();
  RationalMatrix out(a.size(), std::vector<Rational>(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

RationalMatrix inverse(const RationalMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw InvalidInput("inverse of a non-square matrix");
  }
  RationalMatrix a = m;
  RationalMatrix inv = identity_matrix(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw InvalidInput("matrix is singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational scale = Rational(1) / a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] *= scale;
      inv[col][j] *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational factor = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= factor * a[col][j];
        inv[r][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace rightham
