#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "rightham/rational.hpp"

namespace rightham {

/// Incremental reduced row-echelon form over exact rationals with sparse rows.
///
/// Each accepted row is normalized to a unit pivot, and every pivot key
/// appears in exactly one row. The pivot of a new row is its first key under
/// Compare. Rows remember which accepted inputs they combine, so a reduction
/// can be expressed in terms of the original inputs.
template <typename Key, typename Compare = std::less<Key>>
class SparseEchelon {
 public:
  using Vector = std::map<Key, Rational, Compare>;
  using Combination = std::map<std::size_t, Rational>;

  struct Reduction {
    Vector remainder;
    Combination coordinates;  // input index -> coefficient
  };

  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t inputs() const noexcept { return accepted_; }

  /// v = sum_j coordinates[j] * input_j + remainder, with the remainder
  /// vanishing on every pivot key.
  Reduction reduce(Vector v) const {
    Reduction out;
    for (const auto& row : rows_) {
      auto it = v.find(row.pivot);
      if (it == v.end()) continue;
      const Rational factor = it->second;
      for (const auto& [k, c] : row.values) subtract(v, k, factor * c);
      for (const auto& [j, c] : row.combo) subtract(out.coordinates, j, -factor * c);
    }
    out.remainder = std::move(v);
    return out;
  }

  /// Adds v if it is independent of the accepted rows; returns its input index.
  std::optional<std::size_t> insert(Vector v) {
    auto red = reduce(std::move(v));
    if (red.remainder.empty()) return std::nullopt;
    const std::size_t index = accepted_++;
    Row row;
    row.pivot = red.remainder.begin()->first;
    const Rational scale = Rational(1) / red.remainder.begin()->second;
    for (auto& [k, c] : red.remainder) c *= scale;
    row.values = std::move(red.remainder);
    row.combo[index] = scale;
    for (const auto& [j, c] : red.coordinates) subtract(row.combo, j, c * scale);
    for (auto& other : rows_) {
      auto it = other.values.find(row.pivot);
      if (it == other.values.end()) continue;
      const Rational factor = it->second;
      for (const auto& [k, c] : row.values) subtract(other.values, k, factor * c);
      for (const auto& [j, c] : row.combo) subtract(other.combo, j, factor * c);
    }
    rows_.push_back(std::move(row));
    return index;
  }

  struct Row {
    Key pivot;
    Vector values;
    Combination combo;
  };
  const std::vector<Row>& rows() const noexcept { return rows_; }

 private:
  template <typename Map, typename K>
  static void subtract(Map& m, const K& key, const Rational& amount) {
    if (amount == 0) return;
    auto [it, inserted] = m.try_emplace(key, -amount);
    if (!inserted) {
      it->second -= amount;
      if (it->second == 0) m.erase(it);
    }
  }

  std::vector<Row> rows_;
  std::size_t accepted_ = 0;
};

/// Basis of {x : A x = 0} for the system whose rows were inserted into
/// `echelon`, over `columns` unknowns. One vector per free column, in
/// increasing free-column order; each has a 1 at its free column.
std::vector<std::vector<Rational>> nullspace(const SparseEchelon<std::size_t>& echelon,
                                             std::size_t columns);

/// Dense row-major rational matrix.
using RationalMatrix = std::vector<std::vector<Rational>>;

RationalMatrix identity_matrix(std::size_t n);
RationalMatrix transpose(const RationalMatrix& m);
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);
/// Exact Gauss-Jordan inverse; throws InvalidInput if singular or not square.
RationalMatrix inverse(const RationalMatrix& m);

}  // namespace rightham
