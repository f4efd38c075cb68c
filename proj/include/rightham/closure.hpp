#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "rightham/errors.hpp"
#include "rightham/phase_poly.hpp"

namespace rightham {

enum class BracketKind { Poisson, Moyal };

std::string to_string(BracketKind kind);
/// "poisson" or "moyal"; throws InvalidInput otherwise.
BracketKind parse_bracket_kind(std::string_view text);

PhasePoly bracket(BracketKind kind, const PhasePoly& a, const PhasePoly& b);

struct AlgebraElement {
  std::string name;
  PhasePoly poly;
  bool identity = false;
};

struct SpanReduction {
  std::vector<Rational> coordinates;  // one per basis element
  PhasePoly remainder;
};

/// P = sum_i coordinates[i] * basis[i] + remainder, where the remainder has
/// no component along the span (exact elimination on monomial coefficients).
/// The remainder is zero iff P lies in the span.
SpanReduction span_reduce(const PhasePoly& poly, std::span<const AlgebraElement> basis);

struct StructureConstant {
  std::size_t i, j, k;
  Rational value;
};

/// A closed basis with structure constants c[i][j][k]:
/// bracket(basis_i, basis_j) = sum_k c[i][j][k] basis_k.
class LieClosure {
 public:
  LieClosure(std::vector<AlgebraElement> basis, BracketKind kind, std::vector<std::string> seed_names);

  const std::vector<AlgebraElement>& basis() const noexcept { return basis_; }
  BracketKind bracket_kind() const noexcept { return kind_; }
  const std::vector<std::string>& seed_names() const noexcept { return seed_names_; }
  const ContextPtr& context() const { return basis_.front().poly.context(); }

  std::optional<std::size_t> identity_index() const;
  std::optional<std::size_t> index_of(std::string_view name) const;
  /// c[i][j][k]; zero when absent.
  Rational constant(std::size_t i, std::size_t j, std::size_t k) const;

 private:
  std::vector<AlgebraElement> basis_;
  BracketKind kind_;
  std::vector<std::string> seed_names_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Rational> structure_;
};

struct ClosureLimits {
  std::size_t max_basis = 32;
  unsigned max_degree = 16;
};

class NonClosing : public Error {
 public:
  NonClosing(const std::string& message, std::string left, std::string right,
             std::vector<AlgebraElement> partial)
      : Error(message), left_(std::move(left)), right_(std::move(right)), partial_(std::move(partial)) {}

  const std::string& left() const noexcept { return left_; }
  const std::string& right() const noexcept { return right_; }
  /// Basis accumulated before the cap was hit.
  const std::vector<AlgebraElement>& partial_basis() const noexcept { return partial_; }

 private:
  std::string left_, right_;
  std::vector<AlgebraElement> partial_;
};

class EmptySeed : public Error {
 public:
  using Error::Error;
};

/// Dirac closure: brackets every unordered pair of basis elements (FIFO over
/// pair creation), reduces against the current span and appends nonzero
/// remainders scaled to a unit graded-lex leading coefficient. New elements
/// are named g1, g2, ...; a constant remainder enters as the identity "I".
/// Seeds linearly dependent on earlier seeds are skipped.
///
/// Throws EmptySeed for no seeds or a zero seed, NonClosing when the basis
/// would exceed limits.max_basis or a bracket exceeds limits.max_degree.
LieClosure close_algebra(const std::vector<AlgebraElement>& seeds, BracketKind kind,
                         ClosureLimits limits = {});

/// All nonzero c[i][j][k] with i < j, ordered by (i, j, k).
std::vector<StructureConstant> structure_constants(const LieClosure& closure);

/// Re-evaluates every pairwise bracket against the stored constants and
/// returns a description of each discrepancy (empty when consistent).
std::vector<std::string> verify_closure(const LieClosure& closure);

/// Jacobi identity as a contraction of the structure constants.
bool structure_satisfies_jacobi(const LieClosure& closure);

/// How a computed bracket relates to a value printed elsewhere (e.g. in a
/// reference derivation that uses another sign convention).
enum class PrintedRelation { Match, SignFlipped, ConstantShift, SignFlippedAndConstantShift, Mismatch };

std::string to_string(PrintedRelation relation);
PrintedRelation compare_with_printed(const PhasePoly& computed, const PhasePoly& printed);

}  // namespace rightham
