#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rightham/rational.hpp"

namespace rightham {

/// Arithmetic budget shared by every polynomial of a context.
struct PolyLimits {
  unsigned max_degree = 16;
  std::size_t max_terms = 0;  // 0 = unlimited
};

/// Phase space with D canonical pairs. Variable index v < D is q_{v+1},
/// v >= D is p_{v-D+1}. Parameters are bound to exact rationals and are
/// substituted when expressions are parsed.
class PhaseContext {
 public:
  using Limits = PolyLimits;

  /// Default naming q1..qD / p1..pD, with x_i accepted as an alias of q_i.
  static std::shared_ptr<const PhaseContext> make(int dof, std::map<std::string, Rational> params = {},
                                                  Rational hbar = 1, Limits limits = {});
  /// Custom variable names (used for transformed coordinates).
  static std::shared_ptr<const PhaseContext> make_named(std::vector<std::string> positions,
                                                        std::vector<std::string> momenta,
                                                        std::map<std::string, Rational> params = {},
                                                        Rational hbar = 1, Limits limits = {});

  int dof() const noexcept { return dof_; }
  std::size_t variable_count() const noexcept { return names_.size(); }
  std::size_t q(int i) const noexcept { return static_cast<std::size_t>(i); }
  std::size_t p(int i) const noexcept { return static_cast<std::size_t>(dof_ + i); }
  bool is_momentum(std::size_t var) const noexcept { return var >= static_cast<std::size_t>(dof_); }
  /// Index of the canonical partner of var.
  std::size_t partner(std::size_t var) const noexcept {
    return is_momentum(var) ? var - dof_ : var + dof_;
  }

  const std::string& name(std::size_t var) const { return names_.at(var); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> lookup_variable(std::string_view name) const;

  const std::map<std::string, Rational>& params() const noexcept { return params_; }
  std::optional<Rational> param(std::string_view name) const;
  const Rational& hbar() const noexcept { return hbar_; }
  const Limits& limits() const noexcept { return limits_; }

  /// Structural equality: same variables and the same hbar.
  bool compatible(const PhaseContext& other) const;

 private:
  PhaseContext() = default;
  void validate() const;

  int dof_ = 0;
  bool default_naming_ = true;
  std::vector<std::string> names_;
  std::map<std::string, Rational> params_;
  Rational hbar_ = 1;
  Limits limits_;
};

using ContextPtr = std::shared_ptr<const PhaseContext>;

/// Exponent vector over (q1..qD, p1..pD) with its cached total degree.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t variables) : exps_(variables, 0) {}
  explicit Monomial(std::vector<std::uint16_t> exps);

  std::size_t size() const noexcept { return exps_.size(); }
  unsigned degree() const noexcept { return degree_; }
  std::uint16_t operator[](std::size_t var) const { return exps_[var]; }
  const std::vector<std::uint16_t>& exponents() const noexcept { return exps_; }

  void set(std::size_t var, std::uint16_t e);
  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::uint16_t> exps_;
  unsigned degree_ = 0;
};

/// Graded-lex, largest first: higher total degree, then lexicographically
/// larger exponent vector in variable order.
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Exact polynomial over a phase space. Terms are stored without zero
/// coefficients and iterate in graded-lex descending order.
class PhasePoly {
 public:
  using Terms = std::map<Monomial, Rational, GrlexDescending>;

  explicit PhasePoly(ContextPtr ctx);
  static PhasePoly constant(ContextPtr ctx, const Rational& value);
  static PhasePoly variable(ContextPtr ctx, std::size_t var);
  static PhasePoly monomial(ContextPtr ctx, Monomial m, const Rational& coeff = 1);
  /// Drops zero coefficients; enforces the context budget.
  static PhasePoly from_terms(ContextPtr ctx, Terms terms);

  const ContextPtr& context() const noexcept { return ctx_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Max total degree over terms; 0 for the zero polynomial.
  unsigned degree() const noexcept;
  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const;
  /// Largest term in graded-lex order. Precondition: nonzero.
  const Terms::value_type& leading() const { return *terms_.begin(); }
  /// True when no term involves a variable outside `vars`.
  bool uses_only(std::span<const std::size_t> vars) const;

  PhasePoly operator-() const;
  PhasePoly& operator+=(const PhasePoly& other);
  PhasePoly& operator-=(const PhasePoly& other);
  PhasePoly& operator*=(const Rational& factor);

  friend PhasePoly operator+(PhasePoly a, const PhasePoly& b) { return a += b; }
  friend PhasePoly operator-(PhasePoly a, const PhasePoly& b) { return a -= b; }
  friend PhasePoly operator*(const PhasePoly& a, const PhasePoly& b);
  friend PhasePoly operator*(PhasePoly a, const Rational& s) { return a *= s; }
  friend PhasePoly operator*(const Rational& s, PhasePoly a) { return a *= s; }

  /// Exact equality of term maps within compatible contexts.
  friend bool operator==(const PhasePoly& a, const PhasePoly& b);

 private:
  void check_budget() const;
  void add_scaled(const PhasePoly& other, const Rational& factor);

  ContextPtr ctx_;
  Terms terms_;
};

/// Throws ContextMismatch unless both polynomials live in compatible contexts.
void require_same_context(const PhasePoly& a, const PhasePoly& b);

PhasePoly pow(const PhasePoly& base, unsigned exponent);

/// Formal partial derivative with respect to variable index var.
PhasePoly partial_derivative(const PhasePoly& poly, std::size_t var);
/// Mixed partial derivative; orders[v] is the order in variable v.
PhasePoly derivative(const PhasePoly& poly, std::span<const unsigned> orders);

/// {A,B} = sum_i dA/dq_i dB/dp_i - dA/dp_i dB/dq_i.
PhasePoly poisson_bracket(const PhasePoly& a, const PhasePoly& b);

/// Weyl-symbol bracket: sum over odd k of (-1)^((k-1)/2) (hbar/2)^(k-1) / k!
/// times the k-th power of the Poisson bidifferential operator. The operator
/// commutator is i*hbar times this value. Uses the context hbar.
PhasePoly moyal_bracket(const PhasePoly& a, const PhasePoly& b);

/// Replaces variable v of `poly` by images[v]; the images share a target
/// context which becomes the result's context.
PhasePoly substitute(const PhasePoly& poly, std::span<const PhasePoly> images);

/// Canonical DSL text: graded-lex descending terms, explicit '*' and '^',
/// rational coefficients as p/q. The zero polynomial prints as "0".
std::string to_string(const PhasePoly& poly);

}  // namespace rightham
