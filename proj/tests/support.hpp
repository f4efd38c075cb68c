#pragma once

// Shared test helpers: random polynomial generators and a small reference
// polynomial implementation used as an oracle for the engine's brackets.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <doctest.h>

#include "rightham/parser.hpp"
#include "rightham/phase_poly.hpp"

namespace testing_support {

using rightham::ContextPtr;
using rightham::Monomial;
using rightham::PhasePoly;
using rightham::Rational;

inline PhasePoly parse(const std::string& text, const ContextPtr& ctx) {
  return rightham::parse_expression(text, ctx);
}

class PolyGenerator {
 public:
  explicit PolyGenerator(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational rational(int span = 5) {
    int num = 0;
    while (num == 0) num = uniform(-span, span);
    Rational r(num, uniform(1, span));
    r.canonicalize();
    return r;
  }

  Rational positive_rational(int span = 9) {
    Rational r(uniform(1, span), uniform(1, span));
    r.canonicalize();
    return r;
  }

  Monomial monomial(std::size_t variables, unsigned max_degree) {
    Monomial m(variables);
    const unsigned degree = static_cast<unsigned>(uniform(0, static_cast<int>(max_degree)));
    for (unsigned k = 0; k < degree; ++k) {
      const auto v = static_cast<std::size_t>(uniform(0, static_cast<int>(variables) - 1));
      m.set(v, static_cast<std::uint16_t>(m[v] + 1));
    }
    return m;
  }

  PhasePoly poly(const ContextPtr& ctx, unsigned max_degree, int max_terms = 4) {
    PhasePoly::Terms terms;
    const int n = uniform(1, max_terms);
    for (int t = 0; t < n; ++t) terms[monomial(ctx->variable_count(), max_degree)] += rational();
    return PhasePoly::from_terms(ctx, std::move(terms));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Reference polynomials: exponent vector -> coefficient, with naive
// arithmetic written independently of the engine kernel.
using RefPoly = std::map<std::vector<int>, Rational>;

inline RefPoly to_ref(const PhasePoly& p) {
  RefPoly out;
  for (const auto& [m, c] : p.terms()) {
    std::vector<int> e(m.exponents().begin(), m.exponents().end());
    out[e] = c;
  }
  return out;
}

inline PhasePoly from_ref(const RefPoly& r, const ContextPtr& ctx) {
  PhasePoly::Terms terms;
  for (const auto& [e, c] : r) {
    if (c == 0) continue;
    std::vector<std::uint16_t> exps(e.begin(), e.end());
    terms[Monomial(exps)] += c;
  }
  return PhasePoly::from_terms(ctx, std::move(terms));
}

inline void ref_add(RefPoly& acc, const RefPoly& x, const Rational& s = 1) {
  for (const auto& [e, c] : x) {
    acc[e] += s * c;
    if (acc[e] == 0) acc.erase(e);
  }
}

inline RefPoly ref_mul(const RefPoly& a, const RefPoly& b) {
  RefPoly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
      if (out[e] == 0) out.erase(e);
    }
  }
  return out;
}

inline RefPoly ref_diff(const RefPoly& a, std::size_t var, int order = 1) {
  RefPoly out;
  for (const auto& [e, c] : a) {
    if (e[var] < order) continue;
    Rational f = c;
    for (int k = 0; k < order; ++k) f *= e[var] - k;
    auto e2 = e;
    e2[var] -= order;
    out[e2] += f;
  }
  return out;
}

inline RefPoly ref_poisson(const RefPoly& a, const RefPoly& b, std::size_t dof) {
  RefPoly out;
  for (std::size_t i = 0; i < dof; ++i) {
    ref_add(out, ref_mul(ref_diff(a, i), ref_diff(b, dof + i)));
    ref_add(out, ref_mul(ref_diff(a, dof + i), ref_diff(b, i)), -1);
  }
  return out;
}

inline Rational binomial(int n, int k) {
  Rational r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline Rational factorial(int n) {
  Rational r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// k-th power of the Poisson bidifferential operator for one degree of
// freedom, expanded termwise with the binomial theorem:
// sum_j C(k,j) (-1)^j d_q^{k-j} d_p^j A * d_p^{k-j} d_q^j B.
inline RefPoly ref_pi_power_1d(const RefPoly& a, const RefPoly& b, int k) {
  RefPoly out;
  for (int j = 0; j <= k; ++j) {
    RefPoly left = ref_diff(ref_diff(a, 0, k - j), 1, j);
    RefPoly right = ref_diff(ref_diff(b, 1, k - j), 0, j);
    ref_add(out, ref_mul(left, right), binomial(k, j) * (j % 2 ? -1 : 1));
  }
  return out;
}

// Moyal bracket for one degree of freedom from the termwise expansion.
inline RefPoly ref_moyal_1d(const RefPoly& a, const RefPoly& b, const Rational& hbar, int max_order) {
  RefPoly out;
  for (int k = 1; k <= max_order; k += 2) {
    const Rational sign = ((k - 1) / 2) % 2 ? -1 : 1;
    Rational h = 1;
    for (int i = 0; i < k - 1; ++i) h *= hbar / 2;
    ref_add(out, ref_pi_power_1d(a, b, k), sign * h / factorial(k));
  }
  return out;
}

}  // namespace testing_support

namespace doctest {
template <>
struct StringMaker<rightham::PhasePoly> {
  static String convert(const rightham::PhasePoly& p) { return rightham::to_string(p).c_str(); }
};
}  // namespace doctest

