#include "rightham/invariants.hpp"

#include <algorithm>

#include "rightham/linear.hpp"

namespace rightham {

namespace {

using ColumnEchelon = SparseEchelon<std::size_t>;

/// Rows of the homogeneous system "bracket(sum x_t T_t, g_k) == 0": one row
/// per (k, monomial) pair, one column per ansatz term.
ColumnEchelon commutation_system(const std::vector<PhasePoly>& ansatz, const LieClosure& closure) {
  std::map<std::pair<std::size_t, Monomial>, ColumnEchelon::Vector,
           decltype([](const auto& a, const auto& b) {
             if (a.first != b.first) return a.first < b.first;
             return GrlexDescending{}(a.second, b.second);
           })>
      rows;
  const auto& basis = closure.basis();
  for (std::size_t t = 0; t < ansatz.size(); ++t) {
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (basis[k].identity) continue;
      auto value = bracket(closure.bracket_kind(), ansatz[t], basis[k].poly);
      for (const auto& [m, c] : value.terms()) rows[{k, m}][t] = c;
    }
  }
  ColumnEchelon echelon;
  for (auto& [key, row] : rows) echelon.insert(std::move(row));
  return echelon;
}

ColumnEchelon::Vector sparse(const std::vector<Rational>& x) {
  ColumnEchelon::Vector v;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0) v.emplace(i, x[i]);
  }
  return v;
}

PhasePoly realize(const ContextPtr& ctx, const std::vector<PhasePoly>& ansatz, const ColumnEchelon::Vector& x) {
  PhasePoly out(ctx);
  for (const auto& [t, c] : x) out += c * ansatz[t];
  return out;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void enumerate_monomials(Monomial& current, std::size_t var, unsigned remaining, std::vector<Monomial>& out) {
  if (var == current.size()) {
    out.push_back(current);
    return;
  }
  for (unsigned e = 0; e <= remaining; ++e) {
    current.set(var, static_cast<std::uint16_t>(e));
    enumerate_monomials(current, var + 1, remaining - e, out);
  }
  current.set(var, 0);
}

}  // namespace

std::vector<CasimirSolution> find_casimir(const LieClosure& closure) {
  const auto& basis = closure.basis();
  const ContextPtr& ctx = closure.context();
  std::vector<std::size_t> gens;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!basis[i].identity) gens.push_back(i);
  }

  struct Term {
    enum { Quadratic, Linear, Constant } kind;
    std::size_t i, j;
  };
  std::vector<Term> terms;
  std::vector<PhasePoly> ansatz;
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = a; b < gens.size(); ++b) {
      terms.push_back({Term::Quadratic, gens[a], gens[b]});
      ansatz.push_back(basis[gens[a]].poly * basis[gens[b]].poly);
    }
  }
  for (auto g : gens) {
    terms.push_back({Term::Linear, g, g});
    ansatz.push_back(basis[g].poly);
  }
  terms.push_back({Term::Constant, 0, 0});
  ansatz.push_back(PhasePoly::constant(ctx, 1));

  const auto solutions = nullspace(commutation_system(ansatz, closure), ansatz.size());

  // Coefficient vectors whose realization is the zero polynomial.
  ColumnEchelon realization_rows;
  {
    std::map<Monomial, ColumnEchelon::Vector, GrlexDescending> by_monomial;
    for (std::size_t t = 0; t < ansatz.size(); ++t) {
      for (const auto& [m, c] : ansatz[t].terms()) by_monomial[m][t] = c;
    }
    for (auto& [m, row] : by_monomial) realization_rows.insert(std::move(row));
  }
  ColumnEchelon relations;
  for (const auto& k : nullspace(realization_rows, ansatz.size())) relations.insert(sparse(k));

  ColumnEchelon accepted = relations;
  std::vector<CasimirSolution> nontrivial, trivial;
  for (const auto& s : solutions) {
    auto x = relations.reduce(sparse(s)).remainder;
    if (x.empty() || !accepted.insert(x)) continue;
    const Rational scale = Rational(1) / x.begin()->second;
    for (auto& [t, c] : x) c *= scale;

    CasimirSolution sol{{}, {}, 0, realize(ctx, ansatz, x), false};
    for (const auto& [t, c] : x) {
      switch (terms[t].kind) {
        case Term::Quadratic: sol.quadratic.push_back({terms[t].i, terms[t].j, c}); break;
        case Term::Linear: sol.linear.push_back({terms[t].i, c}); break;
        case Term::Constant: sol.constant = c; break;
      }
    }
    sol.trivial = sol.realization.is_constant();
    (sol.trivial ? trivial : nontrivial).push_back(std::move(sol));
  }
  nontrivial.insert(nontrivial.end(), std::make_move_iterator(trivial.begin()),
                    std::make_move_iterator(trivial.end()));
  return nontrivial;
}

CenterSolution find_center(const LieClosure& closure, CenterOptions options) {
  const ContextPtr& ctx = closure.context();
  const std::size_t vars = ctx->variable_count();
  const std::size_t size = binomial(vars + options.max_total_degree, options.max_total_degree);
  if (size > options.max_ansatz) {
    throw AnsatzTooLarge("centre ansatz of " + std::to_string(size) + " monomials exceeds the cap of " +
                         std::to_string(options.max_ansatz));
  }
  std::vector<Monomial> monomials;
  Monomial scratch(vars);
  enumerate_monomials(scratch, 0, options.max_total_degree, monomials);
  std::sort(monomials.begin(), monomials.end(), [](const Monomial& a, const Monomial& b) {
    return GrlexDescending{}(b, a);
  });
  std::vector<PhasePoly> ansatz;
  ansatz.reserve(monomials.size());
  for (auto& m : monomials) ansatz.push_back(PhasePoly::monomial(ctx, m));

  SparseEchelon<Monomial, GrlexDescending> canonical;
  for (const auto& s : nullspace(commutation_system(ansatz, closure), ansatz.size())) {
    auto p = realize(ctx, ansatz, sparse(s));
    canonical.insert({p.terms().begin(), p.terms().end()});
  }
  CenterSolution out;
  out.ansatz_degree = options.max_total_degree;
  for (const auto& row : canonical.rows()) {
    out.basis.push_back(PhasePoly::from_terms(ctx, {row.values.begin(), row.values.end()}));
  }
  std::sort(out.basis.begin(), out.basis.end(), [](const PhasePoly& a, const PhasePoly& b) {
    return GrlexDescending{}(b.leading().first, a.leading().first);
  });
  return out;
}

InvariantCheck verify_invariant(const PhasePoly& poly, const LieClosure& closure) {
  InvariantCheck check;
  check.passed = true;
  for (const auto& g : closure.basis()) {
    require_same_context(poly, g.poly);
    auto value = bracket(closure.bracket_kind(), poly, g.poly);
    if (!value.is_zero()) check.passed = false;
    check.residuals.push_back({g.name, std::move(value)});
  }
  return check;
}

}  // namespace rightham
