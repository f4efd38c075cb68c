#include "rightham/closure.hpp"

#include <deque>
#include <set>

#include "rightham/linear.hpp"

namespace rightham {

namespace {

using MonomialEchelon = SparseEchelon<Monomial, GrlexDescending>;

MonomialEchelon::Vector as_vector(const PhasePoly& p) {
  return MonomialEchelon::Vector(p.terms().begin(), p.terms().end());
}

PhasePoly as_poly(const ContextPtr& ctx, const MonomialEchelon::Vector& v) {
  return PhasePoly::from_terms(ctx, PhasePoly::Terms(v.begin(), v.end()));
}

}  // namespace

std::string to_string(BracketKind kind) { return kind == BracketKind::Poisson ? "poisson" : "moyal"; }

BracketKind parse_bracket_kind(std::string_view text) {
  if (text == "poisson") return BracketKind::Poisson;
  if (text == "moyal") return BracketKind::Moyal;
  throw InvalidInput("unknown bracket kind '" + std::string(text) + "' (expected poisson or moyal)");
}

PhasePoly bracket(BracketKind kind, const PhasePoly& a, const PhasePoly& b) {
  return kind == BracketKind::Poisson ? poisson_bracket(a, b) : moyal_bracket(a, b);
}

SpanReduction span_reduce(const PhasePoly& poly, std::span<const AlgebraElement> basis) {
  MonomialEchelon echelon;
  std::vector<std::size_t> position;  // accepted input index -> basis index
  for (std::size_t i = 0; i < basis.size(); ++i) {
    require_same_context(poly, basis[i].poly);
    if (echelon.insert(as_vector(basis[i].poly))) position.push_back(i);
  }
  auto red = echelon.reduce(as_vector(poly));
  SpanReduction out{std::vector<Rational>(basis.size(), 0), as_poly(poly.context(), red.remainder)};
  for (const auto& [j, c] : red.coordinates) out.coordinates[position[j]] = c;
  return out;
}

// ------------------------------------------------------------ LieClosure

LieClosure::LieClosure(std::vector<AlgebraElement> basis, BracketKind kind,
                       std::vector<std::string> seed_names)
    : basis_(std::move(basis)), kind_(kind), seed_names_(std::move(seed_names)) {
  MonomialEchelon echelon;
  for (const auto& e : basis_) {
    if (!echelon.insert(as_vector(e.poly))) {
      throw InvalidInput("basis element '" + e.name + "' is linearly dependent");
    }
  }
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    for (std::size_t j = i + 1; j < basis_.size(); ++j) {
      auto red = echelon.reduce(as_vector(bracket(kind_, basis_[i].poly, basis_[j].poly)));
      if (!red.remainder.empty()) {
        throw InvalidInput("bracket of '" + basis_[i].name + "' and '" + basis_[j].name +
                           "' leaves the span");
      }
      for (const auto& [k, c] : red.coordinates) {
        structure_[{i, j, k}] = c;
        structure_[{j, i, k}] = -c;
      }
    }
  }
}

std::optional<std::size_t> LieClosure::identity_index() const {
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (basis_[i].identity) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> LieClosure::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (basis_[i].name == name) return i;
  }
  return std::nullopt;
}

Rational LieClosure::constant(std::size_t i, std::size_t j, std::size_t k) const {
  auto it = structure_.find({i, j, k});
  return it == structure_.end() ? Rational(0) : it->second;
}

// --------------------------------------------------------------- closure

LieClosure close_algebra(const std::vector<AlgebraElement>& seeds, BracketKind kind, ClosureLimits limits) {
  if (seeds.empty()) throw EmptySeed("closure needs at least one seed");
  std::set<std::string> names;
  for (const auto& s : seeds) {
    if (s.poly.is_zero()) throw EmptySeed("seed '" + s.name + "' is the zero polynomial");
    if (!names.insert(s.name).second) throw InvalidInput("duplicate seed name '" + s.name + "'");
    require_same_context(seeds.front().poly, s.poly);
  }
  const ContextPtr ctx = seeds.front().poly.context();

  std::vector<AlgebraElement> basis;
  std::vector<std::string> seed_names;
  MonomialEchelon echelon;
  std::deque<std::pair<std::size_t, std::size_t>> pending;

  auto admit = [&](AlgebraElement element) {
    const std::size_t k = basis.size();
    for (std::size_t i = 0; i < k; ++i) pending.emplace_back(i, k);
    names.insert(element.name);
    basis.push_back(std::move(element));
  };

  for (const auto& s : seeds) {
    seed_names.push_back(s.name);
    if (s.poly.degree() > limits.max_degree) {
      throw NonClosing("seed '" + s.name + "' exceeds the degree cap", s.name, s.name, basis);
    }
    auto red = echelon.reduce(as_vector(s.poly));
    if (red.remainder.empty()) continue;
    if (basis.size() >= limits.max_basis) {
      throw NonClosing("seeds exceed the basis cap of " + std::to_string(limits.max_basis), s.name,
                       s.name, basis);
    }
    echelon.insert(as_vector(s.poly));
    AlgebraElement e = s;
    if (s.poly.is_constant()) {
      e.poly = PhasePoly::constant(ctx, 1);
      e.identity = true;
    }
    admit(std::move(e));
  }

  int generated = 0;
  auto fresh_name = [&] {
    std::string n;
    do {
      n = "g" + std::to_string(++generated);
    } while (names.contains(n));
    return n;
  };

  while (!pending.empty()) {
    const auto [i, j] = pending.front();
    pending.pop_front();
    const auto& left = basis[i];
    const auto& right = basis[j];
    PhasePoly value(ctx);
    try {
      value = bracket(kind, left.poly, right.poly);
    } catch (const BudgetExceeded& e) {
      throw NonClosing(std::string("bracket exceeds the arithmetic budget: ") + e.what(), left.name,
                       right.name, basis);
    }
    if (value.degree() > limits.max_degree) {
      throw NonClosing("bracket degree " + std::to_string(value.degree()) + " exceeds the cap of " +
                           std::to_string(limits.max_degree),
                       left.name, right.name, basis);
    }
    auto red = echelon.reduce(as_vector(value));
    if (red.remainder.empty()) continue;
    if (basis.size() >= limits.max_basis) {
      throw NonClosing("basis would exceed the cap of " + std::to_string(limits.max_basis) + " elements",
                       left.name, right.name, basis);
    }
    PhasePoly remainder = as_poly(ctx, red.remainder);
    // unit graded-lex leading coefficient
    remainder *= Rational(1) / remainder.leading().second;
    echelon.insert(as_vector(remainder));
    const bool identity = remainder.is_constant();
    std::string name = identity && !names.contains("I") ? std::string("I") : fresh_name();
    admit(AlgebraElement{std::move(name), std::move(remainder), identity});
  }

  return LieClosure(std::move(basis), kind, std::move(seed_names));
}

std::vector<StructureConstant> structure_constants(const LieClosure& closure) {
  std::vector<StructureConstant> out;
  const std::size_t n = closure.basis().size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        Rational c = closure.constant(i, j, k);
        if (c != 0) out.push_back({i, j, k, std::move(c)});
      }
    }
  }
  return out;
}

std::vector<std::string> verify_closure(const LieClosure& closure) {
  std::vector<std::string> problems;
  const auto& basis = closure.basis();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      PhasePoly value = bracket(closure.bracket_kind(), basis[i].poly, basis[j].poly);
      for (std::size_t k = 0; k < basis.size(); ++k) {
        value -= closure.constant(i, j, k) * basis[k].poly;
      }
      if (!value.is_zero()) {
        problems.push_back("{" + basis[i].name + ", " + basis[j].name + "} residual " + to_string(value));
      }
    }
  }
  return problems;
}

bool structure_satisfies_jacobi(const LieClosure& closure) {
  const std::size_t n = closure.basis().size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t m = 0; m < n; ++m) {
          Rational sum = 0;
          for (std::size_t l = 0; l < n; ++l) {
            sum += closure.constant(j, k, l) * closure.constant(i, l, m);
            sum += closure.constant(k, i, l) * closure.constant(j, l, m);
            sum += closure.constant(i, j, l) * closure.constant(k, l, m);
          }
          if (sum != 0) return false;
        }
      }
    }
  }
  return true;
}

std::string to_string(PrintedRelation relation) {
  switch (relation) {
    case PrintedRelation::Match: return "match";
    case PrintedRelation::SignFlipped: return "sign-flipped";
    case PrintedRelation::ConstantShift: return "constant-shift";
    case PrintedRelation::SignFlippedAndConstantShift: return "sign-flipped+constant-shift";
    case PrintedRelation::Mismatch: return "mismatch";
  }
  return "mismatch";
}

PrintedRelation compare_with_printed(const PhasePoly& computed, const PhasePoly& printed) {
  const PhasePoly difference = computed - printed;
  if (difference.is_zero()) return PrintedRelation::Match;
  const PhasePoly sum = computed + printed;
  if (sum.is_zero()) return PrintedRelation::SignFlipped;
  if (difference.is_constant()) return PrintedRelation::ConstantShift;
  if (sum.is_constant()) return PrintedRelation::SignFlippedAndConstantShift;
  return PrintedRelation::Mismatch;
}

}  // namespace rightham
