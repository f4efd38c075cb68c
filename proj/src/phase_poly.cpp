#include "rightham/phase_poly.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "rightham/errors.hpp"

namespace rightham {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s.front())) && s.front() != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

// ---------------------------------------------------------------- context

ContextPtr PhaseContext::make(int dof, std::map<std::string, Rational> params, Rational hbar,
                              Limits limits) {
  if (dof < 1) throw InvalidInput("phase space needs at least one canonical pair");
  std::vector<std::string> positions, momenta;
  for (int i = 1; i <= dof; ++i) {
    positions.push_back("q" + std::to_string(i));
    momenta.push_back("p" + std::to_string(i));
  }
  auto ctx = std::shared_ptr<PhaseContext>(new PhaseContext());
  ctx->dof_ = dof;
  ctx->default_naming_ = true;
  ctx->names_ = positions;
  ctx->names_.insert(ctx->names_.end(), momenta.begin(), momenta.end());
  ctx->params_ = std::move(params);
  ctx->hbar_ = std::move(hbar);
  ctx->limits_ = limits;
  ctx->validate();
  return ctx;
}

ContextPtr PhaseContext::make_named(std::vector<std::string> positions, std::vector<std::string> momenta,
                                    std::map<std::string, Rational> params, Rational hbar,
                                    Limits limits) {
  if (positions.empty() || positions.size() != momenta.size()) {
    throw InvalidInput("position and momentum name lists must be nonempty and of equal length");
  }
  auto ctx = std::shared_ptr<PhaseContext>(new PhaseContext());
  ctx->dof_ = static_cast<int>(positions.size());
  ctx->default_naming_ = false;
  ctx->names_ = std::move(positions);
  ctx->names_.insert(ctx->names_.end(), momenta.begin(), momenta.end());
  ctx->params_ = std::move(params);
  ctx->hbar_ = std::move(hbar);
  ctx->limits_ = limits;
  ctx->validate();
  return ctx;
}

void PhaseContext::validate() const {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!is_identifier(n)) throw InvalidInput("invalid variable name '" + n + "'");
    if (!seen.insert(n).second) throw InvalidInput("duplicate variable name '" + n + "'");
  }
  for (const auto& [n, value] : params_) {
    if (!is_identifier(n)) throw InvalidInput("invalid parameter name '" + n + "'");
    if (lookup_variable(n)) throw InvalidInput("parameter '" + n + "' shadows a phase-space variable");
  }
  if (hbar_ < 0) throw InvalidInput("hbar must be nonnegative");
}

std::optional<std::size_t> PhaseContext::lookup_variable(std::string_view name) const {
  for (std::size_t v = 0; v < names_.size(); ++v) {
    if (names_[v] == name) return v;
  }
  if (default_naming_ && name.size() > 1 && name.front() == 'x') {
    for (int i = 0; i < dof_; ++i) {
      if (name.substr(1) == std::to_string(i + 1)) return q(i);
    }
  }
  return std::nullopt;
}

std::optional<Rational> PhaseContext::param(std::string_view name) const {
  auto it = params_.find(std::string(name));
  if (it == params_.end()) return std::nullopt;
  return it->second;
}

bool PhaseContext::compatible(const PhaseContext& other) const {
  return this == &other || (dof_ == other.dof_ && names_ == other.names_ && hbar_ == other.hbar_);
}

// --------------------------------------------------------------- monomial

Monomial::Monomial(std::vector<std::uint16_t> exps) : exps_(std::move(exps)) {
  for (auto e : exps_) degree_ += e;
}

void Monomial::set(std::size_t var, std::uint16_t e) {
  degree_ = degree_ - exps_[var] + e;
  exps_[var] = e;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out(*this);
  for (std::size_t v = 0; v < exps_.size(); ++v) out.exps_[v] += other.exps_[v];
  out.degree_ += other.degree_;
  return out;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t v = 0; v < exps_.size(); ++v) {
    if (exps_[v] > other.exps_[v]) return false;
  }
  return true;
}

bool GrlexDescending::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  return a.exponents() > b.exponents();
}

// ------------------------------------------------------------------- poly

PhasePoly::PhasePoly(ContextPtr ctx) : ctx_(std::move(ctx)) {}

PhasePoly PhasePoly::constant(ContextPtr ctx, const Rational& value) {
  PhasePoly out(ctx);
  if (value != 0) out.terms_.emplace(Monomial(ctx->variable_count()), value);
  return out;
}

PhasePoly PhasePoly::variable(ContextPtr ctx, std::size_t var) {
  if (var >= ctx->variable_count()) {
    throw UnknownVariable("variable index " + std::to_string(var) + " out of range");
  }
  Monomial m(ctx->variable_count());
  m.set(var, 1);
  return monomial(std::move(ctx), std::move(m));
}

PhasePoly PhasePoly::monomial(ContextPtr ctx, Monomial m, const Rational& coeff) {
  PhasePoly out(std::move(ctx));
  if (coeff != 0) out.terms_.emplace(std::move(m), coeff);
  out.check_budget();
  return out;
}

PhasePoly PhasePoly::from_terms(ContextPtr ctx, Terms terms) {
  PhasePoly out(std::move(ctx));
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->second == 0) {
      it = terms.erase(it);
    } else {
      ++it;
    }
  }
  out.terms_ = std::move(terms);
  out.check_budget();
  return out;
}

void PhasePoly::check_budget() const {
  const auto& limits = ctx_->limits();
  if (degree() > limits.max_degree) {
    throw BudgetExceeded("total degree " + std::to_string(degree()) + " exceeds the budget of " +
                         std::to_string(limits.max_degree));
  }
  if (limits.max_terms != 0 && terms_.size() > limits.max_terms) {
    throw BudgetExceeded("term count " + std::to_string(terms_.size()) + " exceeds the cap of " +
                         std::to_string(limits.max_terms));
  }
}

bool PhasePoly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

unsigned PhasePoly::degree() const noexcept {
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

Rational PhasePoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational PhasePoly::constant_term() const { return coefficient(Monomial(ctx_->variable_count())); }

bool PhasePoly::uses_only(std::span<const std::size_t> vars) const {
  for (const auto& [m, c] : terms_) {
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v] != 0 && std::find(vars.begin(), vars.end(), v) == vars.end()) return false;
    }
  }
  return true;
}

void PhasePoly::add_scaled(const PhasePoly& other, const Rational& factor) {
  require_same_context(*this, other);
  for (const auto& [m, c] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(m, c * factor);
    if (!inserted) {
      it->second += c * factor;
      if (it->second == 0) terms_.erase(it);
    }
  }
  check_budget();
}

PhasePoly PhasePoly::operator-() const {
  PhasePoly out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

PhasePoly& PhasePoly::operator+=(const PhasePoly& other) {
  add_scaled(other, 1);
  return *this;
}

PhasePoly& PhasePoly::operator-=(const PhasePoly& other) {
  add_scaled(other, -1);
  return *this;
}

PhasePoly& PhasePoly::operator*=(const Rational& factor) {
  if (factor == 0) {
    terms_.clear();
  } else {
    for (auto& [m, c] : terms_) c *= factor;
  }
  return *this;
}

PhasePoly operator*(const PhasePoly& a, const PhasePoly& b) {
  require_same_context(a, b);
  if (!a.is_zero() && !b.is_zero() && a.degree() + b.degree() > a.ctx_->limits().max_degree) {
    throw BudgetExceeded("product degree " + std::to_string(a.degree() + b.degree()) +
                         " exceeds the budget of " + std::to_string(a.ctx_->limits().max_degree));
  }
  PhasePoly::Terms out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      auto [it, inserted] = out.try_emplace(ma * mb, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  return PhasePoly::from_terms(a.ctx_, std::move(out));
}

bool operator==(const PhasePoly& a, const PhasePoly& b) {
  return a.ctx_->compatible(*b.ctx_) && a.terms_ == b.terms_;
}

void require_same_context(const PhasePoly& a, const PhasePoly& b) {
  if (!a.context()->compatible(*b.context())) throw ContextMismatch();
}

PhasePoly pow(const PhasePoly& base, unsigned exponent) {
  if (exponent == 0) return PhasePoly::constant(base.context(), 1);
  if (!base.is_constant() &&
      static_cast<unsigned long>(base.degree()) * exponent > base.context()->limits().max_degree) {
    throw BudgetExceeded("power of degree " + std::to_string(base.degree()) + " to exponent " +
                         std::to_string(exponent) + " exceeds the degree budget");
  }
  if (base.is_constant()) {
    return PhasePoly::constant(base.context(), rightham::pow(base.constant_term(), exponent));
  }
  PhasePoly result = PhasePoly::constant(base.context(), 1);
  PhasePoly square = base;
  while (true) {
    if (exponent & 1U) result = result * square;
    exponent >>= 1U;
    if (exponent == 0) break;
    square = square * square;
  }
  return result;
}

PhasePoly partial_derivative(const PhasePoly& poly, std::size_t var) {
  if (var >= poly.context()->variable_count()) {
    throw UnknownVariable("variable index " + std::to_string(var) + " out of range");
  }
  PhasePoly::Terms out;
  for (const auto& [m, c] : poly.terms()) {
    if (m[var] == 0) continue;
    Monomial d(m);
    d.set(var, m[var] - 1);
    out.emplace(std::move(d), c * m[var]);
  }
  return PhasePoly::from_terms(poly.context(), std::move(out));
}

PhasePoly derivative(const PhasePoly& poly, std::span<const unsigned> orders) {
  const auto n = poly.context()->variable_count();
  if (orders.size() != n) throw UnknownVariable("derivative order vector has the wrong length");
  PhasePoly::Terms out;
  for (const auto& [m, c] : poly.terms()) {
    Rational coeff = c;
    Monomial d(m);
    bool vanishes = false;
    for (std::size_t v = 0; v < n && !vanishes; ++v) {
      if (orders[v] == 0) continue;
      if (orders[v] > m[v]) {
        vanishes = true;
        break;
      }
      for (unsigned k = 0; k < orders[v]; ++k) coeff *= (m[v] - k);
      d.set(v, static_cast<std::uint16_t>(m[v] - orders[v]));
    }
    if (vanishes) continue;
    // distinct source monomials map to distinct derivatives
    out.emplace(std::move(d), std::move(coeff));
  }
  return PhasePoly::from_terms(poly.context(), std::move(out));
}

PhasePoly poisson_bracket(const PhasePoly& a, const PhasePoly& b) {
  require_same_context(a, b);
  const auto& ctx = a.context();
  PhasePoly result(ctx);
  if (a.is_constant() || b.is_constant()) return result;
  PhasePoly::Terms acc;
  auto accumulate = [&acc](const PhasePoly& x, const PhasePoly& y, int sign) {
    for (const auto& [mx, cx] : x.terms()) {
      for (const auto& [my, cy] : y.terms()) {
        Rational v = cx * cy;
        if (sign < 0) v = -v;
        auto [it, inserted] = acc.try_emplace(mx * my, v);
        if (!inserted) it->second += v;
      }
    }
  };
  for (int i = 0; i < ctx->dof(); ++i) {
    auto da_q = partial_derivative(a, ctx->q(i));
    auto db_p = partial_derivative(b, ctx->p(i));
    auto da_p = partial_derivative(a, ctx->p(i));
    auto db_q = partial_derivative(b, ctx->q(i));
    accumulate(da_q, db_p, +1);
    accumulate(da_p, db_q, -1);
  }
  return PhasePoly::from_terms(ctx, std::move(acc));
}

PhasePoly substitute(const PhasePoly& poly, std::span<const PhasePoly> images) {
  const auto n = poly.context()->variable_count();
  if (images.size() != n) throw InvalidInput("substitution needs one image per variable");
  const ContextPtr& target = images.front().context();
  for (const auto& img : images) {
    if (!img.context()->compatible(*target)) throw ContextMismatch();
  }
  // powers[v][e] = images[v]^e, filled lazily
  std::vector<std::vector<PhasePoly>> powers(n);
  auto power_of = [&](std::size_t v, unsigned e) -> const PhasePoly& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(PhasePoly::constant(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
    return cache[e];
  };
  PhasePoly result(target);
  for (const auto& [m, c] : poly.terms()) {
    PhasePoly term = PhasePoly::constant(target, c);
    for (std::size_t v = 0; v < n; ++v) {
      if (m[v] != 0) term = term * power_of(v, m[v]);
    }
    result += term;
  }
  return result;
}

std::string to_string(const PhasePoly& poly) {
  if (poly.is_zero()) return "0";
  const auto& ctx = *poly.context();
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : poly.terms()) {
    const bool negative = c < 0;
    Rational magnitude = abs(c);
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (magnitude != 1 || m.degree() == 0) {
      out << to_string(magnitude);
      wrote = true;
    }
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v] == 0) continue;
      if (wrote) out << '*';
      out << ctx.name(v);
      if (m[v] > 1) out << '^' << m[v];
      wrote = true;
    }
  }
  return out.str();
}

}  // namespace rightham
