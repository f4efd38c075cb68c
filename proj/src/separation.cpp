#include "rightham/separation.hpp"

namespace rightham {

namespace {

void require_positive(const std::vector<Rational>& masses) {
  for (const auto& m : masses) {
    if (m <= 0) throw InvalidInput("masses must be positive, got " + to_string(m));
  }
}

std::string variable_name(const std::string& label, std::size_t component, std::size_t dimension) {
  return dimension == 1 ? label : label + "_" + std::to_string(component + 1);
}

// Linear form sum_i coeffs[i] * var(i, component) in ctx.
PhasePoly linear_form(const ContextPtr& ctx, const std::vector<Rational>& coeffs, std::size_t component,
                      std::size_t dimension, bool momentum) {
  PhasePoly out(ctx);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    const int index = static_cast<int>(i * dimension + component);
    out += coeffs[i] * PhasePoly::variable(ctx, momentum ? ctx->p(index) : ctx->q(index));
  }
  return out;
}

std::vector<PhasePoly> images_of(const RationalMatrix& pos, const RationalMatrix& mom, std::size_t dimension,
                                 const ContextPtr& target) {
  const std::size_t n = pos.size();
  std::vector<PhasePoly> out(2 * n * dimension, PhasePoly(target));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t a = 0; a < dimension; ++a) {
      const std::size_t index = k * dimension + a;
      out[index] = linear_form(target, pos[k], a, dimension, false);
      out[n * dimension + index] = linear_form(target, mom[k], a, dimension, true);
    }
  }
  return out;
}

}  // namespace

Rational CanonicalMap::total_mass() const {
  Rational total = 0;
  for (const auto& m : masses) total += m;
  return total;
}

CanonicalMap two_body_transform(const Rational& m1, const Rational& m2, std::size_t dimension) {
  require_positive({m1, m2});
  if (dimension == 0) throw InvalidInput("spatial dimension must be positive");
  const Rational total = m1 + m2;
  CanonicalMap map;
  map.dimension = dimension;
  map.masses = {m1, m2};
  map.positions = {{m1 / total, m2 / total}, {1, -1}};
  map.momenta = {{1, 1}, {m2 / total, -m1 / total}};
  map.cm_row = 0;
  map.position_labels = {"R", "r"};
  map.momentum_labels = {"P", "p"};
  return map;
}

CanonicalMap jacobi_transform(const std::vector<Rational>& masses, std::size_t dimension) {
  if (masses.size() < 2) throw InvalidInput("Jacobi coordinates need at least two bodies");
  require_positive(masses);
  if (dimension == 0) throw InvalidInput("spatial dimension must be positive");
  const std::size_t n = masses.size();
  CanonicalMap map;
  map.dimension = dimension;
  map.masses = masses;
  map.positions.assign(n, std::vector<Rational>(n, 0));
  Rational partial = 0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    partial += masses[k];
    for (std::size_t i = 0; i <= k; ++i) map.positions[k][i] = -masses[i] / partial;
    map.positions[k][k + 1] = 1;
    map.position_labels.push_back("r" + std::to_string(k + 1));
    map.momentum_labels.push_back("p" + std::to_string(k + 1));
  }
  const Rational total = partial + masses[n - 1];
  for (std::size_t i = 0; i < n; ++i) map.positions[n - 1][i] = masses[i] / total;
  map.position_labels.push_back("R");
  map.momentum_labels.push_back("P");
  map.cm_row = n - 1;
  map.momenta = inverse(transpose(map.positions));
  return map;
}

ContextPtr body_context(const CanonicalMap& map) {
  return PhaseContext::make(static_cast<int>(map.bodies() * map.dimension));
}

ContextPtr transformed_context(const CanonicalMap& map) {
  std::vector<std::string> positions, momenta;
  for (std::size_t k = 0; k < map.bodies(); ++k) {
    for (std::size_t a = 0; a < map.dimension; ++a) {
      positions.push_back(variable_name(map.position_labels[k], a, map.dimension));
      momenta.push_back(variable_name(map.momentum_labels[k], a, map.dimension));
    }
  }
  return PhaseContext::make_named(std::move(positions), std::move(momenta));
}

std::vector<PhasePoly> forward_images(const CanonicalMap& map, const ContextPtr& body_ctx, const ContextPtr&) {
  return images_of(map.positions, map.momenta, map.dimension, body_ctx);
}

std::vector<PhasePoly> inverse_images(const CanonicalMap& map, const ContextPtr&, const ContextPtr& new_ctx) {
  return images_of(inverse(map.positions), inverse(map.momenta), map.dimension, new_ctx);
}

CanonicityReport verify_canonical(const CanonicalMap& map) {
  CanonicityReport report;
  report.matrix_identity =
      multiply(map.positions, transpose(map.momenta)) == identity_matrix(map.bodies());

  const auto ctx = body_context(map);
  const auto images = images_of(map.positions, map.momenta, map.dimension, ctx);
  const std::size_t n = images.size() / 2;
  auto label = [&](std::size_t v) {
    const bool momentum = v >= n;
    const std::size_t index = momentum ? v - n : v;
    const auto& labels = momentum ? map.momentum_labels : map.position_labels;
    return variable_name(labels[index / map.dimension], index % map.dimension, map.dimension);
  };
  for (std::size_t u = 0; u < 2 * n; ++u) {
    for (std::size_t v = u + 1; v < 2 * n; ++v) {
      const auto value = poisson_bracket(images[u], images[v]);
      const Rational expected = (u < n && v == u + n) ? 1 : 0;
      if (!(value == PhasePoly::constant(ctx, expected))) {
        report.violations.push_back("{" + label(u) + ", " + label(v) + "} = " + to_string(value) +
                                    ", expected " + to_string(expected));
      }
    }
  }
  report.passed = report.violations.empty() && report.matrix_identity;
  return report;
}

PhasePoly kinetic_energy(const CanonicalMap& map, const ContextPtr& body_ctx) {
  PhasePoly out(body_ctx);
  for (std::size_t i = 0; i < map.bodies(); ++i) {
    for (std::size_t a = 0; a < map.dimension; ++a) {
      auto p = PhasePoly::variable(body_ctx, body_ctx->p(static_cast<int>(i * map.dimension + a)));
      out += (Rational(1) / (2 * map.masses[i])) * (p * p);
    }
  }
  return out;
}

Separation separate_hamiltonian(const PhasePoly& h, const CanonicalMap& map) {
  const auto body_ctx = body_context(map);
  if (!h.context()->compatible(*body_ctx)) throw ContextMismatch();
  if (!verify_canonical(map).passed) throw InvalidInput("map is not canonical");

  const auto new_ctx = transformed_context(map);
  const auto inv = inverse_images(map, body_ctx, new_ctx);
  const PhasePoly rewritten = substitute(h, inv);

  const std::size_t n = map.bodies() * map.dimension;
  auto row_of = [&](std::size_t var) { return (var % n) / map.dimension; };
  auto is_cm = [&](std::size_t var) { return row_of(var) == map.cm_row; };

  PhasePoly::Terms cm_terms, internal_terms;
  std::vector<std::string> mixed;
  for (const auto& [m, c] : rewritten.terms()) {
    bool touches_cm = false, touches_rel = false;
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v] == 0) continue;
      (is_cm(v) ? touches_cm : touches_rel) = true;
    }
    if (touches_cm && touches_rel) {
      mixed.push_back(to_string(PhasePoly::monomial(new_ctx, m, c)));
    } else if (touches_cm) {
      cm_terms.emplace(m, c);
    } else {
      internal_terms.emplace(m, c);
    }
  }
  if (!mixed.empty()) {
    throw SeparationFailure("Hamiltonian couples centre-of-mass and relative variables (" +
                                std::to_string(mixed.size()) + " mixed terms)",
                            std::move(mixed));
  }

  Separation out{PhasePoly::from_terms(new_ctx, std::move(cm_terms)),
                 PhasePoly::from_terms(new_ctx, std::move(internal_terms)),
                 false, false, {}, false, false};

  const Rational total = map.total_mass();
  PhasePoly free_cm(new_ctx);
  for (std::size_t a = 0; a < map.dimension; ++a) {
    auto p = PhasePoly::variable(new_ctx, n + map.cm_row * map.dimension + a);
    free_cm += (Rational(1) / (2 * total)) * (p * p);
  }
  out.cm_is_free_kinetic = out.cm == free_cm;

  for (const auto& [m, c] : out.internal.terms()) {
    if (m.degree() != 2) continue;
    std::vector<std::size_t> vars;
    for (std::size_t v = 0; v < m.size(); ++v) {
      for (unsigned e = 0; e < m[v]; ++e) vars.push_back(v);
    }
    if (vars[0] >= n && vars[1] >= n && row_of(vars[0]) != row_of(vars[1])) out.kinetic_cross_terms = true;
  }
  for (std::size_t k = 0; k < map.bodies(); ++k) {
    if (k == map.cm_row) continue;
    Monomial square(2 * n);
    square.set(n + k * map.dimension, 2);
    const Rational c = out.internal.coefficient(square);
    out.reduced_masses.push_back(c == 0 ? Rational(0) : Rational(Rational(1) / (2 * c)));
  }
  if (map.bodies() == 2 && out.reduced_masses.size() == 1) {
    out.two_body_reduced_mass_ok = out.reduced_masses[0] == map.masses[0] * map.masses[1] / total;
  }

  const auto fwd = forward_images(map, body_ctx, new_ctx);
  out.reassembly_ok = substitute(out.cm + out.internal, fwd) == h;
  return out;
}

}  // namespace rightham
