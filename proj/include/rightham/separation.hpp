#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rightham/errors.hpp"
#include "rightham/linear.hpp"
#include "rightham/phase_poly.hpp"

namespace rightham {

/// Linear canonical change of variables for N bodies in d spatial dimensions.
/// The same matrices act on every spatial component:
///   new_position[k][a] = sum_i positions(k, i) * old_position[i][a]
///   new_momentum[k][a] = sum_i momenta(k, i) * old_momentum[i][a]
///
/// Old variables use the default context naming in body-major order: body i,
/// component a is q_{i*d + a + 1} / p_{i*d + a + 1}.
struct CanonicalMap {
  std::size_t dimension = 3;
  std::vector<Rational> masses;
  RationalMatrix positions;
  RationalMatrix momenta;
  std::size_t cm_row = 0;
  std::vector<std::string> position_labels;  // one per row, e.g. "R", "r", "r1"
  std::vector<std::string> momentum_labels;  // one per row, e.g. "P", "p", "p1"

  std::size_t bodies() const noexcept { return masses.size(); }
  Rational total_mass() const;
};

/// R = (m1 r1 + m2 r2)/M, P = p1 + p2, r = r1 - r2, p = (m2 p1 - m1 p2)/M.
/// The centre-of-mass row comes first.
CanonicalMap two_body_transform(const Rational& m1, const Rational& m2, std::size_t dimension = 3);

/// Sequential Jacobi chain: row k (k = 0..N-2) is body k+2 minus the centre of
/// mass of bodies 1..k+1; the last row is the total centre of mass. Momenta
/// are the rows of (A^T)^-1.
CanonicalMap jacobi_transform(const std::vector<Rational>& masses, std::size_t dimension = 3);

/// Context of the individual-body variables.
ContextPtr body_context(const CanonicalMap& map);
/// Context of the transformed variables, named <label>_<component>
/// (component suffix omitted when d = 1).
ContextPtr transformed_context(const CanonicalMap& map);

/// New variables written as polynomials in the individual-body variables.
std::vector<PhasePoly> forward_images(const CanonicalMap& map, const ContextPtr& body_ctx,
                                      const ContextPtr& new_ctx);
/// Individual-body variables written in the new variables.
std::vector<PhasePoly> inverse_images(const CanonicalMap& map, const ContextPtr& body_ctx,
                                      const ContextPtr& new_ctx);

struct CanonicityReport {
  bool passed = false;
  bool matrix_identity = false;  // positions * momenta^T == I
  std::vector<std::string> violations;
};

/// Instantiates the new variables in the old ones and checks every pairwise
/// Poisson bracket against the canonical relations.
CanonicityReport verify_canonical(const CanonicalMap& map);

class SeparationFailure : public Error {
 public:
  SeparationFailure(const std::string& message, std::vector<std::string> mixed_terms)
      : Error(message), mixed_terms_(std::move(mixed_terms)) {}
  const std::vector<std::string>& mixed_terms() const noexcept { return mixed_terms_; }

 private:
  std::vector<std::string> mixed_terms_;
};

struct Separation {
  PhasePoly cm;        // terms in centre-of-mass variables only
  PhasePoly internal;  // everything else, including constants
  bool cm_is_free_kinetic = false;      // cm == P^2 / 2M
  bool kinetic_cross_terms = false;     // p_k . p_l with k != l in the internal part
  std::vector<Rational> reduced_masses;  // from the p_k^2 coefficients, one per relative row
  bool two_body_reduced_mass_ok = false;  // only meaningful for two bodies
  bool reassembly_ok = false;
};

/// Rewrites h (in individual-body variables) in the map's variables and splits
/// it. Throws SeparationFailure listing the offending terms when a term mixes
/// centre-of-mass and relative variables.
Separation separate_hamiltonian(const PhasePoly& h, const CanonicalMap& map);

/// sum_i |p_i|^2 / (2 m_i) in the individual-body variables of the map.
PhasePoly kinetic_energy(const CanonicalMap& map, const ContextPtr& body_ctx);

}  // namespace rightham
