#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rightham/closure.hpp"

namespace rightham {

/// One element of the quadratic-in-generators solution space
/// C = sum a_ij g_i g_j + sum b_i g_i + c0, with g ranging over the
/// non-identity basis elements of the closure.
struct CasimirSolution {
  struct Quadratic {
    std::size_t i, j;  // basis indices, i <= j
    Rational value;
  };
  struct Linear {
    std::size_t i;
    Rational value;
  };
  std::vector<Quadratic> quadratic;  // nonzero entries only
  std::vector<Linear> linear;        // nonzero entries only
  Rational constant = 0;
  PhasePoly realization;
  bool trivial = false;  // realization is a constant
};

struct CenterSolution {
  unsigned ansatz_degree = 0;
  /// Reduced echelon basis of the solution space (unit leading coefficients),
  /// ordered by increasing leading monomial so the constant comes first.
  std::vector<PhasePoly> basis;
};

struct InvariantCheck {
  struct Residual {
    std::string element;
    PhasePoly value;
  };
  std::vector<Residual> residuals;  // one per basis element
  bool passed = false;
};

/// Quadratic Casimir search. Solutions whose realization vanishes identically
/// are discarded, and each returned solution is reduced modulo such
/// realization-level relations, then scaled so its first nonzero ansatz
/// coefficient is 1. The ansatz order is a_ij (i <= j, lexicographic), then
/// b_i, then c0. Nontrivial solutions come first; the constant is last.
std::vector<CasimirSolution> find_casimir(const LieClosure& closure);

struct CenterOptions {
  unsigned max_total_degree = 2;
  std::size_t max_ansatz = 5000;
};

class AnsatzTooLarge : public Error {
 public:
  using Error::Error;
};

/// All phase-space polynomials of total degree <= max_total_degree that
/// bracket-commute with every basis element.
CenterSolution find_center(const LieClosure& closure, CenterOptions options = {});

/// bracket(poly, g_k) for every basis element; passes iff all vanish.
InvariantCheck verify_invariant(const PhasePoly& poly, const LieClosure& closure);

}  // namespace rightham
