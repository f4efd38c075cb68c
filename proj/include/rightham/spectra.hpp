#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace rightham {

// Units: hbar = 1 throughout.

enum class SpectrumMode { BoxCm, Internal, CompositeSpurious, CompositeRight };

std::string to_string(SpectrumMode mode);

struct SpectrumLevel {
  std::vector<int> labels;  // (n1,n2,n3) | (n) | (internal index, n1,n2,n3) | (internal index)
  double energy = 0;
  std::size_t group = 0;  // equal-energy multiplet id, increasing with energy
};

struct SpectrumReport {
  SpectrumMode mode = SpectrumMode::BoxCm;
  std::vector<SpectrumLevel> levels;  // ascending energy
  std::optional<double> offset;       // composite-right only
  std::map<std::string, double> metadata;

  /// Number of levels in multiplet `group`.
  std::size_t degeneracy(std::size_t group) const;
};

/// Relative tolerance used to group degenerate levels.
inline constexpr double kDegeneracyTolerance = 1e-12;

/// Free particle of mass M confined to a cube of side l with Dirichlet walls:
/// E = pi^2 (n1^2 + n2^2 + n3^2) / (2 M l^2), all n_i in 1..n_max.
SpectrumReport box_spectrum(double mass, double side, int n_max);

struct Harmonic {
  double omega;  // V = m omega^2 x^2 / 2
};
struct FlatWell {};  // V = 0 between Dirichlet walls
struct CoulombRegularized {
  double kappa;  // V = -kappa / max(|x|, r_min)
  double r_min;
};
struct Tabulated {
  std::vector<double> x;  // strictly increasing
  std::vector<double> v;  // linearly interpolated
};

struct PotentialSpec {
  std::variant<Harmonic, FlatWell, CoulombRegularized, Tabulated> kind;
  double mass = 1;
  double lower = -1;
  double upper = 1;
  int grid = 2000;  // nodes including both Dirichlet endpoints

  /// Infinite well of width `side` centred on the origin.
  static PotentialSpec box(double side, double mass, int grid);
  double potential(double x) const;
};

/// Reads two whitespace-separated columns (position, value). Positions must be
/// strictly increasing; at least two rows.
Tabulated read_tabulated(std::istream& in);

/// Lowest `count` eigenvalues of the 3-point finite-difference Hamiltonian
/// -(1/2m) d^2/dx^2 + V on the interior nodes, by Sturm-sequence bisection to
/// an absolute tolerance of 1e-10. Discretization error is O(h^2).
std::vector<double> fd_eigen_1d(const PotentialSpec& spec, int count);

/// Normalized eigenvector of level `index` on the interior nodes, by inverse
/// iteration at the bisected eigenvalue.
std::vector<double> fd_eigenvector(const PotentialSpec& spec, int index);

/// Sign changes along a sampled wavefunction, ignoring entries below
/// `threshold` times the maximum magnitude.
int count_nodes(std::span<const double> psi, double threshold = 1e-8);

/// Internal levels labelled by their index n = 0, 1, ...
SpectrumReport internal_spectrum(const PotentialSpec& spec, int count);

/// Every E_int[i] + E_cm over the centre-of-mass levels, sorted and truncated
/// to `count` levels (0 keeps all). Labels are (i, n1, n2, n3).
SpectrumReport composite_spurious(std::span<const double> internal, const SpectrumReport& cm,
                                  std::size_t count = 0);

/// f + E_int[i], one level per internal level. Labels are (i).
SpectrumReport composite_right(std::span<const double> internal, double offset);

}  // namespace rightham
