#include "rightham/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rightham/errors.hpp"

namespace rightham {

namespace {

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] couples i and i+1
};

Tridiagonal assemble(const PotentialSpec& spec) {
  if (!(spec.mass > 0)) throw InvalidInput("mass must be positive");
  if (!(spec.upper > spec.lower)) throw InvalidInput("domain upper bound must exceed the lower bound");
  if (spec.grid < 16) throw InvalidInput("grid needs at least 16 nodes");
  const int interior = spec.grid - 2;
  const double h = (spec.upper - spec.lower) / (spec.grid - 1);
  const double kinetic = 1.0 / (2.0 * spec.mass * h * h);
  Tridiagonal t;
  t.diag.resize(interior);
  t.off.assign(interior - 1, -kinetic);
  for (int i = 0; i < interior; ++i) {
    const double v = spec.potential(spec.lower + (i + 1) * h);
    if (!std::isfinite(v)) {
      throw InvalidInput("potential is not finite at x = " + std::to_string(spec.lower + (i + 1) * h));
    }
    t.diag[i] = 2.0 * kinetic + v;
  }
  return t;
}

// Number of eigenvalues strictly below x (Sturm count via the LDL^T pivots).
int count_below(const Tridiagonal& t, double x) {
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    const double coupling = i == 0 ? 0.0 : t.off[i - 1] * t.off[i - 1];
    q = t.diag[i] - x - (i == 0 ? 0.0 : coupling / q);
    if (q == 0.0) q = -std::numeric_limits<double>::epsilon() * (std::abs(x) + 1.0);
    if (q < 0.0) ++count;
  }
  return count;
}

std::pair<double, double> gershgorin(const Tridiagonal& t) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    double radius = 0;
    if (i > 0) radius += std::abs(t.off[i - 1]);
    if (i + 1 < t.diag.size()) radius += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - radius);
    hi = std::max(hi, t.diag[i] + radius);
  }
  return {lo, hi};
}

double bisect(const Tridiagonal& t, int index, double lo, double hi) {
  constexpr double tolerance = 1e-10;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_below(t, mid) > index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void sort_and_group(std::vector<SpectrumLevel>& levels) {
  std::stable_sort(levels.begin(), levels.end(), [](const SpectrumLevel& a, const SpectrumLevel& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.labels < b.labels;
  });
  std::size_t group = 0;
  double anchor = levels.empty() ? 0.0 : levels.front().energy;
  for (auto& level : levels) {
    const double scale = std::max(std::abs(anchor), std::abs(level.energy));
    if (std::abs(level.energy - anchor) > kDegeneracyTolerance * scale) {
      ++group;
      anchor = level.energy;
    }
    level.group = group;
  }
}

}  // namespace

std::string to_string(SpectrumMode mode) {
  switch (mode) {
    case SpectrumMode::BoxCm: return "box-cm";
    case SpectrumMode::Internal: return "internal";
    case SpectrumMode::CompositeSpurious: return "composite-spurious";
    case SpectrumMode::CompositeRight: return "composite-right";
  }
  return "unknown";
}

std::size_t SpectrumReport::degeneracy(std::size_t group) const {
  return static_cast<std::size_t>(std::count_if(levels.begin(), levels.end(),
                                                [group](const SpectrumLevel& l) { return l.group == group; }));
}

SpectrumReport box_spectrum(double mass, double side, int n_max) {
  if (!(mass > 0)) throw InvalidInput("mass must be positive");
  if (!(side > 0)) throw InvalidInput("box side must be positive");
  if (n_max < 1) throw InvalidInput("n_max must be at least 1");
  constexpr double pi = std::numbers::pi;
  SpectrumReport report;
  report.mode = SpectrumMode::BoxCm;
  for (int n1 = 1; n1 <= n_max; ++n1) {
    for (int n2 = 1; n2 <= n_max; ++n2) {
      for (int n3 = 1; n3 <= n_max; ++n3) {
        const double squares = n1 * n1 + n2 * n2 + n3 * n3;
        report.levels.push_back({{n1, n2, n3}, pi * pi * squares / (2.0 * mass * side * side), 0});
      }
    }
  }
  sort_and_group(report.levels);
  report.metadata = {{"M", mass}, {"l", side}, {"n_max", n_max}, {"degeneracy_tolerance", kDegeneracyTolerance}};
  return report;
}

PotentialSpec PotentialSpec::box(double side, double mass, int grid) {
  if (!(side > 0)) throw InvalidInput("box side must be positive");
  return PotentialSpec{FlatWell{}, mass, -side / 2, side / 2, grid};
}

double PotentialSpec::potential(double x) const {
  return std::visit(
      [&](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Harmonic>) {
          return 0.5 * mass * k.omega * k.omega * x * x;
        } else if constexpr (std::is_same_v<K, FlatWell>) {
          return 0.0;
        } else if constexpr (std::is_same_v<K, CoulombRegularized>) {
          if (!(k.r_min > 0)) throw InvalidInput("regularization radius must be positive");
          return -k.kappa / std::max(std::abs(x), k.r_min);
        } else {
          if (k.x.size() < 2 || k.x.size() != k.v.size()) throw InvalidInput("tabulated potential needs >= 2 rows");
          if (x < k.x.front() || x > k.x.back()) {
            throw InvalidInput("x = " + std::to_string(x) + " lies outside the tabulated range");
          }
          auto it = std::upper_bound(k.x.begin(), k.x.end(), x);
          if (it == k.x.end()) return k.v.back();
          const auto i = static_cast<std::size_t>(it - k.x.begin());
          const double w = (x - k.x[i - 1]) / (k.x[i] - k.x[i - 1]);
          return (1 - w) * k.v[i - 1] + w * k.v[i];
        }
      },
      kind);
}

Tabulated read_tabulated(std::istream& in) {
  Tabulated t;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    std::istringstream fields(line);
    double x, v;
    if (!(fields >> x)) continue;  // blank line
    if (!(fields >> v)) throw InvalidInput("tabulated potential row " + std::to_string(row) + " needs two columns");
    if (!std::isfinite(x) || !std::isfinite(v)) {
      throw InvalidInput("tabulated potential row " + std::to_string(row) + " is not finite");
    }
    if (!t.x.empty() && x <= t.x.back()) {
      throw InvalidInput("tabulated positions must be strictly increasing (row " + std::to_string(row) + ")");
    }
    t.x.push_back(x);
    t.v.push_back(v);
  }
  if (t.x.size() < 2) throw InvalidInput("tabulated potential needs at least two rows");
  return t;
}

std::vector<double> fd_eigen_1d(const PotentialSpec& spec, int count) {
  const auto t = assemble(spec);
  if (count < 1 || count > static_cast<int>(t.diag.size())) {
    throw InvalidInput("eigenvalue count must lie in [1, grid-2]");
  }
  auto [lo, hi] = gershgorin(t);
  std::vector<double> values;
  values.reserve(count);
  for (int k = 0; k < count; ++k) {
    values.push_back(bisect(t, k, values.empty() ? lo : values.back() - 1e-9, hi));
  }
  return values;
}

std::vector<double> fd_eigenvector(const PotentialSpec& spec, int index) {
  const auto t = assemble(spec);
  const int n = static_cast<int>(t.diag.size());
  if (index < 0 || index >= n) throw InvalidInput("eigenvector index out of range");
  auto [lo, hi] = gershgorin(t);
  const double lambda = bisect(t, index, lo, hi);
  // Thomas solve of (T - lambda) x = b, with tiny pivots nudged off zero.
  std::vector<double> x(n, 1.0), c(n), d(n);
  const double floor = std::numeric_limits<double>::epsilon() * std::max(std::abs(hi), 1.0);
  for (int iter = 0; iter < 4; ++iter) {
    double pivot = t.diag[0] - lambda;
    if (std::abs(pivot) < floor) pivot = floor;
    c[0] = n > 1 ? t.off[0] / pivot : 0.0;
    d[0] = x[0] / pivot;
    for (int i = 1; i < n; ++i) {
      pivot = t.diag[i] - lambda - t.off[i - 1] * c[i - 1];
      if (std::abs(pivot) < floor) pivot = floor;
      c[i] = i + 1 < n ? t.off[i] / pivot : 0.0;
      d[i] = (x[i] - t.off[i - 1] * d[i - 1]) / pivot;
    }
    x[n - 1] = d[n - 1];
    for (int i = n - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
    double norm = 0;
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : x) v /= norm;
  }
  return x;
}

int count_nodes(std::span<const double> psi, double threshold) {
  double peak = 0;
  for (double v : psi) peak = std::max(peak, std::abs(v));
  int nodes = 0;
  int last_sign = 0;
  for (double v : psi) {
    if (std::abs(v) <= threshold * peak) continue;
    const int sign = v > 0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++nodes;
    last_sign = sign;
  }
  return nodes;
}

SpectrumReport internal_spectrum(const PotentialSpec& spec, int count) {
  SpectrumReport report;
  report.mode = SpectrumMode::Internal;
  const auto values = fd_eigen_1d(spec, count);
  for (int n = 0; n < count; ++n) report.levels.push_back({{n}, values[n], 0});
  sort_and_group(report.levels);
  report.metadata = {{"mass", spec.mass},
                     {"lower", spec.lower},
                     {"upper", spec.upper},
                     {"grid", spec.grid},
                     {"bisection_tolerance", 1e-10}};
  return report;
}

SpectrumReport composite_spurious(std::span<const double> internal, const SpectrumReport& cm, std::size_t count) {
  if (internal.empty()) throw InvalidInput("internal spectrum is empty");
  SpectrumReport report;
  report.mode = SpectrumMode::CompositeSpurious;
  for (std::size_t i = 0; i < internal.size(); ++i) {
    for (const auto& level : cm.levels) {
      std::vector<int> labels{static_cast<int>(i)};
      labels.insert(labels.end(), level.labels.begin(), level.labels.end());
      report.levels.push_back({std::move(labels), internal[i] + level.energy, 0});
    }
  }
  sort_and_group(report.levels);
  if (count != 0 && report.levels.size() > count) report.levels.resize(count);
  report.metadata = cm.metadata;
  report.metadata["internal_levels"] = static_cast<double>(internal.size());
  return report;
}

SpectrumReport composite_right(std::span<const double> internal, double offset) {
  if (internal.empty()) throw InvalidInput("internal spectrum is empty");
  if (!std::isfinite(offset)) throw InvalidInput("offset must be finite");
  SpectrumReport report;
  report.mode = SpectrumMode::CompositeRight;
  report.offset = offset;
  for (std::size_t i = 0; i < internal.size(); ++i) {
    report.levels.push_back({{static_cast<int>(i)}, offset + internal[i], 0});
  }
  sort_and_group(report.levels);
  report.metadata = {{"f", offset}, {"internal_levels", static_cast<double>(internal.size())}};
  return report;
}

}  // namespace rightham
