#include <algorithm>
#include <map>
#include <vector>

#include "rightham/errors.hpp"
#include "rightham/phase_poly.hpp"

namespace rightham {

namespace {

// A bidifferential operator sum_c c * d^left(A) * d^right(B). The key holds
// the left derivative orders followed by the right derivative orders.
using BiDifferential = std::map<std::vector<unsigned>, Rational>;

BiDifferential poisson_operator(const PhaseContext& ctx) {
  const std::size_t n = ctx.variable_count();
  BiDifferential op;
  for (int i = 0; i < ctx.dof(); ++i) {
    std::vector<unsigned> qp(2 * n, 0), pq(2 * n, 0);
    qp[ctx.q(i)] = 1;
    qp[n + ctx.p(i)] = 1;
    pq[ctx.p(i)] = 1;
    pq[n + ctx.q(i)] = 1;
    op[qp] += 1;
    op[pq] -= 1;
  }
  return op;
}

BiDifferential compose(const BiDifferential& a, const BiDifferential& b) {
  BiDifferential out;
  for (const auto& [ka, ca] : a) {
    for (const auto& [kb, cb] : b) {
      std::vector<unsigned> key(ka.size());
      for (std::size_t i = 0; i < key.size(); ++i) key[i] = ka[i] + kb[i];
      out[key] += ca * cb;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

PhasePoly apply(const BiDifferential& op, const PhasePoly& a, const PhasePoly& b) {
  const std::size_t n = a.context()->variable_count();
  PhasePoly result(a.context());
  for (const auto& [key, c] : op) {
    std::span<const unsigned> left(key.data(), n), right(key.data() + n, n);
    auto da = derivative(a, left);
    if (da.is_zero()) continue;
    auto db = derivative(b, right);
    if (db.is_zero()) continue;
    result += c * (da * db);
  }
  return result;
}

}  // namespace

PhasePoly moyal_bracket(const PhasePoly& a, const PhasePoly& b) {
  require_same_context(a, b);
  const auto& ctx = *a.context();
  const Rational half_hbar = ctx.hbar() / 2;
  const unsigned top = std::min(a.degree(), b.degree());

  const BiDifferential pi = poisson_operator(ctx);
  BiDifferential power = pi;
  PhasePoly result(a.context());
  Rational factorial = 1;
  for (unsigned k = 1; k <= top; ++k) {
    if (k > 1) power = compose(power, pi);
    factorial *= k;
    if (k % 2 == 0) continue;
    if (k > 1 && half_hbar == 0) break;
    Rational weight = rightham::pow(half_hbar, k - 1) / factorial;
    if ((k / 2) % 2 == 1) weight = -weight;
    result += weight * apply(power, a, b);
  }
  return result;
}

}  // namespace rightham
