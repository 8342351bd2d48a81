#include "dyncubic/modspace.hpp"

#include <cstddef>
#include <utility>

#include "dyncubic/errors.hpp"

namespace dyncubic::modspace {

namespace {

// Dense univariate product with a linear factor c0 + c1 z, low-to-high order.
std::vector<FieldElem> times_linear(const std::vector<FieldElem>& p, const FieldElem& c0,
                                    const FieldElem& c1) {
  std::vector<FieldElem> out(p.size() + 1, FieldElem(0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] += p[i] * c0;
    out[i + 1] += p[i] * c1;
  }
  return out;
}

// Solves the n x (n+1) augmented system by Bareiss elimination: every interior
// division is exact, so no fraction accumulates beyond the entries themselves.
std::vector<FieldElem> solve_bareiss(std::vector<std::vector<FieldElem>> m) {
  const std::size_t n = m.size();
  FieldElem prev(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k].is_zero()) ++piv;
    if (piv == n) throw SingularMatrixError("coefficient matrix is singular");
    if (piv != k) std::swap(m[k], m[piv]);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j <= n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = FieldElem(0);
    }
    prev = m[k][k];
  }
  std::vector<FieldElem> x(n, FieldElem(0));
  for (std::size_t i = n; i-- > 0;) {
    FieldElem s = m[i][n];
    for (std::size_t j = i + 1; j < n; ++j) s -= m[i][j] * x[j];
    x[i] = s / m[i][i];
  }
  return x;
}

}  // namespace

FieldElem eval_map(const std::vector<FieldElem>& coeffs, const FieldElem& z) {
  FieldElem acc(0);
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
  return acc;
}

std::vector<FieldElem> conjugate_coeffs(const std::vector<FieldElem>& coeffs,
                                        const FieldElem& alpha, const FieldElem& beta) {
  if (alpha.is_zero()) throw ArgumentError("conjugating map must be invertible");
  if (coeffs.empty()) throw ArgumentError("empty coefficient vector");
  FieldElem inv = alpha.inverse();
  // alpha * f((z - beta) / alpha) + beta, expanded through powers of the
  // linear substitution.
  std::vector<FieldElem> out(coeffs.size(), FieldElem(0));
  std::vector<FieldElem> pw{FieldElem(1)};
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    for (std::size_t j = 0; j < pw.size(); ++j) out[j] += coeffs[i] * pw[j];
    if (i + 1 < coeffs.size()) pw = times_linear(pw, -beta * inv, inv);
  }
  for (FieldElem& c : out) c *= alpha;
  out[0] += beta;
  return out;
}

RecoveredMap recover_coeffs(const CycleSpec& spec) {
  if (spec.d < 2) throw ArgumentError("degree must be at least 2");
  std::size_t m = 0;
  for (unsigned n : spec.cycle_lengths) {
    if (n == 0) throw ArgumentError("cycle lengths must be positive");
    m += n;
  }
  if (spec.points.size() != m) throw ArgumentError("point count does not match cycle lengths");
  if (m > spec.d + 1) throw ArgumentError("more marked points than coefficients");
  if (spec.tail.size() != spec.d + 1 - m) throw ArgumentError("tail has the wrong length");
  if (!spec.tail.empty() && spec.tail.back().is_zero())
    throw DegreeError("leading coefficient must be nonzero");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (spec.points[i] == spec.points[j])
        throw SingularMatrixError("marked points must be pairwise distinct");

  // sigma rotates each block of consecutive points one step forward.
  std::vector<std::size_t> sigma(m);
  std::size_t base = 0;
  for (unsigned n : spec.cycle_lengths) {
    for (std::size_t k = 0; k < n; ++k) sigma[base + k] = base + (k + 1) % n;
    base += n;
  }

  RecoveredMap out;
  if (m > 0) {
    std::vector<std::vector<FieldElem>> sys(m, std::vector<FieldElem>(m + 1, FieldElem(0)));
    for (std::size_t i = 0; i < m; ++i) {
      FieldElem pw(1);
      for (std::size_t j = 0; j < m; ++j) {
        sys[i][j] = pw;
        pw *= spec.points[i];
      }
      FieldElem rhs = spec.points[sigma[i]];
      for (std::size_t j = m; j <= spec.d; ++j) {
        rhs -= spec.tail[j - m] * pw;
        pw *= spec.points[i];
      }
      sys[i][m] = rhs;
    }
    out.coeffs = solve_bareiss(std::move(sys));
  }
  out.coeffs.insert(out.coeffs.end(), spec.tail.begin(), spec.tail.end());
  if (out.coeffs.back().is_zero()) throw DegreeError("recovered map has degree below d");

  base = 0;
  for (unsigned n : spec.cycle_lengths) {
    FieldElem z = spec.points[base];
    for (std::size_t k = 1; k < n; ++k) {
      z = eval_map(out.coeffs, z);
      if (z == spec.points[base]) out.exact_periods = false;
    }
    base += n;
  }
  return out;
}

MarkedMap normalize_marked(const MarkedMap& m) {
  if (m.coeffs.size() != static_cast<std::size_t>(m.d) + 1 || m.d < 2)
    throw ArgumentError("coefficient vector does not match the degree");
  if (m.coeffs.back().is_zero()) throw DegreeError("leading coefficient must be nonzero");

  if (m.marked.size() >= 2) {
    FieldElem span = m.marked[1] - m.marked[0];
    if (span.is_zero()) throw NormalizationError("first two marked points coincide");
    FieldElem alpha = span.inverse();
    FieldElem beta = -m.marked[0] * alpha;
    MarkedMap out{m.d, conjugate_coeffs(m.coeffs, alpha, beta), {}};
    out.marked.reserve(m.marked.size());
    for (const FieldElem& z : m.marked) out.marked.push_back(alpha * z + beta);
    return out;
  }

  if (m.marked.size() == 1) {
    std::vector<FieldElem> shifted =
        conjugate_coeffs(m.coeffs, FieldElem(1), -m.marked[0]);
    if (shifted[2].is_zero())
      throw NormalizationError("quadratic coefficient vanishes at the marked point");
    return MarkedMap{m.d, conjugate_coeffs(shifted, shifted[2], FieldElem(0)), {FieldElem(0)}};
  }

  // No marked points: move the barycenter to 0, then its image to 1.
  FieldElem bary = -m.coeffs[m.d - 1] / (FieldElem(static_cast<long>(m.d)) * m.coeffs[m.d]);
  std::vector<FieldElem> centered = conjugate_coeffs(m.coeffs, FieldElem(1), -bary);
  if (centered[0].is_zero()) throw NormalizationError("barycenter is a fixed point");
  return MarkedMap{m.d, conjugate_coeffs(centered, centered[0].inverse(), FieldElem(0)), {}};
}

std::vector<FieldElem> moduli_invariants(const std::vector<FieldElem>& coeffs) {
  if (coeffs.size() < 4) throw ArgumentError("degree must be at least 3");
  std::size_t d = coeffs.size() - 1;
  if (!coeffs[d].is_one()) throw ArgumentError("map must be monic");
  if (!coeffs[d - 1].is_zero()) throw ArgumentError("barycenter must be at the origin");
  std::vector<FieldElem> out{coeffs[1]};
  FieldElem pw(1);
  for (std::size_t j = 2; j + 2 <= d; ++j) {
    pw *= coeffs[0];
    out.push_back(pw * coeffs[j]);
  }
  out.push_back(coeffs[0].pow(static_cast<long>(d) - 1));
  return out;
}

}  // namespace dyncubic::modspace
