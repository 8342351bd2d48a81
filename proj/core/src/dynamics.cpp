#include "dyncubic/dynamics.hpp"

#include <mutex>

#include "dyncubic/errors.hpp"

namespace dyncubic::dynamics {

using algebra::eval_poly;

RationalFunction CubicMap::apply(const RationalFunction& z) const {
  return z.pow(3) + a * z + b;
}

RationalFunction CubicMap::derivative_at(const RationalFunction& z) const {
  return RationalFunction(3) * z.pow(2) + a;
}

namespace {

const std::vector<std::string> kFamilyVars = {"a", "b", "z"};

// f(z) = z^3 + a z + b over Q in the canonical variable order.
MultiPoly family_poly() {
  return algebra::parse_poly("z^3 + a*z + b", kFamilyVars);
}

// Iterates over Q are cached; they are reused heavily by the dynatomic and
// multiplier constructions.
const MultiPoly& cached_iterate(unsigned N) {
  static std::mutex mu;
  static std::map<unsigned, MultiPoly> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (cache.empty()) cache.emplace(1u, family_poly());
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  unsigned k = cache.rbegin()->first;
  MultiPoly acc = cache.rbegin()->second;
  const MultiPoly f = family_poly();
  while (k < N) {
    acc = acc.substitute("z", f);
    ++k;
    cache.emplace(k, acc);
  }
  return cache.at(N);
}

int moebius(unsigned n) {
  int mu = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

MultiPoly with_field(MultiPoly p, const FieldPtr& field) {
  if (!field) return p;
  return p.aligned(p.vars(), field);
}

std::size_t eliminate_rank(std::vector<std::vector<RationalFunction>>& m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][col].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[rank], m[piv]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][col].is_zero()) continue;
      RationalFunction factor = m[r][col] / m[rank][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= factor * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

RationalFunction eliminate_det(std::vector<std::vector<RationalFunction>> m) {
  const std::size_t n = m.size();
  RationalFunction det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) return RationalFunction(0);
    if (piv != col) {
      std::swap(m[col], m[piv]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      RationalFunction factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

}  // namespace

MultiPoly iterate_poly(unsigned N, const FieldPtr& field) {
  if (N == 0) throw ArgumentError("iterate_poly: N must be positive");
  return with_field(cached_iterate(N), field);
}

MultiPoly dynatomic(unsigned N, const FieldPtr& field) {
  if (N == 0) throw ArgumentError("dynatomic: N must be positive");
  const MultiPoly z = MultiPoly::variable("z", kFamilyVars);
  MultiPoly num = MultiPoly::constant(FieldElem(1), kFamilyVars);
  std::vector<unsigned> negative;
  for (unsigned d = 1; d <= N; ++d) {
    if (N % d) continue;
    int mu = moebius(N / d);
    if (mu == 1) num *= cached_iterate(d) - z;
    if (mu == -1) negative.push_back(d);
  }
  for (unsigned d : negative) num = num.exact_div(cached_iterate(d) - z);
  return with_field(num, field);
}

MultiPoly multiplier_poly(unsigned N, const FieldPtr& field) {
  if (N == 0) throw ArgumentError("multiplier_poly: N must be positive");
  return with_field(cached_iterate(N).derivative("z"), field);
}

void CycleWitness::validate(const CubicMap& f) const {
  const std::size_t n = points.size();
  if (n == 0) throw WitnessError("cycle witness is empty");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (points[i] == points[j])
        throw WitnessError("cycle witness has repeated points");
  for (std::size_t i = 0; i < n; ++i)
    if (f.apply(points[i]) != points[(i + 1) % n])
      throw WitnessError("cycle witness is not forward-invariant");
}

RationalFunction cycle_multiplier(const CubicMap& f, const CycleWitness& w) {
  w.validate(f);
  RationalFunction m(1);
  for (const auto& p : w.points) m *= f.derivative_at(p);
  return m;
}

SectionReport verify_section(const SectionTriple& t, const std::string& uniformizer) {
  std::map<std::string, RationalFunction> point = {
      {"a", t.a}, {"b", t.b}, {"z", t.z1}};
  SectionReport report;
  report.phi_zero = eval_poly(dynatomic(t.N), point).is_zero();
  const RationalFunction w(MultiPoly::variable(uniformizer));
  report.multiplier_ok = eval_poly(multiplier_poly(t.N), point) == w.pow(t.m);
  return report;
}

JacobianReport jacobian_check(const std::vector<MultiPoly>& system,
                              const std::vector<std::string>& unknowns,
                              const std::map<std::string, RationalFunction>& point,
                              const std::optional<CyclicShape>& cyclic) {
  if (system.empty()) throw ArgumentError("jacobian_check: empty system");
  for (const auto& eq : system)
    if (!eval_poly(eq, point).is_zero())
      throw WitnessError("jacobian_check: point does not satisfy the system");

  std::vector<std::vector<RationalFunction>> jac(system.size());
  for (std::size_t i = 0; i < system.size(); ++i) {
    jac[i].reserve(unknowns.size());
    for (const auto& var : unknowns)
      jac[i].push_back(eval_poly(system[i].derivative(var), point));
  }

  JacobianReport report;
  if (cyclic) {
    const std::size_t n = cyclic->cycle_vars.size();
    if (n > system.size() || n > unknowns.size())
      throw ArgumentError("jacobian_check: cyclic block larger than the system");
    std::vector<std::vector<RationalFunction>> block(n);
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& var : cyclic->cycle_vars) {
        std::size_t j = 0;
        while (j < unknowns.size() && unknowns[j] != var) ++j;
        if (j == unknowns.size())
          throw ArgumentError("jacobian_check: cyclic variable not among unknowns");
        block[i].push_back(jac[i][j]);
      }
    report.determinant_witness = eliminate_det(std::move(block));
  }

  report.rank = eliminate_rank(jac);
  report.rank_full = report.rank == system.size();
  return report;
}

std::vector<MultiPoly> irreducibility_witness_system(unsigned N) {
  if (N == 0) throw ArgumentError("irreducibility_witness_system: N must be positive");
  std::vector<std::string> vars = {"u", "s"};
  for (unsigned i = 1; i <= N; ++i) vars.push_back("z" + std::to_string(i));
  vars.push_back("l");

  const MultiPoly u = MultiPoly::variable("u", vars);
  const MultiPoly s = MultiPoly::variable("s", vars);
  const MultiPoly l = MultiPoly::variable("l", vars);
  auto zi = [&](unsigned i) {
    return MultiPoly::variable("z" + std::to_string(i), vars);
  };

  std::vector<MultiPoly> system;
  const MultiPoly two = MultiPoly::constant(FieldElem(2), vars);
  for (unsigned i = 1; i <= N; ++i) {
    unsigned next = i == N ? 1 : i + 1;
    system.push_back(zi(i).pow(3) - MultiPoly::constant(FieldElem(3), vars) * u.pow(2) * zi(i) +
                     two - zi(next) * s.pow(2));
  }
  MultiPoly prod = MultiPoly::constant(FieldElem(1), vars);
  for (unsigned i = 1; i <= N; ++i) prod *= zi(i).pow(2) - u.pow(2);
  algebra::Integer three_n = 1;
  for (unsigned i = 0; i < N; ++i) three_n *= 3;
  system.push_back(MultiPoly::constant(FieldElem(algebra::Rational(three_n)), vars) * prod -
                   l * s.pow(2 * N));
  return system;
}

std::map<std::string, RationalFunction> irreducibility_witness_point(unsigned N) {
  if (N == 0) throw ArgumentError("irreducibility_witness_point: N must be positive");
  std::map<std::string, RationalFunction> point = {
      {"u", RationalFunction(1)},
      {"s", RationalFunction(0)},
      {"l", RationalFunction(MultiPoly::variable("l"))}};
  point.emplace("z1", RationalFunction(1));
  for (unsigned i = 2; i <= N; ++i)
    point.emplace("z" + std::to_string(i), RationalFunction(-2));
  return point;
}

}  // namespace dyncubic::dynamics
