#include <string>
#include <vector>

#include "doctest.h"
#include "dyncubic/dynamics.hpp"
#include "dyncubic/errors.hpp"

using namespace dyncubic;
using namespace dyncubic::algebra;
using namespace dyncubic::dynamics;

namespace {

const std::vector<std::string> kVars = {"a", "b", "z"};

MultiPoly family() { return parse_poly("z^3 + a*z + b", kVars); }

// Independent oracle: f^N by repeated composition the naive way, cubing the
// previous iterate directly.
MultiPoly naive_iterate(unsigned N) {
  MultiPoly f = family();
  MultiPoly acc = f;
  const MultiPoly a = MultiPoly::variable("a", kVars);
  const MultiPoly b = MultiPoly::variable("b", kVars);
  for (unsigned i = 1; i < N; ++i) acc = acc.pow(3) + a * acc + b;
  return acc;
}

// Independent oracle: d(f^N)/dz as the chain-rule product of f'(f^i(z)).
MultiPoly chain_rule_multiplier(unsigned N) {
  const MultiPoly a = MultiPoly::variable("a", kVars);
  const MultiPoly b = MultiPoly::variable("b", kVars);
  const MultiPoly three = MultiPoly::constant(FieldElem(3), kVars);
  MultiPoly prod = MultiPoly::constant(FieldElem(1), kVars);
  MultiPoly point = MultiPoly::variable("z", kVars);
  for (unsigned i = 0; i < N; ++i) {
    prod *= three * point.pow(2) + a;
    point = point.pow(3) + a * point + b;
  }
  return prod;
}

FieldPtr zeta24_field() {
  // minimal polynomial X^8 - X^4 + 1 of a primitive 24th root of unity
  return make_field({1, 0, 0, 0, -1, 0, 0, 0, 1}, "z24");
}

FieldElem sqrt_minus_two(const FieldPtr& f) {
  return FieldElem::gen_pow(f, 3) + FieldElem::gen_pow(f, 5) - FieldElem::gen_pow(f, 1);
}

}  // namespace

TEST_CASE("first iterates and their fixed-point polynomials") {
  CHECK(iterate_poly(1) == family());
  CHECK(iterate_poly(2) == naive_iterate(2));
  CHECK(iterate_poly(3) == naive_iterate(3));
  CHECK_THROWS_AS(iterate_poly(0), ArgumentError);

  CHECK(dynatomic(1) == parse_poly("z^3 + (a-1)*z + b", kVars));
  CHECK_THROWS_AS(dynatomic(0), ArgumentError);
}

TEST_CASE("period-2 dynatomic polynomial matches its known expansion") {
  const MultiPoly expected = parse_poly(
      "a^2*z^2 + 2*z^4*a + a*z^2 + 2*a*z*b + a + z^6 + z^4 + 2*z^3*b + z^2 + b*z + b^2 + 1",
      kVars);
  const MultiPoly phi2 = dynatomic(2);
  CHECK(phi2 == expected);
  CHECK(phi2.term_count() == 12);
  CHECK(phi2.degree("z") == 6);
}

TEST_CASE("second multiplier polynomial matches its known expansion") {
  const MultiPoly expected = parse_poly(
      "9*z^8 + 21*z^6*a + 15*z^4*a^2 + 18*z^5*b + 24*z^3*b*a + 3*a^3*z^2 + 6*a^2*z*b"
      " + 9*b^2*z^2 + 3*b^2*a + 3*a*z^2 + a^2",
      kVars);
  CHECK(multiplier_poly(2) == expected);
}

TEST_CASE("multiplier polynomials obey the chain rule") {
  for (unsigned n = 1; n <= 4; ++n) CHECK(multiplier_poly(n) == chain_rule_multiplier(n));
}

TEST_CASE("dynatomic factors multiply back to f^N - z") {
  const MultiPoly z = MultiPoly::variable("z", kVars);
  for (unsigned n = 1; n <= 5; ++n) {
    MultiPoly prod = MultiPoly::constant(FieldElem(1), kVars);
    for (unsigned d = 1; d <= n; ++d)
      if (n % d == 0) prod *= dynatomic(d);
    CHECK(prod == iterate_poly(n) - z);
  }
  CHECK(dynatomic(3).degree("z") == 24);
  CHECK(dynatomic(4).degree("z") == 72);
  CHECK(dynatomic(5).degree("z") == 240);
}

TEST_CASE("fixed-point family with marked root -3s") {
  const std::vector<std::string> vars = {"s", "l", "z"};
  const MultiPoly a = parse_poly("-27*s^2 + l", vars);
  const MultiPoly b = parse_poly("-54*s^3 - 3*s + 3*l*s", vars);
  const MultiPoly phi1 = dynatomic(1).substitute("a", a).substitute("b", b);
  const MultiPoly factored =
      parse_poly("(z + 3*s)*(z^2 - 3*z*s - 18*s^2 - 1 + l)", vars);
  CHECK(phi1 == factored);

  CubicMap f{RationalFunction(a), RationalFunction(b)};
  const RationalFunction root(parse_poly("-3*s", vars));
  CHECK(f.apply(root) == root);
  CHECK(f.derivative_at(root) == RationalFunction(MultiPoly::variable("l", vars)));
}

TEST_CASE("cycle witnesses validate and rotate") {
  const FieldPtr F = zeta24_field();
  const FieldElem r2 = sqrt_minus_two(F);
  const FieldElem i = FieldElem::gen_pow(F, 6);
  CHECK(r2 * r2 == FieldElem(-2).promoted(F));
  CHECK(i * i == FieldElem(-1).promoted(F));

  const std::vector<std::string> w = {"w"};
  const MultiPoly wp = MultiPoly::variable("w", w, F);
  const MultiPoly nine = MultiPoly::constant(FieldElem(9).promoted(F), w);
  const MultiPoly a = (wp * wp - nine).scaled(FieldElem(Rational(1, 6)).promoted(F));
  const MultiPoly b = ((wp * wp - nine) * wp).scaled(r2 * FieldElem(Rational(1, 54)).promoted(F));
  const MultiPoly z1p =
      (wp + MultiPoly::constant(i * FieldElem(3), w)).scaled(-r2 * FieldElem(Rational(1, 6)).promoted(F));

  CubicMap f{RationalFunction(a), RationalFunction(b)};
  const RationalFunction z1(z1p);
  const RationalFunction z2 = f.apply(z1);
  CHECK(z2 != z1);
  CHECK(f.apply(z2) == z1);

  CycleWitness cyc{{z1, z2}};
  const RationalFunction wsq(wp * wp);
  CHECK(cycle_multiplier(f, cyc) == wsq);
  CycleWitness rotated{{z2, z1}};
  CHECK(cycle_multiplier(f, rotated) == wsq);

  CycleWitness repeated{{z1, z1}};
  CHECK_THROWS_AS(repeated.validate(f), WitnessError);
  CycleWitness broken{{z1, z2 + RationalFunction(1)}};
  CHECK_THROWS_AS(broken.validate(f), WitnessError);

  SectionTriple triple{RationalFunction(a), RationalFunction(b), z1, 2, 2};
  const SectionReport report = verify_section(triple);
  CHECK(report.phi_zero);
  CHECK(report.multiplier_ok);
  CHECK(report.ok());

  SectionTriple perturbed = triple;
  perturbed.b += RationalFunction(1);
  CHECK_FALSE(verify_section(perturbed).phi_zero);
}

TEST_CASE("fixed point of z^3 + l z at the origin") {
  const MultiPoly l = MultiPoly::variable("l");
  CubicMap f{RationalFunction(l), RationalFunction(0)};
  CycleWitness origin{{RationalFunction(0)}};
  CHECK(cycle_multiplier(f, origin) == RationalFunction(l));
}

TEST_CASE("jacobian of the marked-cycle witness system has full rank") {
  for (unsigned n = 1; n <= 3; ++n) {
    const auto system = irreducibility_witness_system(n);
    const auto point = irreducibility_witness_point(n);
    REQUIRE(system.size() == n + 1);

    std::vector<std::string> unknowns;
    for (unsigned i = 1; i <= n; ++i) unknowns.push_back("z" + std::to_string(i));
    unknowns.push_back("u");

    const auto report = jacobian_check(system, unknowns, point);
    CHECK(report.rank == n + 1);
    CHECK(report.rank_full);
  }
}

TEST_CASE("witness jacobian entries match the closed forms") {
  const unsigned n = 3;
  const auto system = irreducibility_witness_system(n);
  const auto point = irreducibility_witness_point(n);
  auto entry = [&](unsigned row, const std::string& var) {
    return eval_poly(system[row].derivative(var), point);
  };
  CHECK(entry(0, "u") == RationalFunction(-6));
  CHECK(entry(1, "u") == RationalFunction(12));
  CHECK(entry(2, "u") == RationalFunction(12));
  CHECK(entry(1, "z2") == RationalFunction(9));
  CHECK(entry(2, "z3") == RationalFunction(9));
  CHECK(entry(0, "z1").is_zero());
  CHECK(entry(0, "z2").is_zero());  // s = 0 kills the off-cycle slot
  CHECK(entry(n, "z1") == RationalFunction(6 * 81));
  CHECK(entry(n, "u") == RationalFunction(-6 * 81));
  CHECK(entry(n, "z2").is_zero());
  CHECK(entry(n, "l").is_zero());
}

TEST_CASE("jacobian check rejects points off the variety") {
  auto system = irreducibility_witness_system(2);
  auto point = irreducibility_witness_point(2);
  point["u"] = RationalFunction(5);
  CHECK_THROWS_AS(jacobian_check(system, {"z1", "z2", "u"}, point), WitnessError);
}

TEST_CASE("cyclic block determinant equals the multiplier defect") {
  const std::vector<std::string> vars = {"a", "b", "m", "x1", "x2", "x3"};
  const MultiPoly a = MultiPoly::variable("a", vars);
  const MultiPoly b = MultiPoly::variable("b", vars);
  const MultiPoly m = MultiPoly::variable("m", vars);
  auto x = [&](unsigned i) { return MultiPoly::variable("x" + std::to_string(i), vars); };
  auto P = [&](const MultiPoly& t) { return t.pow(3) + a * t + b; };

  // Forward orbit of an arbitrary seed, closed up by solving for the twist m.
  const RationalFunction wv(MultiPoly::variable("w"));
  CubicMap f{wv, wv + RationalFunction(1)};
  const RationalFunction s1 = wv * wv;
  const RationalFunction s2 = f.apply(s1);
  const RationalFunction s3 = f.apply(s2);
  const RationalFunction mu = f.apply(s3) / s1;

  const std::vector<MultiPoly> system = {P(x(1)) - x(2), P(x(2)) - x(3),
                                         P(x(3)) - m * x(1)};
  const std::map<std::string, RationalFunction> point = {
      {"a", f.a}, {"b", f.b}, {"m", mu}, {"x1", s1}, {"x2", s2}, {"x3", s3}};

  CyclicShape shape{{"x1", "x2", "x3"}, mu};
  const auto report = jacobian_check(system, {"x1", "x2", "x3"}, point, shape);
  REQUIRE(report.determinant_witness.has_value());

  const RationalFunction lambda =
      f.derivative_at(s1) * f.derivative_at(s2) * f.derivative_at(s3);
  CHECK(*report.determinant_witness == lambda - mu);
}

TEST_CASE("cyclic determinant vanishes exactly at multiplier one") {
  const std::vector<std::string> vars = {"a", "x1"};
  const MultiPoly a = MultiPoly::variable("a", vars);
  const MultiPoly x1 = MultiPoly::variable("x1", vars);
  const std::vector<MultiPoly> system = {x1.pow(3) + a * x1 - x1};

  const RationalFunction lv(MultiPoly::variable("l"));
  std::map<std::string, RationalFunction> point = {{"a", lv}, {"x1", RationalFunction(0)}};
  CyclicShape shape{{"x1"}, RationalFunction(1)};

  auto report = jacobian_check(system, {"x1"}, point, shape);
  REQUIRE(report.determinant_witness.has_value());
  CHECK(*report.determinant_witness == lv - RationalFunction(1));
  CHECK(report.rank_full);

  point["a"] = RationalFunction(1);
  report = jacobian_check(system, {"x1"}, point, shape);
  CHECK(report.determinant_witness->is_zero());
  CHECK_FALSE(report.rank_full);
}
