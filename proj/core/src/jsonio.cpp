#include "dyncubic/jsonio.hpp"

#include "json.hpp"

namespace dyncubic::algebra {

namespace {

using nlohmann::json;

json rational_to_json(const Rational& r) {
  return json::array({r.get_num().get_str(), r.get_den().get_str()});
}

Rational rational_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw ArgumentError("rational coefficient must be a [num, den] pair");
  Rational r = rat_from_string(j[0].get<std::string>() + "/" + j[1].get<std::string>());
  return r;
}

json coeff_to_json(const FieldElem& c) {
  if (!c.field()) return rational_to_json(c.to_rational());
  json out = json::array();
  for (const auto& x : c.coords()) out.push_back(rational_to_json(x));
  return out;
}

FieldElem coeff_from_json(const json& j, const FieldPtr& field) {
  if (!field) return FieldElem(rational_from_json(j));
  std::vector<Rational> coords;
  coords.reserve(j.size());
  for (const auto& x : j) coords.push_back(rational_from_json(x));
  if (coords.size() != field->degree())
    throw ArgumentError("coefficient vector length does not match field degree");
  return FieldElem(field, std::move(coords));
}

json poly_to_obj(const MultiPoly& p) {
  json out;
  if (p.field()) {
    json mp = json::array();
    for (const auto& c : p.field()->min_poly()) mp.push_back(rational_to_json(c));
    out["field"] = json{{"min_poly", mp}, {"gen", p.field()->gen_name()}};
  } else {
    out["field"] = nullptr;
  }
  out["vars"] = p.vars();
  json terms = json::array();
  for (const auto& t : p.terms()) {
    terms.push_back(json{{"exp", t.exp}, {"coeff", coeff_to_json(t.coeff)}});
  }
  out["terms"] = std::move(terms);
  return out;
}

MultiPoly poly_from_obj(const json& j) {
  FieldPtr field;
  if (j.contains("field") && !j["field"].is_null()) {
    std::vector<Rational> mp;
    for (const auto& c : j["field"]["min_poly"]) mp.push_back(rational_from_json(c));
    std::string gen = j["field"].value("gen", std::string("g"));
    field = make_field(mp, gen);
  }
  std::vector<std::string> vars = j["vars"].get<std::vector<std::string>>();
  std::vector<MultiPoly::Term> terms;
  for (const auto& t : j["terms"]) {
    MultiPoly::Term term;
    term.exp = t["exp"].get<std::vector<unsigned>>();
    term.coeff = coeff_from_json(t["coeff"], field);
    terms.push_back(std::move(term));
  }
  return MultiPoly::from_terms(std::move(vars), std::move(terms), field);
}

std::string dump(const json& j, int indent) { return indent < 0 ? j.dump() : j.dump(indent); }

}  // namespace

std::string poly_to_json(const MultiPoly& p, int indent) { return dump(poly_to_obj(p), indent); }

MultiPoly poly_from_json(const std::string& text) {
  return poly_from_obj(json::parse(text));
}

std::string ratfunc_to_json(const RationalFunction& f, int indent) {
  json out{{"num", poly_to_obj(f.num())}, {"den", poly_to_obj(f.den())}};
  return dump(out, indent);
}

RationalFunction ratfunc_from_json(const std::string& text) {
  json j = json::parse(text);
  return RationalFunction(poly_from_obj(j["num"]), poly_from_obj(j["den"]));
}

}  // namespace dyncubic::algebra
