#pragma once

#include <string>
#include <vector>

#include "dyncubic/curves.hpp"

namespace dyncubic::reduction {

// A place of the rational function field k(t): either a monic irreducible
// polynomial in t or the degree valuation at t = infinity.
class Place {
 public:
  Place() = default;  // unset; build real places with the factories below
  static Place finite(algebra::MultiPoly poly);
  static Place at_infinity(std::string var);

  bool is_infinite() const { return infinite_; }
  // Defining polynomial; ArgumentError for the infinite place.
  const algebra::MultiPoly& polynomial() const;
  const std::string& var() const { return var_; }
  // Residue field degree over the constant field (1 for the infinite place).
  long degree() const { return degree_; }

  bool operator==(const Place& o) const;
  bool operator!=(const Place& o) const { return !(*this == o); }
  std::string to_string() const;

 private:
  bool infinite_ = false;
  std::string var_;
  long degree_ = 1;
  algebra::MultiPoly poly_;
};

enum class KodairaType { I0, In, II, III, IV, I0Star, InStar, IVStar, IIIStar, IIStar };

// Reduction data of a minimal model at one place: Kodaira type, index n for the
// I_n / I_n* series, component count m_t, conductor exponent f_t and Euler number
// e_t of the fiber.
struct LocalData {
  Place place;
  KodairaType kodaira = KodairaType::I0;
  long n_t = 0;
  long m_t = 1;
  long f_t = 0;
  long e_t = 0;

  std::string type_symbol() const;  // "I0", "I4", "I0*", "III*", ...
  bool is_good() const { return kodaira == KodairaType::I0; }
};

// Kodaira classification of the fiber at v. The curve is minimalized at the place
// first (valuation rescaling), so non-integral models and the infinite place are
// handled uniformly. The coefficients must be rational functions of the place
// variable alone.
LocalData tate_local(const curves::WeierstrassCurve& E, const Place& v);

// Arithmetic genus plus the local data of every bad fiber, as consumed by the
// height pairing.
struct HeightContext {
  algebra::Rational chi;
  std::vector<LocalData> local_data;
};

// Runs tate_local at each listed place and packages chi = (sum of Euler
// numbers)/12. The list must contain the infinite place and account for every
// zero of the discriminant; duplicates, gaps, or a model that is not minimal at
// some finite place raise ArgumentError.
HeightContext height_context(const curves::WeierstrassCurve& E,
                             const std::vector<Place>& bad_places);

// gamma = sum_{t != 0, infinity} (f_t - e_t/6) - (n_0 + n_infinity)/6, the
// invariant controlling rank growth under base change t -> t^(1/n). The data
// must include the infinite place.
algebra::Rational fastenberg_gamma(const std::vector<LocalData>& data);

// Divisor-sum rank bound: sum of phi(d) over d | n whose largest prime-power
// divisor kappa(d) is below 2/(1-gamma). Requires gamma < 1. When
// subtract_fixed_space is set, the d = 1 eigenspace is removed (the fixed space
// of the base-change automorphism never contributes).
long fastenberg_bound(long n, const algebra::Rational& gamma, bool subtract_fixed_space);

// rank = ns_rank - 2 - sum (m_t - 1), weighted by residue degree. A negative
// value is clamped to 0 and reported through the optional saturation flag.
long shioda_rank(long ns_rank, const std::vector<LocalData>& data,
                 bool* saturated = nullptr);

// Shioda height pairing of two sections: <P,P> = 2 chi + 2 (P.O) - sum of local
// component contributions; mixed pairs are obtained by polarization from the
// self-pairings of P, Q and P+Q. Torsion points pair to zero with everything.
algebra::Rational height_pairing(const curves::WeierstrassCurve& E,
                                 const curves::CurvePoint& p,
                                 const curves::CurvePoint& q,
                                 const HeightContext& ctx);

}  // namespace dyncubic::reduction
