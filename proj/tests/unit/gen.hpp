#pragma once
// Seeded random generators for property tests.

#include <random>

#include "lndkit/calculus.hpp"
#include "lndkit/poly_text.hpp"

namespace gen {

using namespace lndkit;

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng); }
  Rational small_rational(int range = 3) {
    int num = uniform(-range, range);
    int den = uniform(1, 2);
    return make_rational(num, den);
  }
  Rational nonzero_rational(int range = 3) {
    Rational r;
    do r = small_rational(range);
    while (r == 0);
    return r;
  }
};

inline UPoly x_poly(Rng& r, int max_deg, int range = 3) {
  std::vector<Rational> c;
  for (int i = 0; i <= max_deg; ++i) c.push_back(r.small_rational(range));
  return UPoly(c);
}

// Polynomial in x, optionally over a unit denominator.
inline BaseElem base_elem(Rng& r, int max_deg = 2, bool with_den = false) {
  UPoly num = x_poly(r, max_deg);
  if (!with_den) return BaseElem(num);
  UPoly den = x_poly(r, 1);
  if (den.coeff(0) == 0) den += UPoly(1);
  return BaseElem(num, den);
}

// Random polynomial in `vars` with total degree <= max_deg; coefficients are
// polynomials in x of degree <= x_deg.
inline Poly poly(Rng& r, const VarList& vars, int max_deg, int x_deg = 1, double density = 0.5,
                 bool with_den = false) {
  Poly p(vars);
  std::vector<Monomial> monos{Monomial(vars.size(), 0)};
  for (int d = 1; d <= max_deg; ++d) {
    std::vector<Monomial> next;
    for (const auto& m : monos) {
      int total = 0;
      for (int e : m) total += e;
      if (total != d - 1) continue;
      for (size_t i = 0; i < vars.size(); ++i) {
        Monomial nm = m;
        nm[i] += 1;
        next.push_back(nm);
      }
    }
    monos.insert(monos.end(), next.begin(), next.end());
  }
  for (const auto& m : monos)
    if (r.coin(density)) p.add_term(m, base_elem(r, x_deg, with_den && r.coin(0.3)));
  return p;
}

inline RPoly rpoly(Rng& r, const VarList& vars, int max_deg, double density = 0.5) {
  return residue_mod_x(poly(r, vars, max_deg, 0, density));
}

}  // namespace gen

#include "doctest.h"

namespace doctest {
template <>
struct StringMaker<lndkit::Poly> {
  static String convert(const lndkit::Poly& p) { return lndkit::format(p).c_str(); }
};
template <>
struct StringMaker<lndkit::RPoly> {
  static String convert(const lndkit::RPoly& p) { return lndkit::format(p).c_str(); }
};
template <>
struct StringMaker<lndkit::BaseElem> {
  static String convert(const lndkit::BaseElem& p) { return lndkit::format(p).c_str(); }
};
}  // namespace doctest
