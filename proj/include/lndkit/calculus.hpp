#pragma once

#include <map>
#include <string>

#include "lndkit/mpoly.hpp"

namespace lndkit {

template <class C>
MPoly<C> differentiate(const MPoly<C>& p, const std::string& var) {
  int i = p.index_of(var);
  if (i < 0) throw VariableError("unknown variable '" + var + "'");
  MPoly<C> out(p.vars());
  for (const auto& [m, c] : p.terms()) {
    if (m[i] == 0) continue;
    Monomial nm = m;
    nm[i] -= 1;
    out.add_term(nm, C(Rational(m[i])) * c);
  }
  return out;
}

// Antiderivative in `var` with zero constant term in `var`.
template <class C>
MPoly<C> integrate_from_zero(const MPoly<C>& p, const std::string& var) {
  int i = p.index_of(var);
  if (i < 0) throw VariableError("unknown variable '" + var + "'");
  MPoly<C> out(p.vars());
  for (const auto& [m, c] : p.terms()) {
    Monomial nm = m;
    nm[i] += 1;
    out.add_term(nm, C(make_rational(1, nm[i])) * c);
  }
  return out;
}

template <class C>
using SubstMap = std::map<std::string, MPoly<C>>;

// Ring homomorphism sending each mapped variable to its image; unmapped
// variables stay.  The result lives on the unmapped variables followed by
// the image variables.
template <class C>
MPoly<C> substitute(const MPoly<C>& p, const SubstMap<C>& images) {
  VarList kept;
  for (const auto& v : p.vars())
    if (!images.count(v)) kept.push_back(v);
  VarList target = kept;
  for (const auto& [v, img] : images) target = MPoly<C>::union_vars(target, img.vars());
  const size_t nv = p.vars().size();
  std::vector<const MPoly<C>*> img(nv, nullptr);
  for (size_t i = 0; i < nv; ++i) {
    auto it = images.find(p.vars()[i]);
    if (it != images.end()) img[i] = &it->second;
  }
  // powers[i][e] caches img[i]^e
  std::vector<std::vector<MPoly<C>>> powers(nv);
  auto power_of = [&](size_t i, int e) -> const MPoly<C>& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(MPoly<C>::constant(target, C(1)));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * img[i]->with_vars(target));
    return cache[e];
  };
  MPoly<C> out(target);
  for (const auto& [m, c] : p.terms()) {
    Monomial base(target.size(), 0);
    for (size_t i = 0; i < nv; ++i)
      if (!img[i] && m[i]) {
        auto pos = std::find(target.begin(), target.end(), p.vars()[i]) - target.begin();
        base[pos] = m[i];
      }
    MPoly<C> t = MPoly<C>::term(target, base, c);
    for (size_t i = 0; i < nv; ++i)
      if (img[i] && m[i]) t = t * power_of(i, m[i]);
    out += t;
  }
  return out;
}

// Remainder of f modulo g, where g is monic in `var` over the coefficient ring.
template <class C>
MPoly<C> reduce_monic(const MPoly<C>& f, const MPoly<C>& g, const std::string& var) {
  int d = g.degree(var);
  if (d < 0) throw ArithmeticError("reduction by zero");
  auto gc = g.coeffs_in(var);
  if (!gc[d].is_constant() || gc[d].constant_term() != C(1))
    throw PreconditionError("modulus not monic in " + var);
  VarList vars = MPoly<C>::union_vars(f.vars(), g.vars());
  MPoly<C> r = f.with_vars(vars);
  MPoly<C> tail = (g - MPoly<C>::variable(vars, var, d)).with_vars(vars);  // var^d = -tail
  int iv = r.index_of(var);
  for (;;) {
    int e = r.degree(var);
    if (e < d) return r;
    MPoly<C> high(vars), low(vars);
    for (const auto& [m, c] : r.terms()) {
      if (m[iv] >= d) {
        Monomial nm = m;
        nm[iv] -= d;
        high.add_term(nm, c);
      } else {
        low.add_term(m, c);
      }
    }
    r = low - high * tail;
  }
}

// Division with remainder by a single divisor h in graded lex order; the
// leading coefficient of h must be invertible in C.  Returns {quotient, remainder}.
std::pair<RPoly, RPoly> divide(const RPoly& f, const RPoly& h);
// Exact quotient f/h; throws DivisibilityError on a nonzero remainder.
RPoly divide_exact(const RPoly& f, const RPoly& h);
// Exact quotient over A; h must have a unit leading coefficient.
Poly divide_exact(const Poly& f, const Poly& h);

// x-adic tools for polynomials over A.
int x_order(const Poly& p);  // BaseElem::kInfiniteOrder for zero
RPoly residue_mod_x(const Poly& p);
Poly lift(const RPoly& p);
Poly truncate_mod_x(const Poly& p, int k);
Poly div_x_pow(const Poly& p, int k);
Poly mul_x_pow(const Poly& p, int k);
// Polynomial over Q[x] with x as an explicit first variable.  Requires
// polynomial coefficients unless truncation mod x^k is requested (k > 0).
RPoly to_qx(const Poly& p, int truncate_k = 0);
Poly from_qx(const RPoly& p);

// Univariate bridges; `var` must be the only variable in use.
UPoly to_upoly(const RPoly& p, const std::string& var);
RPoly from_upoly(const UPoly& p, const std::string& var);

// Compositional inverse modulo x^n: G with G(Q(y)) = y mod x^n.  Q may carry
// extra parameters in its coefficients (variables other than `y`); G is
// returned in `tau` together with those parameters, coefficients reduced mod x^n.
Poly comp_inverse_mod_xn(const Poly& Q, int n, const std::string& y = "y",
                         const std::string& tau = "tau");

}  // namespace lndkit
