#include "lndkit/calculus.hpp"

namespace lndkit {
namespace {

bool divides(const Monomial& a, const Monomial& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

template <class C, class DivCoeff>
std::pair<MPoly<C>, MPoly<C>> divide_impl(const MPoly<C>& f, const MPoly<C>& h, DivCoeff div) {
  if (h.is_zero()) throw ArithmeticError("division by the zero polynomial");
  VarList vars = MPoly<C>::union_vars(f.vars(), h.vars());
  MPoly<C> p = f.with_vars(vars), hh = h.with_vars(vars);
  MPoly<C> quo(vars), rem(vars);
  const auto& [hm, hc] = *hh.terms().rbegin();
  while (!p.is_zero()) {
    auto [pm, pc] = *p.terms().rbegin();
    if (divides(hm, pm)) {
      Monomial qm(pm.size());
      for (size_t i = 0; i < pm.size(); ++i) qm[i] = pm[i] - hm[i];
      MPoly<C> t = MPoly<C>::term(vars, qm, div(pc, hc));
      quo += t;
      p -= t * hh;
    } else {
      MPoly<C> t = MPoly<C>::term(vars, pm, pc);
      rem += t;
      p -= t;
    }
  }
  return {quo, rem};
}

}  // namespace

std::pair<RPoly, RPoly> divide(const RPoly& f, const RPoly& h) {
  return divide_impl(f, h, [](const Rational& a, const Rational& b) { return Rational(a / b); });
}

RPoly divide_exact(const RPoly& f, const RPoly& h) {
  auto [q, r] = divide(f, h);
  if (!r.is_zero()) throw DivisibilityError("multivariate division leaves a remainder");
  return q;
}

Poly divide_exact(const Poly& f, const Poly& h) {
  if (!h.is_zero() && !h.terms().rbegin()->second.is_unit())
    throw PreconditionError("divisor leading coefficient is not a unit of A");
  auto [q, r] = divide_impl(f, h, [](const BaseElem& a, const BaseElem& b) {
    return BaseElem::exact_div(a, b);
  });
  if (!r.is_zero()) throw DivisibilityError("multivariate division leaves a remainder");
  return q;
}

int x_order(const Poly& p) {
  int o = BaseElem::kInfiniteOrder;
  for (const auto& [m, c] : p.terms()) o = std::min(o, c.x_order());
  return o;
}

RPoly residue_mod_x(const Poly& p) {
  return p.map_coeffs([](const BaseElem& c) { return c.residue(); });
}

Poly lift(const RPoly& p) {
  return p.map_coeffs([](const Rational& c) { return BaseElem(c); });
}

Poly truncate_mod_x(const Poly& p, int k) {
  return p.map_coeffs([k](const BaseElem& c) { return BaseElem(c.truncate(k)); });
}

Poly div_x_pow(const Poly& p, int k) {
  return p.map_coeffs([k](const BaseElem& c) { return c.div_x_pow(k); });
}

Poly mul_x_pow(const Poly& p, int k) {
  BaseElem xk = BaseElem::x_pow(k);
  return xk * p;
}

RPoly to_qx(const Poly& p, int truncate_k) {
  VarList vars{"x"};
  for (const auto& v : p.vars()) {
    if (v == "x") throw VariableError("variable name x clashes with the uniformizer");
    vars.push_back(v);
  }
  RPoly out(vars);
  for (const auto& [m, c] : p.terms()) {
    UPoly coeffs;
    if (truncate_k > 0) {
      coeffs = c.truncate(truncate_k);
    } else {
      if (!c.is_polynomial()) throw PreconditionError("coefficient is not a polynomial in x");
      coeffs = c.num() * UPoly(Rational(1) / c.den().coeff(0));
    }
    for (int i = 0; i <= coeffs.degree(); ++i) {
      if (coeffs.coeff(i) == 0) continue;
      Monomial nm{i};
      nm.insert(nm.end(), m.begin(), m.end());
      out.add_term(nm, coeffs.coeff(i));
    }
  }
  return out;
}

Poly from_qx(const RPoly& p) {
  int ix = p.index_of("x");
  VarList vars;
  for (const auto& v : p.vars())
    if (v != "x") vars.push_back(v);
  Poly out(vars);
  for (const auto& [m, c] : p.terms()) {
    Monomial nm;
    int xe = 0;
    for (size_t i = 0; i < m.size(); ++i) {
      if (static_cast<int>(i) == ix)
        xe = m[i];
      else
        nm.push_back(m[i]);
    }
    out.add_term(nm, BaseElem(UPoly::monomial(c, xe)));
  }
  return out;
}

UPoly to_upoly(const RPoly& p, const std::string& var) {
  int i = p.index_of(var);
  std::vector<Rational> c;
  for (const auto& [m, coef] : p.terms()) {
    for (size_t j = 0; j < m.size(); ++j)
      if (static_cast<int>(j) != i && m[j] != 0)
        throw VariableError("expected a univariate polynomial in " + var);
    int e = i < 0 ? 0 : m[i];
    if (static_cast<int>(c.size()) <= e) c.resize(e + 1, Rational(0));
    c[e] += coef;
  }
  return UPoly(std::move(c));
}

RPoly from_upoly(const UPoly& p, const std::string& var) {
  RPoly out({var});
  for (int i = 0; i <= p.degree(); ++i)
    if (p.coeff(i) != 0) out.add_term({i}, p.coeff(i));
  return out;
}

Poly comp_inverse_mod_xn(const Poly& Q, int n, const std::string& y, const std::string& tau) {
  if (n < 1) throw PreconditionError("comp_inverse_mod_xn needs n >= 1");
  if (!Q.has_var(y)) throw VariableError("unknown variable '" + y + "'");
  RPoly qbar = residue_mod_x(Q);
  VarList params;
  for (const auto& v : Q.vars())
    if (v != y) params.push_back(v);
  // residue must be c*y with c a nonzero rational
  Rational c = 0;
  for (const auto& [m, coef] : qbar.terms()) {
    int iy = qbar.index_of(y);
    int deg = 0;
    for (int e : m) deg += e;
    if (deg != 1 || m[iy] != 1) throw NotInvertibleError("residue of Q is not a nonzero multiple of " + y);
    c = coef;
  }
  if (c == 0) throw NotInvertibleError("residue of Q is not a nonzero multiple of " + y);
  if (!Q.coeffs_in(y)[0].is_zero()) throw PreconditionError("Q must vanish at " + y + " = 0");

  VarList gvars{tau};
  gvars.insert(gvars.end(), params.begin(), params.end());
  Poly G = Poly::variable(gvars, tau) * BaseElem(Rational(1) / c);
  Poly y_poly = Poly::variable(Q.vars(), y);
  SubstMap<BaseElem> scale{{y, Poly::variable(gvars, tau) * BaseElem(Rational(1) / c)}};
  for (int j = 1; j < n; ++j) {
    Poly err = truncate_mod_x(substitute(G, SubstMap<BaseElem>{{tau, Q}}) - y_poly, n);
    if (x_order(err) < j) throw InternalError("compositional inverse lost precision");
    RPoly layer = residue_mod_x(div_x_pow(truncate_mod_x(err, j + 1), j));
    if (layer.is_zero()) continue;
    Poly correction = substitute(lift(layer), scale).with_vars(gvars);
    G -= mul_x_pow(correction, j);
  }
  G = truncate_mod_x(G, n);
  Poly check = substitute(G, SubstMap<BaseElem>{{tau, Q}}) - y_poly;
  if (x_order(check) < n) throw InternalError("compositional inverse check failed");
  return G;
}

}  // namespace lndkit
