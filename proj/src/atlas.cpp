#include "lndkit/atlas.hpp"

#include <numeric>

#include "lndkit/poly_text.hpp"

namespace lndkit {
namespace {

const VarList kY{"y"};
const VarList kT{"t"};
const VarList& kBase = CoverRing::kBase;

RPoly integral_y(const RPoly& p) { return integrate_from_zero(p.with_vars(kY), "y"); }

Rational lc_y(const RPoly& p) { return p.coeffs_in("y").back().constant_term(); }

// alpha(P(y)) for alpha in t and P in y.
RPoly compose_t(const RPoly& alpha, const RPoly& P) {
  return substitute(alpha.with_vars(kT), SubstMap<Rational>{{"t", P.with_vars(kY)}}).with_vars(kY);
}

std::vector<Rational> small_values() {
  std::vector<Rational> v{0};
  for (int h = 2; h <= 9; ++h)
    for (int den = 1; den < h; ++den) {
      int num = h - den;
      if (std::gcd(num, den) != 1) continue;
      v.push_back(make_rational(num, den));
      v.push_back(make_rational(-num, den));
    }
  return v;
}

CoverElem t_elem(const CoverRing& R) { return R.make(Poly::variable(kBase, "t")); }

CoverElem in_ring(const CoverRing& R, const Poly& p) {
  return R.make(p.with_vars(Poly::union_vars(kBase, p.vars())));
}

}  // namespace

RPoly branch_polynomial(const RPoly& P_bar) {
  RPoly dP = differentiate(P_bar.with_vars(kY), "y");
  if (dP.is_constant()) return RPoly::constant(kT, 1);
  return minimal_polynomial_mod(P_bar.with_vars(kY), dP, "y", "t");
}

bool in_general_position(const RPoly& a, const RPoly& b) {
  if (a.is_zero() || b.is_zero()) return false;
  if (!uni_gcd(a.with_vars(kY), b.with_vars(kY)).is_constant()) return false;
  RPoly Pa = integral_y(a), Pb = integral_y(b);
  RPoly A = compose_t(branch_polynomial(Pa), Pa), B = compose_t(branch_polynomial(Pb), Pb);
  return uni_gcd(A, B).is_constant();
}

std::pair<TwinDerivation, GeneralPositionData> general_position(const TwinDerivation& d0, int budget) {
  if (!fpf_check(d0).fpf) throw PreconditionError("general_position needs a fixed point free derivation");
  auto nonzero_const = [](const RPoly& r) { return !r.is_zero() && r.is_constant(); };
  if (nonzero_const(residue_mod_x(d0.p_plus)) || nonzero_const(residue_mod_x(d0.p_minus)))
    throw PreconditionError("constant residue: the derivation is a translation");
  GeneralPositionData gp;
  TwinDerivation d = d0;
  VarList V = d.vars();
  Poly zp = Poly::variable(V, d.z_plus), zm = Poly::variable(V, d.z_minus);
  if (residue_mod_x(d.p_plus).is_zero()) {
    gp.plus_fix = true;
    NormalizationStep st;
    st.kind = NormalizationStep::Kind::Shear;
    st.from_vars = st.to_vars = V;
    st.forward = {{d.z_plus, zp + zm}};
    st.inverse = {{d.z_plus, zp - zm}};
    st.note = "residue of the first image vanishes";
    d.p_plus = d.p_plus + d.p_minus;
    d.trail.push_back(st);
  }
  RPoly a = residue_mod_x(d.p_plus).with_vars(kY), b = residue_mod_x(d.p_minus).with_vars(kY);
  auto values = small_values();
  std::vector<Rational> avals(values.begin() + 1, values.end());
  bool found = false;
  for (size_t diag = 0; !found; ++diag) {
    if (diag >= avals.size() + values.size()) break;
    for (size_t i = 0; i <= diag && !found; ++i) {
      size_t j = diag - i;
      if (i >= avals.size() || j >= values.size()) continue;
      if (gp.candidates_tried >= budget) throw SearchBudgetError("no shear in general position within budget");
      ++gp.candidates_tried;
      Rational sa = avals[i], sb = values[j];
      RPoly nb = b * sa + a * sb;
      if (nb.is_zero() || nb.is_constant()) continue;
      if (!in_general_position(a, nb)) continue;
      found = true;
      gp.shear_a = sa;
      gp.shear_b = sb;
    }
  }
  if (!found) throw SearchBudgetError("shear search space exhausted");
  if (gp.shear_a != 1 || gp.shear_b != 0) {
    NormalizationStep st;
    st.kind = NormalizationStep::Kind::Shear;
    st.from_vars = st.to_vars = V;
    st.forward = {{d.z_minus, zm * BaseElem(gp.shear_a) + zp * BaseElem(gp.shear_b)}};
    st.inverse = {{d.z_minus, (zm - zp * BaseElem(gp.shear_b)) * BaseElem(Rational(1) / gp.shear_a)}};
    d.p_minus = d.p_minus * BaseElem(gp.shear_a) + d.p_plus * BaseElem(gp.shear_b);
    d.trail.push_back(st);
  }
  RPoly Pp = integral_y(residue_mod_x(d.p_plus)), Pm = integral_y(residue_mod_x(d.p_minus));
  gp.scale_plus = Rational(1) / lc_y(Pp);
  gp.scale_minus = Rational(1) / lc_y(Pm);
  if (gp.scale_plus != 1 || gp.scale_minus != 1) {
    NormalizationStep st;
    st.kind = NormalizationStep::Kind::Monicize;
    st.from_vars = st.to_vars = V;
    if (gp.scale_plus != 1) {
      st.forward[d.z_plus] = zp * BaseElem(gp.scale_plus);
      st.inverse[d.z_plus] = zp * BaseElem(Rational(1) / gp.scale_plus);
    }
    if (gp.scale_minus != 1) {
      st.forward[d.z_minus] = zm * BaseElem(gp.scale_minus);
      st.inverse[d.z_minus] = zm * BaseElem(Rational(1) / gp.scale_minus);
    }
    d.p_plus = d.p_plus * BaseElem(gp.scale_plus);
    d.p_minus = d.p_minus * BaseElem(gp.scale_minus);
    d.trail.push_back(st);
  }
  TwinDerivation out(d.n, d.p_plus.with_vars({d.y}), d.p_minus.with_vars({d.y}), d.z_plus, d.z_minus);
  out.trail = d.trail;
  gp.P_plus = antiderivative_y(out.p_plus.with_vars(kY));
  gp.P_minus = antiderivative_y(out.p_minus.with_vars(kY));
  RPoly Pbp = residue_mod_x(gp.P_plus).with_vars(kY), Pbm = residue_mod_x(gp.P_minus).with_vars(kY);
  gp.alpha_plus = branch_polynomial(Pbp);
  gp.alpha_minus = branch_polynomial(Pbm);
  auto phi = basic_invariants(out);
  gp.Phi_plus = phi[0];
  gp.Phi_minus = phi[1];
  gp.Gamma_plus = substitute(lift(gp.alpha_plus), SubstMap<BaseElem>{{"t", gp.Phi_plus}});
  gp.Gamma_minus = substitute(lift(gp.alpha_minus), SubstMap<BaseElem>{{"t", gp.Phi_minus}});
  RPoly A = compose_t(gp.alpha_plus, Pbp), B = compose_t(gp.alpha_minus, Pbm);
  auto bz = UPoly::ext_gcd(to_upoly(A, "y"), to_upoly(B, "y"));
  if (bz.g.degree() != 0) throw InternalError("branch preimages are not disjoint after normalization");
  Rational inv = Rational(1) / bz.g.coeff(0);
  gp.bezout_plus = from_upoly(bz.s, "y") * inv;
  gp.bezout_minus = from_upoly(bz.t, "y") * inv;
  if (gp.bezout_plus * A + gp.bezout_minus * B != RPoly::constant(kY, 1))
    throw InternalError("Bezout witness does not verify");
  return {out, gp};
}

SplittingAlgebra splitting_from_data(const SplittingData& data) {
  SplittingAlgebra S;
  S.P_bar = parse_rpoly(data.P_bar, kY);
  S.ring = CoverRing(parse_rpoly(data.modulus, kBase), parse_rpoly(data.alpha, kT));
  auto elem = [&](const CoverText& c) {
    if (c.alpha_pow < 0) throw SchemaError("alpha_pow must be non-negative");
    return S.ring.make(parse_rpoly(c.num, kBase), c.alpha_pow);
  };
  for (const auto& r : data.roots) S.roots.push_back(elem(r));
  for (const auto& g : data.galois) {
    if (g.perm.size() != S.roots.size()) throw SchemaError("Galois permutation has the wrong length");
    S.galois.push_back({elem(g.s_image), g.perm});
  }
  S.source = "user";
  return S;
}

SplittingAlgebra splitting_build(const RPoly& P_bar, const RPoly& alpha, const std::vector<SplittingData>& user) {
  RPoly P = P_bar.with_vars(kY);
  int deg = P.degree("y");
  if (deg < 1 || lc_y(P) != 1) throw PreconditionError("P_bar must be monic of positive degree");
  auto c = P.coeffs_in("y");
  auto coef = [&](int k) { return k < static_cast<int>(c.size()) ? c[k].constant_term() : Rational(0); };
  SplittingAlgebra S;
  S.P_bar = P;
  const RPoly t = RPoly::variable(kBase, "t"), s = RPoly::variable(kBase, "s");
  if (deg == 1) {
    S.ring = CoverRing(s, alpha);
    S.roots = {S.ring.make(t - RPoly::constant(kBase, coef(0)))};
    S.galois = {{S.ring.make(s), {0}}};
    S.source = "degree one";
  } else if (deg == 2) {
    Rational b = coef(1), c0 = coef(0);
    RPoly D = t + RPoly::constant(kBase, b * b / 4 - c0);
    S.ring = CoverRing(s * s - D, alpha);
    RPoly shift = RPoly::constant(kBase, -b / 2);
    S.roots = {S.ring.make(shift + s), S.ring.make(shift - s)};
    S.galois = {{S.ring.make(s), {0, 1}}, {S.ring.make(-s), {1, 0}}};
    S.source = "quadratic";
  } else {
    const SplittingData* match = nullptr;
    for (const auto& u : user)
      if (parse_rpoly(u.P_bar, kY) == P) match = &u;
    if (!match)
      throw UnsupportedSplittingError("no splitting for degree " + std::to_string(deg) + " residue " + format(P));
    S = splitting_from_data(*match);
  }
  verify_splitting(S);
  return S;
}

void verify_splitting(const SplittingAlgebra& S) {
  const CoverRing& R = S.ring;
  VarList vy = kBase;
  vy.push_back("y");
  CoverElem y = R.make(Poly::variable(vy, "y"));
  CoverElem prod = R.one();
  for (const auto& r : S.roots) prod = R.mul(prod, R.sub(y, r));
  CoverElem target = R.sub(in_ring(R, lift(S.P_bar)), t_elem(R));
  if (prod != target) throw InternalError("roots do not split P_bar(y) - t");
  for (size_t i = 0; i < S.roots.size(); ++i)
    for (size_t j = i + 1; j < S.roots.size(); ++j)
      if (!R.unit_test(R.sub(S.roots[i], S.roots[j])).unit)
        throw InternalError("root difference is not invertible");
  CoverElem m = R.make(lift(R.modulus()));
  for (const auto& g : S.galois) {
    if (!R.is_zero(R.substitute(m, "s", g.s_image))) throw InternalError("Galois image of s is not a root of m");
    for (size_t i = 0; i < S.roots.size(); ++i)
      if (R.apply_s(S.roots[i], g.s_image) != S.roots.at(g.perm[i]))
        throw InternalError("Galois action does not permute the roots");
  }
}

LiftedRoots hensel_lift_sigmas(const Poly& P, const SplittingAlgebra& S, int n) {
  if (n < 1) throw PreconditionError("n must be at least 1");
  if (residue_mod_x(P.with_vars(kY)) != S.P_bar) throw PreconditionError("residue of P differs from P_bar");
  const CoverRing& R = S.ring;
  const size_t r = S.roots.size();
  CoverElem Pe = in_ring(R, P.with_vars(kY)), t = t_elem(R);
  std::vector<CoverElem> inv(r);
  for (size_t g = 0; g < r; ++g) {
    CoverElem prod = R.one();
    for (size_t h = 0; h < r; ++h)
      if (h != g) prod = R.mul(prod, R.sub(S.roots[g], S.roots[h]));
    auto i = R.inverse(prod);
    if (!i) throw InternalError("product of root differences is not invertible");
    inv[g] = *i;
  }
  LiftedRoots out;
  out.sigma = S.roots;
  for (int m = 0; m + 1 < n; ++m) {
    std::vector<CoverElem> mus, lambdas;
    for (size_t g = 0; g < r; ++g) {
      CoverElem val = R.sub(R.substitute(Pe, "y", out.sigma[g]), t);
      if (!R.is_zero(val) && R.x_order(val) < m + 1) throw InternalError("lifting lost precision");
      CoverElem mu = R.div_x_pow(val, m + 1);
      CoverElem lambda = R.neg(R.mul(R.residue(mu), inv[g]));
      out.sigma[g] = R.add(out.sigma[g], R.mul_x_pow(lambda, m + 1));
      mus.push_back(mu);
      lambdas.push_back(lambda);
    }
    out.mu.push_back(mus);
    out.lambda.push_back(lambdas);
  }
  for (size_t g = 0; g < r; ++g) {
    CoverElem val = R.sub(R.substitute(Pe, "y", out.sigma[g]), t);
    if (!R.is_zero(val) && R.x_order(val) < n) throw InternalError("lifted root fails P(sigma) = t mod x^n");
  }
  for (const auto& gal : S.galois)
    for (size_t i = 0; i < r; ++i)
      if (R.apply_s(out.sigma[i], gal.s_image) != out.sigma.at(gal.perm[i]))
        throw InternalError("lifted roots are not Galois equivariant");
  return out;
}

S1S2 s1_s2_factor(const Poly& P, const SplittingAlgebra& S, const std::vector<CoverElem>& sigma, int n) {
  const CoverRing& R = S.ring;
  VarList vy = kBase;
  vy.push_back("y");
  CoverElem y = R.make(Poly::variable(vy, "y"));
  CoverElem prod = R.one();
  for (const auto& s : sigma) prod = R.mul(prod, R.sub(y, s));
  CoverElem target = R.sub(in_ring(R, P.with_vars(kY)), t_elem(R));
  auto [S1, rem] = divide_monic(R, target, prod, "y");
  if (!R.is_zero(rem) && R.x_order(rem) < n) throw InternalError("remainder not divisible by x^n");
  S1S2 out{S1, R.div_x_pow(rem, n)};
  if (R.add(R.mul(out.S1, prod), R.mul_x_pow(out.S2, n)) != target)
    throw InternalError("S1/S2 identity fails");
  if (R.residue(out.S1) != R.one()) throw InternalError("residue of S1 is not invertible");
  return out;
}

const CocycleEntry& Cocycle::at(int a, int b) const {
  for (const auto& e : entries)
    if (e.a == a && e.b == b) return e;
  throw PreconditionError("no cocycle entry for the pair");
}

Cocycle cocycle_from_sigmas(const CoverRing& R, const std::vector<CoverElem>& sigma, const Poly& P_other,
                            int n) {
  Cocycle c;
  c.n = n;
  c.size = static_cast<int>(sigma.size());
  CoverElem Pe = in_ring(R, P_other.with_vars(kY));
  std::vector<CoverElem> vals;
  for (const auto& s : sigma) vals.push_back(R.substitute(Pe, "y", s));
  for (int a = 0; a < c.size; ++a)
    for (int b = 0; b < c.size; ++b) {
      if (a == b) continue;
      CocycleEntry e;
      e.a = a;
      e.b = b;
      e.numerator = R.sub(vals[a], vals[b]);
      e.has_form = !R.is_zero(e.numerator);
      if (e.has_form) {
        int k = R.x_order(e.numerator);
        e.F = R.div_x_pow(e.numerator, k);
        e.m = n - k;
      }
      c.entries.push_back(e);
    }
  return c;
}

Cocycle chart_cocycle(const CoverRing& R, const std::vector<CoverElem>& sigma, const Poly& P_other, int n,
                      const std::string& zvar, std::vector<Chart>* charts) {
  Cocycle c = cocycle_from_sigmas(R, sigma, P_other, n);
  if (!cocycle_identities_hold(R, c)) throw InternalError("cocycle identities fail");
  if (charts) {
    CoverElem Pe = in_ring(R, P_other.with_vars(kY));
    VarList vw = kBase;
    vw.push_back("y");
    vw.push_back("w");
    vw.push_back(zvar);
    CoverElem y = R.make(Poly::variable(vw, "y")), w = R.make(Poly::variable(vw, "w"));
    CoverElem z = R.make(Poly::variable(vw, zvar));
    RPoly p_other = differentiate(residue_mod_x(P_other.with_vars(kY)), "y");
    Poly p_full = differentiate(P_other.with_vars(kY), "y");
    for (const auto& s : sigma) {
      CoverElem point = R.add(R.mul_x_pow(w, n), s);
      CoverElem diff = R.sub(R.substitute(Pe, "y", point), R.substitute(Pe, "y", s));
      if (!R.is_zero(diff) && R.x_order(diff) < n) throw InternalError("chart invariant not divisible by x^n");
      Chart ch;
      ch.u_numerator = R.sub(y, s);
      ch.v = R.sub(z, R.div_x_pow(diff, n));
      // the chart derivation d/dw + p(x^n w + sigma) d/dz kills v
      CoverElem dv{differentiate(ch.v.num.with_vars(Poly::union_vars(vw, ch.v.num.vars())), "w"), ch.v.alpha_pow};
      CoverElem image = R.add(R.make(dv.num, dv.alpha_pow), R.substitute(in_ring(R, p_full), "y", point));
      if (!R.is_zero(image)) throw InternalError("chart invariant is not killed");
      charts->push_back(ch);
    }
    (void)p_other;
  }
  return c;
}

bool cocycle_identities_hold(const CoverRing& R, const Cocycle& c) {
  for (const auto& e : c.entries)
    if (c.at(e.b, e.a).numerator != R.neg(e.numerator)) return false;
  for (int a = 0; a < c.size; ++a)
    for (int b = 0; b < c.size; ++b)
      for (int d = 0; d < c.size; ++d) {
        if (a == b || b == d || a == d) continue;
        if (R.add(c.at(a, b).numerator, c.at(b, d).numerator) != c.at(a, d).numerator) return false;
      }
  return true;
}

SeparatednessResult separatedness_check(const CoverRing& R, const Cocycle& c) {
  SeparatednessResult out;
  out.separated = true;
  for (int a = 0; a < c.size; ++a)
    for (int b = a + 1; b < c.size; ++b) {
      const auto& e = c.at(a, b);
      PairVerdict v;
      v.a = a;
      v.b = b;
      if (!e.has_form) {
        v.reason = "gluing function vanishes";
      } else if (e.m < 1) {
        v.reason = "gluing function is regular along x = 0";
      } else {
        v.test = R.unit_test(R.residue(e.F));
        v.ok = v.test.unit;
        if (!v.ok) v.reason = "residue of the unit part has non-unit norm factor " + format(v.test.non_unit_factor);
      }
      if (!v.ok && out.separated) {
        out.separated = false;
        out.witness_a = a;
        out.witness_b = b;
      }
      out.pairs.push_back(v);
    }
  return out;
}

namespace {

CoverElem x_m_f(const CoverRing& R, const Cocycle& c, int a, int b, int m) {
  const auto& e = c.at(a, b);
  if (!e.has_form) return R.zero();
  return R.div_x_pow(e.numerator, c.n - m);
}

bool node_glues(const CoverRing& R, const Cocycle& c, const AffinenessNode& nd) {
  for (int a : nd.charts)
    for (int b : nd.charts) {
      if (a == b) continue;
      CoverElem lhs = R.add(x_m_f(R, c, a, b, nd.m), R.sub(nd.theta.at(a), nd.theta.at(b)));
      if (!R.is_zero(lhs)) return false;
    }
  return true;
}

AffinenessNode build_node(const CoverRing& R, const Cocycle& c, std::vector<int> charts) {
  AffinenessNode nd;
  nd.charts = charts;
  if (charts.size() < 2) return nd;
  for (size_t i = 0; i < charts.size(); ++i)
    for (size_t j = i + 1; j < charts.size(); ++j) {
      int m = c.at(charts[i], charts[j]).m;
      if (nd.g < 0 || m > nd.m) {
        nd.g = charts[i];
        nd.g_prime = charts[j];
        nd.m = m;
      }
    }
  for (int h : charts)
    nd.theta[h] = h == nd.g ? R.zero() : R.mul_x_pow(c.at(nd.g, h).F, nd.m - c.at(nd.g, h).m);
  if (!node_glues(R, c, nd)) throw InternalConsistencyError("psi sections do not glue");
  const CoverElem& F = nd.theta.at(nd.g_prime);
  auto w = R.inverse(R.residue(F));
  if (!w) throw InternalConsistencyError("unit part is not invertible modulo x");
  nd.w = *w;
  CoverElem Fw1 = R.sub(R.mul(F, nd.w), R.one());
  if (!R.is_zero(Fw1) && R.x_order(Fw1) < 1) throw InternalConsistencyError("unit witness fails modulo x");
  nd.h = R.div_x_pow(Fw1, 1);
  if (R.sub(R.mul(nd.w, F), R.mul_x_pow(nd.h, 1)) != R.one())
    throw InternalConsistencyError("unit ideal witness does not verify");
  std::vector<int> without_g, without_gp;
  for (int h : charts) {
    if (h != nd.g) without_g.push_back(h);
    if (h != nd.g_prime) without_gp.push_back(h);
  }
  nd.children.push_back(build_node(R, c, without_g));
  nd.children.push_back(build_node(R, c, without_gp));
  return nd;
}

int node_depth(const AffinenessNode& nd) {
  if (nd.charts.size() < 2) return 0;
  int d = 0;
  for (const auto& ch : nd.children) d = std::max(d, node_depth(ch));
  return d + 1;
}

bool verify_node(const CoverRing& R, const Cocycle& c, const AffinenessNode& nd) {
  if (nd.charts.size() < 2) return true;
  if (!node_glues(R, c, nd)) return false;
  if (R.sub(R.mul(nd.w, nd.theta.at(nd.g_prime)), R.mul_x_pow(nd.h, 1)) != R.one()) return false;
  for (const auto& ch : nd.children)
    if (!verify_node(R, c, ch)) return false;
  return true;
}

}  // namespace

AffinenessCertificate psi_affineness(const CoverRing& R, const Cocycle& c, const SeparatednessResult& sep) {
  if (!sep.separated) throw PreconditionError("psi_affineness needs a separated cocycle");
  std::vector<int> all(c.size);
  std::iota(all.begin(), all.end(), 0);
  AffinenessCertificate cert;
  cert.root = build_node(R, c, all);
  cert.depth = node_depth(cert.root);
  return cert;
}

bool verify_affineness(const CoverRing& R, const Cocycle& c, const AffinenessCertificate& cert) {
  try {
    return verify_node(R, c, cert.root);
  } catch (const Error&) {
    return false;
  }
}

AtlasSide build_atlas(const TwinDerivation& d, const GeneralPositionData& gp, bool plus_side,
                      const std::vector<SplittingData>& user) {
  AtlasSide side;
  side.plus = plus_side;
  const Poly& P = plus_side ? gp.P_plus : gp.P_minus;
  const Poly& P_other = plus_side ? gp.P_minus : gp.P_plus;
  const RPoly& alpha = plus_side ? gp.alpha_plus : gp.alpha_minus;
  const std::string& zvar = plus_side ? d.z_minus : d.z_plus;
  try {
    side.splitting = splitting_build(residue_mod_x(P.with_vars(kY)), alpha, user);
  } catch (const UnsupportedSplittingError& e) {
    side.reason = e.what();
    return side;
  }
  side.supported = true;
  const CoverRing& R = side.splitting.ring;
  side.lifted = hensel_lift_sigmas(P, side.splitting, d.n);
  side.factors = s1_s2_factor(P, side.splitting, side.lifted.sigma, d.n);
  side.cocycle = chart_cocycle(R, side.lifted.sigma, P_other, d.n, zvar, &side.charts);
  side.separatedness = separatedness_check(R, side.cocycle);
  if (side.separatedness.separated) {
    side.affineness = psi_affineness(R, side.cocycle, side.separatedness);
    if (!verify_affineness(R, side.cocycle, *side.affineness))
      throw InternalConsistencyError("affineness certificate does not verify");
  }
  return side;
}

}  // namespace lndkit
