#include "lndkit/reduction.hpp"

#include "lndkit/poly_text.hpp"

namespace lndkit {
namespace {

const VarList& kYZU = TriangularDerivation::kVars;

Rational factorial_ratio(int ell, int k) {
  Rational r = 1;
  for (int j = 0; j <= k; ++j) r *= ell + 1 + j;
  return (k % 2 ? Rational(-1) : Rational(1)) / r;
}

Poly coeff_z(const Poly& p, int k) {
  auto c = p.coeffs_in("z");
  return k < static_cast<int>(c.size()) ? c[k].with_vars(kYZU) : Poly(kYZU);
}

}  // namespace

Poly constant_residue_slice_builder(int n, const Poly& q, const std::string& y, const std::string& z) {
  if (q.has_var(z) && q.degree(z) > 0) throw PreconditionError("q must not involve " + z);
  RPoly qbar = residue_mod_x(q);
  if (qbar.is_zero() || !qbar.is_constant()) throw PreconditionError("residue of q is not a nonzero constant");
  VarList vars = Poly::union_vars({y, z}, q.vars());
  Poly qv = q.with_vars(vars);
  Poly yv = Poly::variable(vars, y);
  Derivation d{vars, {}};
  for (const auto& v : vars)
    d.images.push_back(v == y ? Poly::constant(vars, BaseElem::x_pow(n)) : v == z ? qv : Poly(vars));
  if (n == 0) {
    check_slice(d, yv);
    return yv;
  }
  Poly Q = antiderivative_y(qv, y);
  Poly v = Poly::variable(vars, z) * BaseElem::x_pow(n) - Q;
  Poly G = comp_inverse_mod_xn(Q, n, y, "tau");
  Poly num = yv - substitute(G, SubstMap<BaseElem>{{"tau", -v}}).with_vars(vars);
  Poly s;
  try {
    s = div_x_pow(num, n);
  } catch (const DivisibilityError&) {
    throw InternalError("slice numerator not divisible by x^" + std::to_string(n));
  }
  try {
    check_slice(d, s);
  } catch (const NotASliceError& e) {
    throw InternalError(std::string("constructed slice fails: ") + e.what());
  }
  return s;
}

std::optional<SliceCertificate> easy_translation(const TriangularDerivation& d) {
  if (!fpf_check(d).fpf) throw PreconditionError("easy_translation needs a fixed point free derivation");
  Derivation D = d.as_derivation();
  if (d.n == 0) return verify_slice(D, Poly::variable(kYZU, "y"));
  RPoly qbar = residue_mod_x(d.q);
  if (qbar.is_zero() || !qbar.is_constant()) return std::nullopt;
  Poly s = constant_residue_slice_builder(d.n, d.q.with_vars({"y"}), "y", "z");
  auto cert = verify_slice(D, s.with_vars(kYZU));
  cert.invariant = basic_invariants(d)[0];
  return cert;
}

std::optional<ReducibleQResult> reducible_q_normalize(const TriangularDerivation& d) {
  if (d.q.is_zero()) throw DegenerateError("q vanishes identically: rank-two problem");
  if (d.n < 1 || !residue_mod_x(d.q).is_zero()) return std::nullopt;
  if (!fpf_check(d).fpf) throw PreconditionError("reducible_q_normalize needs a fixed point free derivation");
  ReducibleQResult out;
  out.mu = x_order(d.q);
  Poly q0 = div_x_pow(d.q, out.mu);
  Poly Q0 = antiderivative_y(q0).with_vars(kYZU);
  NormalizationStep& st = out.step;
  st.from_vars = st.to_vars = kYZU;
  st.ints = {{"mu", out.mu}, {"n", d.n}};
  st.data = {{"q0", q0}, {"Q0", Q0}};
  if (out.mu >= d.n) {
    out.z1_change = true;
    Poly shift = mul_x_pow(Q0, out.mu - d.n);
    Poly z = Poly::variable(kYZU, "z");
    st.kind = NormalizationStep::Kind::Z1Change;
    st.forward = {{"z", z - shift}};
    st.inverse = {{"z", z + shift}};
    st.data["z1"] = z - shift;
    Poly p_new = substitute(d.p, SubstMap<BaseElem>{{"z", z + shift}}).with_vars(kYZU);
    out.derivation = TriangularDerivation(d.n, Poly(kYZU), p_new);
    st.note = "z1 = z - x^(mu-n) Q0(y) is invariant";
  } else {
    out.derivation = TriangularDerivation(d.n - out.mu, q0, d.p);
    st.kind = NormalizationStep::Kind::ModificationChain;
    st.isomorphism = false;
    st.note = "affine modification chain: quotients are isomorphic, total spaces are not";
  }
  out.derivation.trail = d.trail;
  out.derivation.trail.push_back(st);
  // the new derivation must be conjugate on the nose when the step is an isomorphism
  if (out.z1_change) {
    Poly z1 = st.forward.at("z");
    if (!apply_derivation(d, z1).is_zero()) throw InternalError("z1 is not invariant");
  }
  return out;
}

DecomposeResult sharp_decompose(const Poly& p_ell, const Poly& q, int n) {
  const VarList Y{"y"};
  Poly qy = q.with_vars(Y), p = p_ell.with_vars(Y);
  RPoly qbar = residue_mod_x(qy);
  if (qbar.is_constant()) throw PreconditionError("sharp_decompose needs a nonconstant residue of q");
  Poly Q = antiderivative_y(qy);
  RPoly Qbar = residue_mod_x(Q).with_vars(Y);
  int dq = qbar.degree("y");
  Rational lcq = qbar.coeff({dq}), lcQ = Qbar.coeff({dq + 1});
  // powers of the residue of Q, extended lazily
  std::vector<RPoly> Qpow{RPoly::constant(Y, 1)};
  const VarList T{"tau"};
  DecomposeResult res;
  res.f = Poly(T);
  Poly r = p;
  for (int layer = 0; layer < n; ++layer) {
    if (x_order(r) < layer) throw InternalError("decomposition residual lost x-divisibility");
    RPoly rbar = residue_mod_x(div_x_pow(truncate_mod_x(r, layer + 1), layer)).with_vars(Y);
    RPoly fi(T);
    while (!rbar.is_zero()) {
      int D = rbar.degree("y");
      if (D < dq || (D - dq) % (dq + 1) != 0) {
        res.refusal_layer = layer;
        res.reason = "layer " + std::to_string(layer) + " residual of degree " + std::to_string(D) +
                     " is not of the form deg(q) + k deg(Q)";
        return res;
      }
      int k = (D - dq) / (dq + 1);
      while (static_cast<int>(Qpow.size()) <= k) Qpow.push_back(Qpow.back() * Qbar);
      Rational lc = rbar.coeff(Monomial{D});
      Rational lQk = 1;
      for (int i = 0; i < k; ++i) lQk *= lcQ;
      Rational c = lc / (lcq * lQk);
      fi += RPoly::term(T, {k}, c);
      rbar -= (qbar * Qpow[k]) * c;
    }
    if (fi.is_zero()) continue;
    Poly fi_lift = mul_x_pow(lift(fi), layer);
    res.f += fi_lift;
    r -= (qy * substitute(lift(fi), SubstMap<BaseElem>{{"tau", Q}})).with_vars(Y) * BaseElem::x_pow(layer);
  }
  try {
    res.g = div_x_pow(r.with_vars(Y), n);
  } catch (const DivisibilityError&) {
    throw InternalError("decomposition residual not divisible by x^n");
  }
  Poly check = qy * substitute(res.f, SubstMap<BaseElem>{{"tau", Q}}).with_vars(Y) + res.g * BaseElem::x_pow(n);
  if (check != p) throw InternalError("decomposition re-expansion failed");
  res.ok = true;
  return res;
}

SharpReduceResult sharp_reduce(const TriangularDerivation& d0, int max_steps) {
  TriangularDerivation d = d0;
  const Poly z = Poly::variable(kYZU, "z"), u = Poly::variable(kYZU, "u");
  Poly Q = antiderivative_y(d.q).with_vars(kYZU);
  for (int step = 0; d.ell() >= 1; ++step) {
    if (step >= max_steps) throw SearchBudgetError("sharp reduction exceeded the step budget");
    int ell = d.ell();
    Poly p_ell = coeff_z(d.p, ell);
    DecomposeResult dec = sharp_decompose(p_ell, d.q, d.n);
    if (!dec.ok) {
      SharpReduceResult out;
      out.current = d;
      out.ell = ell;
      out.p_ell = p_ell.with_vars({"y"});
      out.refusal = dec;
      return out;
    }
    Poly G = antiderivative_y(dec.g.with_vars({"y"})).with_vars(kYZU);
    Poly correction = G * z.pow(ell);
    Poly fk = dec.f;
    for (int k = 0; !fk.is_zero(); ++k) {
      Poly fkQ = substitute(fk, SubstMap<BaseElem>{{"tau", Q}}).with_vars(kYZU);
      correction += fkQ * z.pow(ell + 1 + k) * BaseElem(factorial_ratio(ell, k)) * BaseElem::x_pow(k * d.n);
      fk = differentiate(fk, "tau");
    }
    Poly u_new = u - correction;
    Poly p_new = apply_derivation(d, u_new);
    if (p_new.has_var("u") && p_new.degree("u") > 0) throw InternalError("sharp reduction image depends on u");
    if (p_new.degree("z") >= ell) throw InternalError("sharp reduction did not lower the z-degree");
    Poly expected = d.p - p_ell * z.pow(ell) - G * d.q * z.pow(ell - 1) * BaseElem(ell);
    if (p_new != expected) throw InternalError("sharp reduction image mismatch");
    NormalizationStep st;
    st.kind = NormalizationStep::Kind::SharpReduction;
    st.from_vars = st.to_vars = kYZU;
    st.forward = {{"u", u_new}};
    st.inverse = {{"u", u + correction}};
    st.data = {{"u_tilde", u_new}, {"G", G}, {"f", dec.f}, {"g", dec.g}, {"p_ell", p_ell}};
    st.ints = {{"ell", ell}};
    auto trail = d.trail;
    trail.push_back(st);
    d = TriangularDerivation(d.n, d.q, p_new);
    d.trail = std::move(trail);
  }
  SharpReduceResult out;
  out.twin = true;
  out.ell = d.ell();
  out.current = d;
  out.twin_derivation = TwinDerivation(d.n, d.q.with_vars({"y"}), d.p.with_vars({"y"}), "z", "u");
  out.twin_derivation.trail = d.trail;
  return out;
}

std::optional<SliceCertificate> twin_constant_residue_slice(const TwinDerivation& d,
                                                            std::vector<NormalizationStep>* steps) {
  VarList V = d.vars();
  RPoly a = residue_mod_x(d.p_plus).with_vars({d.y}), b = residue_mod_x(d.p_minus).with_vars({d.y});
  auto slice_on = [&](const Poly& image, const std::string& zname) {
    Poly s = constant_residue_slice_builder(d.n, image.with_vars({d.y}), d.y, zname).with_vars(V);
    return s;
  };
  auto nonzero_const = [](const RPoly& r) { return !r.is_zero() && r.is_constant(); };
  Derivation D = d.as_derivation();
  if (nonzero_const(a)) return verify_slice(D, slice_on(d.p_plus, d.z_plus));
  if (nonzero_const(b)) return verify_slice(D, slice_on(d.p_minus, d.z_minus));
  if (a.is_zero() || b.is_zero() || a.degree(d.y) != b.degree(d.y)) return std::nullopt;
  // b - lambda a constant: shear z_minus' = z_minus - lambda z_plus
  int deg = a.degree(d.y);
  Rational lambda = b.coeff({deg}) / a.coeff({deg});
  RPoly rest = b - a * lambda;
  if (!nonzero_const(rest)) return std::nullopt;
  Poly zp = Poly::variable(V, d.z_plus), zm = Poly::variable(V, d.z_minus);
  NormalizationStep st;
  st.kind = NormalizationStep::Kind::Shear;
  st.from_vars = st.to_vars = V;
  st.forward = {{d.z_minus, zm - zp * BaseElem(lambda)}};
  st.inverse = {{d.z_minus, zm + zp * BaseElem(lambda)}};
  st.data = {{"lambda", Poly::constant(V, BaseElem(lambda))}};
  Poly sheared = (d.p_minus - d.p_plus * BaseElem(lambda)).with_vars({d.y});
  Poly s_new = slice_on(sheared, d.z_minus);
  Poly s_old = substitute(s_new, SubstMap<BaseElem>(st.forward.begin(), st.forward.end())).with_vars(V);
  if (steps) steps->push_back(st);
  return verify_slice(D, s_old);
}

ReplayResult replay_to_original(const Poly& f, const std::vector<NormalizationStep>& trail) {
  ReplayResult out{f, 0, true};
  for (auto it = trail.rbegin(); it != trail.rend(); ++it) {
    if (!it->isomorphism) {
      out.complete = false;
      return out;
    }
    out.value = substitute(out.value, SubstMap<BaseElem>(it->forward.begin(), it->forward.end()));
    ++out.steps_replayed;
  }
  return out;
}

}  // namespace lndkit
