#include "lndkit/properness.hpp"

namespace lndkit {
namespace {

const VarList kY{"y"};
const VarList kY12{"y1", "y2"};
const VarList kW{"w0", "w1", "y1", "y2", "z1", "z2", "u1", "u2"};

Poly in_var(const Poly& f, const std::string& var, const VarList& target) {
  return substitute(f.with_vars(kY), SubstMap<BaseElem>{{"y", Poly::variable(target, var)}}).with_vars(target);
}

// f(y1, y2) / (y2 - y1)^k, computed through y2 = y1 + w.
Poly divide_by_gap(const Poly& f, int k) {
  const VarList yw{"y1", "w"};
  Poly shifted = substitute(f.with_vars(kY12), SubstMap<BaseElem>{{"y2", Poly::variable(yw, "y1") +
                                                                            Poly::variable(yw, "w")}})
                     .with_vars(yw);
  Poly lowered(yw);
  for (const auto& [m, c] : shifted.terms()) {
    if (m[1] < k) throw InternalError("polynomial not divisible by (y2 - y1)^" + std::to_string(k));
    lowered.add_term({m[0], m[1] - k}, c);
  }
  Poly gap = Poly::variable(kY12, "y2") - Poly::variable(kY12, "y1");
  return substitute(lowered, SubstMap<BaseElem>{{"w", gap}}).with_vars(kY12);
}

}  // namespace

Poly two_point_difference(const Poly& F) { return in_var(F, "y2", kY12) - in_var(F, "y1", kY12); }

Poly divided_difference(const Poly& F) { return divide_by_gap(two_point_difference(F), 1); }

GammaPoly gamma_poly(const Poly& p_r, const Poly& q, int r) {
  if (r < 0) throw PreconditionError("r must be non-negative");
  const VarList V{"xi", "y1", "y2"};
  Poly Q = antiderivative_y(q.with_vars(kY));
  Poly integrand = in_var(p_r, "xi", V) * (in_var(Q, "xi", V) - in_var(Q, "y1", V)).pow(r);
  Poly I = integrate_from_zero(integrand, "xi");
  auto eval_xi = [&](const std::string& v) {
    return substitute(I, SubstMap<BaseElem>{{"xi", Poly::variable(V, v)}}).with_vars(kY12);
  };
  GammaPoly out;
  out.gamma = eval_xi("y2") - eval_xi("y1");
  out.theta = divide_by_gap(out.gamma, r + 1);
  return out;
}

std::vector<Poly> e_recursion(const Poly& p, const Poly& q, int count) {
  std::vector<Poly> E;
  Poly cur = antiderivative_y(p.with_vars(kY));
  for (int k = 1; k <= count; ++k) {
    E.push_back(cur);
    cur = antiderivative_y((cur * q.with_vars(kY)).with_vars(kY));
  }
  return E;
}

GammaMembership gamma_membership(const Poly& p_ell, const Poly& q, int n, int ell) {
  if (residue_mod_x(q.with_vars(kY)).is_constant())
    throw PreconditionError("gamma_membership needs a nonconstant residue of q");
  GammaMembership out;
  auto E = e_recursion(p_ell, q, ell + 1);
  Poly H = two_point_difference(antiderivative_y(q.with_vars(kY)));
  out.layered = layered_membership(two_point_difference(E.back()), H, n);
  out.decomposition = sharp_decompose(p_ell, q, n);
  if (out.layered.member != out.decomposition.ok)
    throw InternalConsistencyError("layered membership and the decomposition disagree");
  if (out.layered.member && !out.layered.verify()) throw InternalError("membership witness does not verify");
  out.member = out.layered.member;
  return out;
}

GammaCertificate non_properness_certificate(const TriangularDerivation& d, int ell, const Poly& p_ell) {
  GammaCertificate c;
  c.n = d.n;
  c.ell = ell;
  c.q = d.q.with_vars(kY);
  c.p_ell = p_ell.with_vars(kY);
  c.routes = gamma_membership(c.p_ell, c.q, d.n, ell);
  if (c.routes.member) throw PreconditionError("leading coefficient decomposes: no non-properness certificate");
  c.Q = antiderivative_y(c.q);
  GammaPoly g = gamma_poly(c.p_ell, c.q, ell);
  c.gamma = g.gamma;
  c.theta = g.theta;
  c.R = divided_difference(c.Q);
  auto pr = d.p.coeffs_in("z");
  for (int r = 0; r <= ell; ++r) {
    Poly coeff = r < static_cast<int>(pr.size()) ? pr[r].with_vars(TriangularDerivation::kVars) : Poly(kY);
    c.thetas.push_back(gamma_poly(coeff.with_vars(kY), c.q, r).theta);
  }
  c.gamma_refusal = layered_membership(c.gamma, two_point_difference(c.Q), d.n);
  if (c.gamma_refusal.member) throw InternalConsistencyError("Gamma lies in (x^n, Q(y2) - Q(y1))");

  auto var = [](const char* v) { return Poly::variable(kW, v); };
  Poly w0 = var("w0"), w1 = var("w1"), gap = var("y2") - var("y1");
  Poly Rw = c.R.with_vars(kW);
  Poly sum(kW);
  for (int r = 0; r <= ell; ++r) sum += c.thetas[r].with_vars(kW) * w0.pow(r + 1) * w1.pow(ell - r);
  c.w_equations = {var("z1"), gap * w1 - w0 * BaseElem::x_pow(d.n), w1 * var("z2") - Rw * w0,
                   w1.pow(ell + 1) * (var("u2") - var("u1")) - sum};
  c.z_ideal = {Poly::constant(kY12, BaseElem::x_pow(d.n)), c.R, c.theta};

  c.R_bar = residue_mod_x(c.R).with_vars(kY12);
  c.theta_bar = residue_mod_x(c.theta).with_vars(kY12);
  c.residue_basis = groebner({c.R_bar, c.theta_bar});
  if (c.residue_basis.is_unit()) throw InternalConsistencyError("residue ideal of Z is the unit ideal");
  std::vector<RPoly> trunc;
  for (const auto& f : c.z_ideal) trunc.push_back(to_qx(f, d.n));
  trunc[0] = to_qx(Poly::constant(kY12, BaseElem::x_pow(d.n)));
  c.truncated_basis = groebner(trunc);
  if (c.truncated_basis.is_unit()) throw InternalConsistencyError("ideal of Z is the unit ideal");
  return c;
}

bool replay_certificate(const GammaCertificate& c) {
  try {
    GammaPoly g = gamma_poly(c.p_ell, c.q, c.ell);
    if (g.gamma != c.gamma || g.theta != c.theta) return false;
    if (divided_difference(c.Q) != c.R) return false;
    if (layered_membership(c.gamma, two_point_difference(c.Q), c.n).member) return false;
    auto E = e_recursion(c.p_ell, c.q, c.ell + 1);
    if (layered_membership(two_point_difference(E.back()), two_point_difference(c.Q), c.n).member) return false;
    if (groebner({residue_mod_x(c.R).with_vars(kY12), residue_mod_x(c.theta).with_vars(kY12)}).is_unit())
      return false;
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace lndkit
