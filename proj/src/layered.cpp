#include "lndkit/ideal.hpp"

namespace lndkit {

MembershipWitness<Poly> layered_membership(const Poly& f, const Poly& H, int n) {
  if (n < 1) throw PreconditionError("layered membership needs n >= 1");
  RPoly Hbar = residue_mod_x(H);
  if (Hbar.is_zero()) throw DegenerateError("residue of H vanishes");
  VarList vars = Poly::union_vars(f.vars(), H.vars());
  MembershipWitness<Poly> w;
  w.target = f.with_vars(vars);
  w.generators = {Poly::constant(vars, BaseElem::x_pow(n)), H.with_vars(vars)};
  Poly rem = w.target;
  Poly cofH(vars);
  for (int j = 0; j < n; ++j) {
    if (rem.is_zero()) break;
    RPoly rbar = residue_mod_x(rem);
    auto [qbar, r] = divide(rbar, Hbar);
    if (!r.is_zero()) {
      w.refusal = "layer " + std::to_string(j) + ": residue not divisible by the residue of H";
      w.refusal_layer = j;
      return w;
    }
    Poly c = lift(qbar).with_vars(vars);
    cofH += mul_x_pow(c, j);
    rem = div_x_pow(rem - c * w.generators[1], 1);
  }
  w.member = true;
  // after the loop f = cofH*H + x^j*rem for the last layer index j; rem is zero on early exit
  w.cofactors = {rem, cofH};
  if (!w.verify()) throw InternalError("layered membership cofactors do not re-expand");
  return w;
}

MembershipWitness<Poly> monitored_membership(const Poly& f, const Poly& H, int n) {
  MembershipWitness<Poly> w = layered_membership(f, H, n);
  bool polynomial = true;
  for (const Poly* p : {&f, &H})
    for (const auto& [m, c] : p->terms())
      if (!c.is_polynomial()) polynomial = false;
  if (!polynomial) return w;
  RPoly xn = to_qx(Poly::constant(f.vars(), BaseElem::x_pow(n)));
  auto gw = member(to_qx(f), {xn, to_qx(H)});
  if (gw.member && !w.member)
    throw InternalConsistencyError("Groebner membership positive but layered membership negative");
  return w;
}

}  // namespace lndkit
