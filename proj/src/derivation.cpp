#include "lndkit/derivation.hpp"

#include "lndkit/poly_text.hpp"

namespace lndkit {
namespace {

constexpr int kNilpotencyGuard = 10000;

void check_vars(const Poly& f, const VarList& allowed, const char* what) {
  for (const auto& v : f.used_vars())
    if (std::find(allowed.begin(), allowed.end(), v) == allowed.end())
      throw VariableError(std::string(what) + " uses variable '" + v + "' outside its domain");
}

Rational factorial(int k) {
  Rational r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

}  // namespace

std::string kind_name(NormalizationStep::Kind k) {
  switch (k) {
    case NormalizationStep::Kind::Z1Change: return "Z1Change";
    case NormalizationStep::Kind::ModificationChain: return "ModificationChain";
    case NormalizationStep::Kind::SharpReduction: return "SharpReduction";
    case NormalizationStep::Kind::Shear: return "Shear";
    case NormalizationStep::Kind::Monicize: return "Monicize";
  }
  return "?";
}

Poly Derivation::apply(const Poly& f) const {
  check_vars(f, vars, "polynomial");
  Poly out(vars);
  for (size_t i = 0; i < vars.size(); ++i) {
    if (!f.has_var(vars[i]) || images[i].is_zero()) continue;
    Poly df = differentiate(f, vars[i]);
    if (!df.is_zero()) out += (images[i] * df).with_vars(vars);
  }
  return out;
}

TriangularDerivation::TriangularDerivation(int n_, const Poly& q_, const Poly& p_) : n(n_) {
  if (n < 0) throw PreconditionError("n must be non-negative");
  check_vars(q_, {"y"}, "q");
  check_vars(p_, {"y", "z"}, "p");
  q = q_.with_vars(kVars);
  p = p_.with_vars(kVars);
}

Derivation TriangularDerivation::as_derivation() const {
  return {kVars, {Poly::constant(kVars, BaseElem::x_pow(n)), q, p}};
}

TwinDerivation::TwinDerivation(int n_, const Poly& pp, const Poly& pm, std::string zp, std::string zm)
    : n(n_), z_plus(std::move(zp)), z_minus(std::move(zm)) {
  if (n < 1) throw PreconditionError("twin derivations need n >= 1");
  check_vars(pp, {y}, "p_plus");
  check_vars(pm, {y}, "p_minus");
  p_plus = pp.with_vars(vars());
  p_minus = pm.with_vars(vars());
}

Derivation TwinDerivation::as_derivation() const {
  VarList v = vars();
  return {v, {Poly::constant(v, BaseElem::x_pow(n)), p_plus, p_minus}};
}

Poly apply_derivation(const TriangularDerivation& d, const Poly& f) { return d.as_derivation().apply(f); }
Poly apply_derivation(const TwinDerivation& d, const Poly& f) { return d.as_derivation().apply(f); }

std::vector<Poly> derivative_chain(const Derivation& d, const Poly& f) {
  std::vector<Poly> chain{f.with_vars(Poly::union_vars(d.vars, f.vars()))};
  for (int k = 0; k < kNilpotencyGuard; ++k) {
    Poly next = d.apply(chain.back());
    if (next.is_zero()) return chain;
    chain.push_back(std::move(next));
  }
  throw InternalError("derivation is not locally nilpotent on the given polynomial");
}

Poly flow_apply(const Derivation& d, const Poly& f, const std::string& t) {
  auto chain = derivative_chain(d, f);
  VarList vars = d.vars;
  vars.insert(vars.begin(), t);
  Poly out(vars);
  for (size_t k = 0; k < chain.size(); ++k)
    out += Poly::variable(vars, t, static_cast<int>(k)) * chain[k].with_vars(vars) *
           BaseElem(Rational(1) / factorial(static_cast<int>(k)));
  return out;
}

FlowMap exp_flow(const Derivation& d, const std::string& t) {
  FlowMap fm{d.vars, t, {}};
  for (const auto& v : d.vars) fm.images[v] = flow_apply(d, Poly::variable(d.vars, v), t);
  return fm;
}
FlowMap exp_flow(const TriangularDerivation& d, const std::string& t) { return exp_flow(d.as_derivation(), t); }
FlowMap exp_flow(const TwinDerivation& d, const std::string& t) { return exp_flow(d.as_derivation(), t); }

FpfResult fpf_check(const TriangularDerivation& d) {
  FpfResult r;
  if (d.n == 0) {
    r.fpf = true;
    r.reason = "n = 0: the image of y is a unit";
  } else {
    RPoly qbar = residue_mod_x(d.q).with_vars({"y"});
    RPoly pbar = residue_mod_x(d.p).with_vars({"y", "z"});
    if (qbar.is_zero()) {
      r.fpf = pbar.is_constant() && !pbar.is_zero();
      r.reason = r.fpf ? "residue of q vanishes and residue of p is a nonzero constant"
                       : "residue of q vanishes and residue of p is not a nonzero constant";
      if (!r.fpf) r.witness = pbar;
    } else {
      RPoly rad = squarefree_part(qbar);
      auto coeffs = pbar.coeffs_in("z");
      r.fpf = true;
      for (size_t k = 1; k < coeffs.size() && r.fpf; ++k) {
        RPoly pk = coeffs[k].with_vars({"y"});
        if (!uni_divides(rad, pk)) {
          r.fpf = false;
          r.reason = "squarefree part of the residue of q does not divide the z^" + std::to_string(k) +
                     " coefficient of the residue of p";
          r.witness = rad;
        }
      }
      if (r.fpf) {
        RPoly g = uni_gcd(qbar, coeffs[0].with_vars({"y"}));
        if (!g.is_constant()) {
          r.fpf = false;
          r.reason = "residues of q and of the z-free part of p share a root";
          r.witness = g;
        }
      }
      if (r.fpf) r.reason = "residues of q and p have no common zero";
    }
  }
  if (r.fpf != fpf_resultant_oracle(d))
    throw InternalConsistencyError("fixed-point test disagrees with the resultant oracle");
  return r;
}

FpfResult fpf_check(const TwinDerivation& d) {
  FpfResult r;
  RPoly a = residue_mod_x(d.p_plus).with_vars({d.y}), b = residue_mod_x(d.p_minus).with_vars({d.y});
  if (a.is_zero() && b.is_zero()) {
    r.reason = "both residues vanish";
    r.witness = a;
  } else {
    RPoly g = uni_gcd(a, b);
    r.fpf = g.is_constant();
    r.reason = r.fpf ? "residues are coprime" : "residues share a root";
    if (!r.fpf) r.witness = g;
  }
  if (r.fpf != fpf_resultant_oracle(d))
    throw InternalConsistencyError("fixed-point test disagrees with the resultant oracle");
  return r;
}

bool fpf_resultant_oracle(const TriangularDerivation& d) {
  if (d.n == 0) return true;
  RPoly qbar = residue_mod_x(d.q).with_vars({"y", "z"});
  RPoly pbar = residue_mod_x(d.p).with_vars({"y", "z"});
  if (qbar.is_zero()) return pbar.is_constant() && !pbar.is_zero();
  if (qbar.is_constant()) return true;
  if (pbar.is_zero()) return false;
  // Res_y(q, p) = lc(q)^k prod_{q(a)=0} p(a, z): a nonzero constant iff no fiber has a zero
  RPoly res = resultant(qbar, pbar, "y");
  return res.is_constant() && !res.is_zero();
}

bool fpf_resultant_oracle(const TwinDerivation& d) {
  RPoly a = residue_mod_x(d.p_plus).with_vars({d.y}), b = residue_mod_x(d.p_minus).with_vars({d.y});
  if (a.is_zero()) return b.is_constant() && !b.is_zero();
  if (b.is_zero()) return a.is_constant() && !a.is_zero();
  return !resultant(a, b, d.y).is_zero();
}

NotASliceError::NotASliceError(const Poly& img)
    : Error("not a slice: derivative is " + format(img)), image(img) {}

Poly dixmier(const Derivation& d, const Poly& s, const Poly& f) {
  auto chain = derivative_chain(d, f);
  VarList vars = Poly::union_vars(d.vars, f.vars());
  Poly out(vars);
  Poly minus_s_pow = Poly::constant(vars, BaseElem(1));
  Poly minus_s = (-s).with_vars(vars);
  for (size_t k = 0; k < chain.size(); ++k) {
    out += minus_s_pow * chain[k] * BaseElem(Rational(1) / factorial(static_cast<int>(k)));
    minus_s_pow *= minus_s;
  }
  return out;
}

void check_slice(const Derivation& d, const Poly& s) {
  Poly ds = d.apply(s);
  if (ds != Poly::constant(d.vars, BaseElem(1))) throw NotASliceError(ds);
}

SliceCertificate verify_slice(const Derivation& d, const Poly& s) {
  check_slice(d, s);
  SliceCertificate cert;
  cert.s = s.with_vars(d.vars);
  for (const auto& v : d.vars) {
    Poly k = dixmier(d, s, Poly::variable(d.vars, v));
    if (!d.apply(k).is_zero()) throw InternalError("Dixmier image not in the kernel");
    cert.kernel_generators.push_back(k);
  }
  return cert;
}

bool slice_reconstruction_check(const Derivation& d, const SliceCertificate& cert) {
  SubstMap<BaseElem> to_kernel;
  for (size_t i = 0; i < d.vars.size(); ++i) to_kernel[d.vars[i]] = cert.kernel_generators[i];
  for (const auto& v : d.vars) {
    auto chain = derivative_chain(d, Poly::variable(d.vars, v));
    Poly acc(d.vars), s_pow = Poly::constant(d.vars, BaseElem(1));
    for (size_t k = 0; k < chain.size(); ++k) {
      acc += s_pow * substitute(chain[k], to_kernel).with_vars(d.vars) *
             BaseElem(Rational(1) / factorial(static_cast<int>(k)));
      s_pow *= cert.s;
    }
    if (acc != Poly::variable(d.vars, v)) return false;
  }
  return true;
}

Poly antiderivative_y(const Poly& f, const std::string& y) {
  if (!f.has_var(y)) {
    VarList v = f.vars();
    v.insert(v.begin(), y);
    return integrate_from_zero(f.with_vars(v), y);
  }
  return integrate_from_zero(f, y);
}

std::vector<Poly> basic_invariants(const TriangularDerivation& d) {
  const auto& V = TriangularDerivation::kVars;
  Poly v = (Poly::variable(V, "z") * BaseElem::x_pow(d.n) - antiderivative_y(d.q)).with_vars(V);
  if (!apply_derivation(d, v).is_zero()) throw InternalError("x^n z - Q(y) is not invariant");
  return {v};
}

std::vector<Poly> basic_invariants(const TwinDerivation& d) {
  VarList V = d.vars();
  std::vector<Poly> out;
  for (const auto& [z, p] : {std::pair{d.z_plus, d.p_plus}, std::pair{d.z_minus, d.p_minus}}) {
    Poly phi = (antiderivative_y(p, d.y) - Poly::variable(V, z) * BaseElem::x_pow(d.n)).with_vars(V);
    if (!apply_derivation(d, phi).is_zero()) throw InternalError("twin invariant not killed");
    out.push_back(phi);
  }
  return out;
}

}  // namespace lndkit
