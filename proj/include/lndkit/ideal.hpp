#pragma once

#include <string>
#include <vector>

#include "lndkit/calculus.hpp"

namespace lndkit {

// Univariate helpers on residue polynomials; the variable is the single one
// in use (or the first declared one for constants).
RPoly uni_gcd(const RPoly& f, const RPoly& g);
RPoly squarefree_part(const RPoly& f);
bool uni_divides(const RPoly& d, const RPoly& f);

// Sylvester determinant with the rows of f first (deg_var g rows of f's
// coefficients, then deg_var f rows of g's).  Zero when either input is zero.
RPoly resultant(const RPoly& f, const RPoly& g, const std::string& var);

// Minimal polynomial in `t` of multiplication by P on Q[y]/(p).
RPoly minimal_polynomial_mod(const RPoly& P, const RPoly& p, const std::string& y = "y",
                             const std::string& t = "t");

enum class MonomialOrder { Grevlex, Lex };

struct GroebnerBasis {
  VarList vars;
  MonomialOrder order = MonomialOrder::Grevlex;
  std::vector<RPoly> generators;  // reduced, monic, ascending leading monomials
  bool is_unit() const {
    return generators.size() == 1 && generators[0].is_constant() && !generators[0].is_zero();
  }
};

template <class P>
struct MembershipWitness {
  bool member = false;
  P target;
  std::vector<P> generators;
  std::vector<P> cofactors;
  std::string refusal;
  int refusal_layer = -1;

  // Re-expands the cofactor identity.
  bool verify() const {
    if (!member) return false;
    if (cofactors.size() != generators.size()) return false;
    P acc(target.vars());
    for (size_t i = 0; i < generators.size(); ++i) acc += cofactors[i] * generators[i];
    return acc == target;
  }
};

GroebnerBasis groebner(const std::vector<RPoly>& gens, MonomialOrder order = MonomialOrder::Grevlex);
bool unit_ideal(const std::vector<RPoly>& gens, MonomialOrder order = MonomialOrder::Grevlex);
MembershipWitness<RPoly> member(const RPoly& f, const std::vector<RPoly>& gens,
                                MonomialOrder order = MonomialOrder::Grevlex);
// Remainder of f by a Groebner basis.
RPoly normal_form(const RPoly& f, const GroebnerBasis& gb);

// Membership of f in (x^n, H) over A.  Generators are reported as [x^n, H].
MembershipWitness<Poly> layered_membership(const Poly& f, const Poly& H, int n);

// Runs layered_membership and, on polynomial data, the Groebner test over
// Q[x, vars]; a Groebner-positive, layered-negative pair raises
// InternalConsistencyError.
MembershipWitness<Poly> monitored_membership(const Poly& f, const Poly& H, int n);

}  // namespace lndkit
