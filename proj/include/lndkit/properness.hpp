#pragma once

#include <vector>

#include "lndkit/reduction.hpp"

namespace lndkit {

// Polynomials in (y1, y2).
struct GammaPoly {
  Poly gamma;  // integral of p_r(xi) (Q(xi) - Q(y1))^r from y1 to y2
  Poly theta;  // gamma / (y2 - y1)^(r+1)
};
GammaPoly gamma_poly(const Poly& p_r, const Poly& q, int r);
// (F(y2) - F(y1)) / (y2 - y1) for F in y.
Poly divided_difference(const Poly& F);
// F(y2) - F(y1)
Poly two_point_difference(const Poly& F);

// E_1 = int_0^y p, E_{k+1} = int_0^y E_k q; returns E_1 .. E_{count}.
std::vector<Poly> e_recursion(const Poly& p, const Poly& q, int count);

struct GammaMembership {
  bool member = false;
  MembershipWitness<Poly> layered;  // E_{ell+1}(y2) - E_{ell+1}(y1) in (x^n, Q(y2) - Q(y1))
  DecomposeResult decomposition;    // p = q f(Q) + x^n g
};
GammaMembership gamma_membership(const Poly& p_ell, const Poly& q, int n, int ell);

struct GammaCertificate {
  int n = 0;
  int ell = 0;
  Poly q, p_ell, Q;
  Poly gamma, theta, R;
  std::vector<Poly> thetas;  // r = 0 .. ell
  // w-equations in (w0, w1, y1, y2, z1, z2, u1, u2); boundary w1 = 0
  std::vector<Poly> w_equations;
  std::vector<Poly> z_ideal;  // x^n, R, theta
  RPoly R_bar, theta_bar;
  GroebnerBasis residue_basis;   // of (R_bar, theta_bar)
  GroebnerBasis truncated_basis; // of (x^n, R, theta) over Q[x, y1, y2]
  MembershipWitness<Poly> gamma_refusal;
  GammaMembership routes;
};

GammaCertificate non_properness_certificate(const TriangularDerivation& d, int ell, const Poly& p_ell);
// Re-runs the checks recorded in the certificate without any search.
bool replay_certificate(const GammaCertificate& c);

}  // namespace lndkit
