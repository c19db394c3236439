#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lndkit/cover_ring.hpp"
#include "lndkit/derivation.hpp"

namespace lndkit {

struct GeneralPositionData {
  bool plus_fix = false;  // z_plus -> z_plus + z_minus applied first
  Rational shear_a = 1, shear_b = 0;  // z_minus -> a z_minus + b z_plus
  Rational scale_plus = 1, scale_minus = 1;
  Poly P_plus, P_minus;            // integrals of the images, in y
  RPoly alpha_plus, alpha_minus;   // branch polynomials, in t
  Poly Phi_plus, Phi_minus;        // -x^n z + P(y)
  Poly Gamma_plus, Gamma_minus;    // alpha(Phi)
  // bezout_plus * alpha_+(P_+bar) + bezout_minus * alpha_-(P_-bar) = 1 in Q[y]
  RPoly bezout_plus, bezout_minus;
  int candidates_tried = 0;
};

// Branch polynomial of y -> P(y): minimal polynomial of P modulo P'.
RPoly branch_polynomial(const RPoly& P_bar);
// Checks both general position conditions on residues.
bool in_general_position(const RPoly& p_plus_bar, const RPoly& p_minus_bar);

std::pair<TwinDerivation, GeneralPositionData> general_position(const TwinDerivation& d, int budget = 100);

// Element num / alpha^alpha_pow of the cover ring, num a polynomial string in t and s.
struct CoverText {
  std::string num;
  int alpha_pow = 0;
  CoverText() = default;
  CoverText(std::string n, int k = 0) : num(std::move(n)), alpha_pow(k) {}
  CoverText(const char* n) : num(n) {}
};

// User supplied splitting of P_bar(y) - t.
struct SplittingData {
  std::string alpha, P_bar, modulus;
  std::vector<CoverText> roots;
  struct Galois {
    CoverText s_image;
    std::vector<int> perm;
  };
  std::vector<Galois> galois;
};

struct SplittingAlgebra {
  RPoly P_bar;  // monic, in y
  CoverRing ring;
  std::vector<CoverElem> roots;  // in (t, s)
  struct Galois {
    CoverElem s_image;
    std::vector<int> perm;  // g(root_i) = root_perm[i]
  };
  std::vector<Galois> galois;
  std::string source;
};

SplittingAlgebra splitting_build(const RPoly& P_bar, const RPoly& alpha,
                                 const std::vector<SplittingData>& user = {});
SplittingAlgebra splitting_from_data(const SplittingData& data);
// Product identity, unit differences and Galois permutation; throws on failure.
void verify_splitting(const SplittingAlgebra& S);

struct LiftedRoots {
  std::vector<CoverElem> sigma;
  // per step m, per root: mu and lambda
  std::vector<std::vector<CoverElem>> mu, lambda;
};
LiftedRoots hensel_lift_sigmas(const Poly& P, const SplittingAlgebra& S, int n);

struct S1S2 {
  CoverElem S1, S2;  // polynomials in y over R
};
S1S2 s1_s2_factor(const Poly& P, const SplittingAlgebra& S, const std::vector<CoverElem>& sigma, int n);

struct Chart {
  CoverElem u_numerator;  // y - sigma; the chart coordinate is this over x^n
  CoverElem v;            // in (t, s, w, z) with w the chart coordinate
};

struct CocycleEntry {
  int a = 0, b = 0;
  CoverElem numerator;  // P(sigma_a) - P(sigma_b); f = numerator / x^n
  bool has_form = false;
  int m = 0;
  CoverElem F;  // f = x^-m F with F of x-order 0
};

struct Cocycle {
  int n = 0;
  int size = 0;
  std::vector<CocycleEntry> entries;  // ordered pairs a != b
  const CocycleEntry& at(int a, int b) const;
};

// The chart variable z carries the name used for the second coordinate.
Cocycle chart_cocycle(const CoverRing& R, const std::vector<CoverElem>& sigma, const Poly& P_other, int n,
                      const std::string& zvar, std::vector<Chart>* charts = nullptr);
// Raw cocycle from numerators (for synthetic atlases).
Cocycle cocycle_from_sigmas(const CoverRing& R, const std::vector<CoverElem>& sigma, const Poly& P_other, int n);
bool cocycle_identities_hold(const CoverRing& R, const Cocycle& c);

struct PairVerdict {
  int a = 0, b = 0;
  bool ok = false;
  std::string reason;
  UnitTest test;
};
struct SeparatednessResult {
  bool separated = false;
  int witness_a = -1, witness_b = -1;
  std::vector<PairVerdict> pairs;
};
SeparatednessResult separatedness_check(const CoverRing& R, const Cocycle& c);

struct AffinenessNode {
  std::vector<int> charts;
  int g = -1, g_prime = -1, m = 0;
  std::map<int, CoverElem> theta;
  CoverElem w, h;  // w theta_{g'} - h x = 1
  std::vector<AffinenessNode> children;
};
struct AffinenessCertificate {
  AffinenessNode root;
  int depth = 0;
};
AffinenessCertificate psi_affineness(const CoverRing& R, const Cocycle& c, const SeparatednessResult& sep);
bool verify_affineness(const CoverRing& R, const Cocycle& c, const AffinenessCertificate& cert);

struct AtlasSide {
  bool plus = true;
  bool supported = false;
  std::string reason;
  SplittingAlgebra splitting;
  LiftedRoots lifted;
  S1S2 factors;
  std::vector<Chart> charts;
  Cocycle cocycle;
  SeparatednessResult separatedness;
  std::optional<AffinenessCertificate> affineness;
};
AtlasSide build_atlas(const TwinDerivation& d, const GeneralPositionData& gp, bool plus_side,
                      const std::vector<SplittingData>& user = {});

}  // namespace lndkit
