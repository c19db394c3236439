#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lndkit/derivation.hpp"

namespace lndkit {

// Slice of x^n d/dy + q d/dz where the residue of q is a nonzero constant;
// q may carry parameters (variables other than y, z).
Poly constant_residue_slice_builder(int n, const Poly& q, const std::string& y = "y",
                                    const std::string& z = "z");

// Slice for the n = 0 and constant-residue cases; nullopt otherwise.
std::optional<SliceCertificate> easy_translation(const TriangularDerivation& d);

struct ReducibleQResult {
  // true: q was absorbed into z1 (stored under the name z), leaving q = 0
  bool z1_change = false;
  int mu = 0;
  TriangularDerivation derivation;
  NormalizationStep step;
};
// Requires residue of q zero, q nonzero, n >= 1 and fixed point freeness.
std::optional<ReducibleQResult> reducible_q_normalize(const TriangularDerivation& d);

struct DecomposeResult {
  bool ok = false;
  Poly f;  // in tau, coefficients reduced mod x^n
  Poly g;  // in y
  int refusal_layer = -1;
  std::string reason;
};
// Solves p_ell = q f(Q) + x^n g with Q the integral of q from 0.
DecomposeResult sharp_decompose(const Poly& p_ell, const Poly& q, int n);

struct SharpReduceResult {
  bool twin = false;
  TwinDerivation twin_derivation;
  // derivation reached when the decomposition refused
  TriangularDerivation current;
  int ell = -1;
  Poly p_ell;
  DecomposeResult refusal;
};
SharpReduceResult sharp_reduce(const TriangularDerivation& d, int max_steps = 64);

// Twin derivation whose residues allow a slice after at most a shear.
std::optional<SliceCertificate> twin_constant_residue_slice(const TwinDerivation& d,
                                                            std::vector<NormalizationStep>* steps);

// Expresses a polynomial in the coordinates before the trail.  Stops at the
// first step that is not an isomorphism and reports how far it got.
struct ReplayResult {
  Poly value;
  size_t steps_replayed = 0;
  bool complete = false;
};
ReplayResult replay_to_original(const Poly& f, const std::vector<NormalizationStep>& trail);

}  // namespace lndkit
