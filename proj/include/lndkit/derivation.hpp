#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lndkit/ideal.hpp"

namespace lndkit {

// Coordinate change recorded while normalizing a derivation.  `forward`
// expresses each changed new coordinate in the old ones, `inverse` the old
// ones in the new; a slice in new coordinates maps back through `forward`.
struct NormalizationStep {
  enum class Kind { Z1Change, ModificationChain, SharpReduction, Shear, Monicize };
  Kind kind;
  VarList from_vars;
  VarList to_vars;
  std::map<std::string, Poly> forward;
  std::map<std::string, Poly> inverse;
  // false for the modification chain, which only identifies quotients
  bool isomorphism = true;
  std::map<std::string, Poly> data;
  std::map<std::string, long> ints;
  std::string note;
};

std::string kind_name(NormalizationStep::Kind k);

// Derivation of A[vars] given by the images of the variables.
struct Derivation {
  VarList vars;
  std::vector<Poly> images;
  Poly apply(const Poly& f) const;
};

// x^n d/dy + q(y) d/dz + p(y,z) d/du on A[y,z,u].
struct TriangularDerivation {
  int n = 0;
  Poly q;
  Poly p;
  std::vector<NormalizationStep> trail;

  static inline const VarList kVars{"y", "z", "u"};
  TriangularDerivation() = default;
  TriangularDerivation(int n_, const Poly& q_, const Poly& p_);
  int ell() const { return p.degree("z"); }  // -1 when p = 0
  Derivation as_derivation() const;
};

// x^n d/dy + p_plus(y) d/dz_plus + p_minus(y) d/dz_minus.  Coordinate names
// are kept from the source derivation when it came out of a reduction.
struct TwinDerivation {
  int n = 1;
  Poly p_plus;
  Poly p_minus;
  std::string y = "y", z_plus = "zp", z_minus = "zm";
  std::vector<NormalizationStep> trail;

  TwinDerivation() = default;
  TwinDerivation(int n_, const Poly& pp, const Poly& pm, std::string zp = "zp", std::string zm = "zm");
  VarList vars() const { return {y, z_plus, z_minus}; }
  Derivation as_derivation() const;
};

Poly apply_derivation(const TriangularDerivation& d, const Poly& f);
Poly apply_derivation(const TwinDerivation& d, const Poly& f);

// exp(t d) applied to the coordinates.
struct FlowMap {
  VarList vars;
  std::string t = "t";
  std::map<std::string, Poly> images;
};
FlowMap exp_flow(const Derivation& d, const std::string& t = "t");
FlowMap exp_flow(const TriangularDerivation& d, const std::string& t = "t");
FlowMap exp_flow(const TwinDerivation& d, const std::string& t = "t");
// exp(t d) f computed directly from iterated derivatives of f.
Poly flow_apply(const Derivation& d, const Poly& f, const std::string& t = "t");
// Iterated derivatives f, d f, d^2 f, ... up to the last nonzero one.
std::vector<Poly> derivative_chain(const Derivation& d, const Poly& f);

struct FpfResult {
  bool fpf = false;
  std::string reason;
  RPoly witness;  // common factor or offending residue when not fpf
};
FpfResult fpf_check(const TriangularDerivation& d);
FpfResult fpf_check(const TwinDerivation& d);
// Independent test through resultants of the residues.
bool fpf_resultant_oracle(const TriangularDerivation& d);
bool fpf_resultant_oracle(const TwinDerivation& d);

struct NotASliceError : Error {
  Poly image;
  explicit NotASliceError(const Poly& img);
};

struct SliceCertificate {
  Poly s;
  std::vector<Poly> kernel_generators;  // Dixmier images of the coordinates
  std::optional<Poly> invariant;        // x^n z - Q(y) when applicable
};

// Throws NotASliceError unless d s = 1.
void check_slice(const Derivation& d, const Poly& s);
SliceCertificate verify_slice(const Derivation& d, const Poly& s);
Poly dixmier(const Derivation& d, const Poly& s, const Poly& f);
// Each coordinate equals sum_k s^k/k! (d^k coord)(kernel generators).
bool slice_reconstruction_check(const Derivation& d, const SliceCertificate& cert);

std::vector<Poly> basic_invariants(const TriangularDerivation& d);
std::vector<Poly> basic_invariants(const TwinDerivation& d);

// Integral from zero in y, e.g. Q = int_0^y q.
Poly antiderivative_y(const Poly& f, const std::string& y = "y");

}  // namespace lndkit
