#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lndkit/atlas.hpp"
#include "lndkit/properness.hpp"
#include "lndkit/reduction.hpp"

namespace lndkit {

enum class Verdict { NotFixedPointFree, Translation, NonProper, ChartsAffineConditionallyTranslation, Undecided };
std::string verdict_name(Verdict v);

struct DriverOptions {
  int shear_budget = 100;
  int max_steps = 64;
  std::vector<SplittingData> splittings;
};

using DerivationInput = std::variant<TriangularDerivation, TwinDerivation>;

struct SliceResult {
  Poly slice;                   // in the coordinates of `coordinates_of`
  bool original_coordinates = false;
  Derivation checked_against;   // derivation for which d s = 1 was re-verified
  std::optional<Poly> invariant;
};

struct AtlasResult {
  GeneralPositionData general_position;
  TwinDerivation normalized;
  std::vector<AtlasSide> sides;
};

struct ClassificationReport {
  DerivationInput input;
  Verdict verdict = Verdict::Undecided;
  std::string reason;
  // a step that only identifies quotients was used, so the verdict concerns
  // the original derivation through that identification
  bool classification_equivalence = false;
  FpfResult fpf;
  std::optional<SliceResult> slice;
  std::optional<GammaCertificate> gamma;
  bool gamma_replayed = false;
  std::optional<AtlasResult> atlas;
  std::vector<NormalizationStep> trail;
  std::map<std::string, double> timings_ms;
};

ClassificationReport classify(const DerivationInput& input, const DriverOptions& opts = {});

}  // namespace lndkit
