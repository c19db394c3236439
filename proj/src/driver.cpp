#include "lndkit/driver.hpp"

#include <chrono>

namespace lndkit {
namespace {

class Stopwatch {
 public:
  explicit Stopwatch(std::map<std::string, double>& out) : out_(out) {}
  template <class F>
  auto time(const std::string& key, F&& f) {
    auto start = std::chrono::steady_clock::now();
    struct Record {
      std::map<std::string, double>& out;
      std::string key;
      std::chrono::steady_clock::time_point start;
      ~Record() {
        out[key] += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      }
    } rec{out_, key, start};
    return f();
  }

 private:
  std::map<std::string, double>& out_;
};

bool has_non_isomorphism(const std::vector<NormalizationStep>& trail) {
  for (const auto& st : trail)
    if (!st.isomorphism) return true;
  return false;
}

// Maps a slice of the normalized derivation back and re-verifies it.
SliceResult finish_slice(const Poly& s, const Derivation& normalized, const std::vector<NormalizationStep>& trail,
                         const Derivation& original) {
  SliceResult out;
  ReplayResult back = replay_to_original(s, trail);
  if (back.complete) {
    Poly in_orig = back.value.with_vars(Poly::union_vars(original.vars, back.value.vars()));
    check_slice(original, in_orig);
    out.slice = in_orig.with_vars(original.vars);
    out.original_coordinates = true;
    out.checked_against = original;
  } else {
    check_slice(normalized, s);
    out.slice = s;
    out.checked_against = normalized;
  }
  return out;
}

void run_atlas(ClassificationReport& rep, const TwinDerivation& twin, const DriverOptions& opts, Stopwatch& sw) {
  AtlasResult ar;
  try {
    auto [tw, gp] = sw.time("general_position", [&] { return general_position(twin, opts.shear_budget); });
    ar.normalized = tw;
    ar.general_position = gp;
  } catch (const SearchBudgetError& e) {
    rep.verdict = Verdict::Undecided;
    rep.reason = std::string("general position search: ") + e.what();
    rep.trail = twin.trail;
    return;
  }
  rep.trail = ar.normalized.trail;
  bool all_separated = true;
  std::string unsupported;
  for (bool plus : {true, false}) {
    AtlasSide side = sw.time(plus ? "atlas_plus" : "atlas_minus", [&] {
      return build_atlas(ar.normalized, ar.general_position, plus, opts.splittings);
    });
    if (!side.supported) {
      all_separated = false;
      if (!unsupported.empty()) unsupported += "; ";
      unsupported += (plus ? "plus side: " : "minus side: ") + side.reason;
    } else if (!side.separatedness.separated) {
      all_separated = false;
      ar.sides.push_back(side);
      rep.verdict = Verdict::NonProper;
      const auto& pv = side.separatedness.pairs;
      std::string detail;
      for (const auto& v : pv)
        if (!v.ok) {
          detail = v.reason;
          break;
        }
      rep.reason = std::string("atlas over the ") + (plus ? "plus" : "minus") + " side is not separated: " + detail;
      rep.atlas = ar;
      return;
    }
    ar.sides.push_back(side);
  }
  rep.atlas = ar;
  if (all_separated) {
    rep.verdict = Verdict::ChartsAffineConditionallyTranslation;
    rep.reason = "both atlases separated with affine chart certificates; gluing across atlases is not certified";
  } else {
    rep.verdict = Verdict::Undecided;
    rep.reason = "no separatedness witness; " + unsupported;
  }
}

void classify_twin(ClassificationReport& rep, const TwinDerivation& twin, const Derivation& original,
                   const DriverOptions& opts, Stopwatch& sw) {
  std::vector<NormalizationStep> extra;
  auto cert = sw.time("twin_slice", [&] { return twin_constant_residue_slice(twin, &extra); });
  if (cert) {
    rep.verdict = Verdict::Translation;
    rep.reason = "constant residue after at most a shear";
    rep.trail = twin.trail;
    rep.trail.insert(rep.trail.end(), extra.begin(), extra.end());
    rep.slice = finish_slice(cert->s, twin.as_derivation(), twin.trail, original);
    rep.slice->invariant = cert->invariant;
    return;
  }
  run_atlas(rep, twin, opts, sw);
}

void classify_triangular(ClassificationReport& rep, const TriangularDerivation& input, const DriverOptions& opts,
                         Stopwatch& sw) {
  const Derivation original = input.as_derivation();
  if (auto c = sw.time("easy_translation", [&] { return easy_translation(input); })) {
    rep.verdict = Verdict::Translation;
    rep.reason = "n = 0 or constant residue of q";
    rep.slice = finish_slice(c->s, original, {}, original);
    rep.slice->invariant = c->invariant;
    return;
  }
  TriangularDerivation d = input;
  while (!d.q.is_zero() && residue_mod_x(d.q).is_zero()) {
    auto res = sw.time("reducible_q", [&] { return reducible_q_normalize(d); });
    if (!res) break;
    d = res->derivation;
    if (auto c = easy_translation(d)) {
      rep.verdict = Verdict::Translation;
      rep.reason = "constant residue after normalizing q";
      rep.trail = d.trail;
      rep.slice = finish_slice(c->s, d.as_derivation(), d.trail, original);
      return;
    }
  }
  if (d.q.is_zero()) {
    // fixed point freeness forces a nonzero constant residue of p
    Poly p = d.p;
    Poly s = sw.time("slice_builder", [&] { return constant_residue_slice_builder(d.n, p, "y", "u"); });
    rep.verdict = Verdict::Translation;
    rep.reason = "q vanishes after normalization; slice built in u";
    rep.trail = d.trail;
    rep.slice = finish_slice(s.with_vars(TriangularDerivation::kVars), d.as_derivation(), d.trail, original);
    return;
  }
  auto red = sw.time("sharp_reduce", [&] { return sharp_reduce(d, opts.max_steps); });
  if (!red.twin) {
    rep.trail = red.current.trail;
    rep.gamma = sw.time("gamma_certificate",
                        [&] { return non_properness_certificate(red.current, red.ell, red.p_ell); });
    rep.gamma_replayed = sw.time("gamma_replay", [&] { return replay_certificate(*rep.gamma); });
    if (!rep.gamma_replayed) throw InternalConsistencyError("non-properness certificate does not replay");
    rep.verdict = Verdict::NonProper;
    rep.reason = "leading coefficient in u is not decomposable at z-degree " + std::to_string(red.ell) +
                 "; truncated ideal is proper";
    return;
  }
  classify_twin(rep, red.twin_derivation, original, opts, sw);
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::NotFixedPointFree: return "NotFixedPointFree";
    case Verdict::Translation: return "Translation";
    case Verdict::NonProper: return "NonProper";
    case Verdict::ChartsAffineConditionallyTranslation: return "ChartsAffine-ConditionallyTranslation";
    case Verdict::Undecided: return "Undecided";
  }
  return "Undecided";
}

ClassificationReport classify(const DerivationInput& input, const DriverOptions& opts) {
  ClassificationReport rep;
  rep.input = input;
  Stopwatch sw(rep.timings_ms);
  auto total_start = std::chrono::steady_clock::now();
  std::visit([&](const auto& d) { rep.fpf = sw.time("fpf", [&] { return fpf_check(d); }); }, input);
  if (!rep.fpf.fpf) {
    rep.verdict = Verdict::NotFixedPointFree;
    rep.reason = rep.fpf.reason;
  } else if (const auto* tri = std::get_if<TriangularDerivation>(&input)) {
    classify_triangular(rep, *tri, opts, sw);
  } else {
    const auto& twin = std::get<TwinDerivation>(input);
    classify_twin(rep, twin, twin.as_derivation(), opts, sw);
  }
  rep.classification_equivalence = has_non_isomorphism(rep.trail);
  rep.timings_ms["total"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - total_start).count();
  return rep;
}

}  // namespace lndkit
