#include "lndkit/report.hpp"

#include <sstream>

#include "lndkit/poly_text.hpp"

namespace lndkit {
namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    int line = 1, column = 1;
    size_t end = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("malformed JSON", line, column);
  }
}

void check_version(const json& j) {
  if (!j.is_object()) throw SchemaError("top level must be an object");
  if (j.contains("version") && (!j["version"].is_number_integer() || j["version"].get<int>() != kReportVersion))
    throw SchemaError("unknown schema version " + j["version"].dump());
}

std::string field_string(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_string()) throw SchemaError("field '" + key + "' must be a string");
  return j[key].get<std::string>();
}

Poly field_poly(const json& j, const std::string& key, const VarList& vars) {
  try {
    return parse_poly(field_string(j, key), vars);
  } catch (const ParseError& e) {
    throw ParseError("field '" + key + "': " + e.detail, e.line, e.column);
  }
}

json trail_json(const std::vector<NormalizationStep>& trail) {
  json out = json::array();
  for (const auto& st : trail) {
    json s;
    s["kind"] = kind_name(st.kind);
    s["isomorphism"] = st.isomorphism;
    for (const auto& [k, v] : st.forward) s["forward"][k] = format(v);
    for (const auto& [k, v] : st.inverse) s["inverse"][k] = format(v);
    for (const auto& [k, v] : st.data) s["data"][k] = format(v);
    for (const auto& [k, v] : st.ints) s["ints"][k] = v;
    if (!st.note.empty()) s["note"] = st.note;
    out.push_back(s);
  }
  return out;
}

json basis_json(const GroebnerBasis& g) {
  json out = json::array();
  for (const auto& p : g.generators) out.push_back(format(p));
  return out;
}

json polys_json(const std::vector<Poly>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(format(p));
  return out;
}

json gamma_json(const GammaCertificate& c, bool replayed) {
  json j;
  j["kind"] = "gamma";
  j["n"] = c.n;
  j["ell"] = c.ell;
  j["q"] = format(c.q);
  j["p_ell"] = format(c.p_ell);
  j["Q"] = format(c.Q);
  j["gamma"] = format(c.gamma);
  j["theta"] = format(c.theta);
  j["R"] = format(c.R);
  j["thetas"] = polys_json(c.thetas);
  j["w_equations"] = polys_json(c.w_equations);
  j["z_ideal"] = polys_json(c.z_ideal);
  j["R_bar"] = format(c.R_bar);
  j["theta_bar"] = format(c.theta_bar);
  j["residue_basis"] = basis_json(c.residue_basis);
  j["truncated_basis"] = basis_json(c.truncated_basis);
  j["membership_refusal"] = c.gamma_refusal.refusal;
  j["replayed"] = replayed;
  return j;
}

json side_json(const AtlasSide& side) {
  json j;
  j["side"] = side.plus ? "plus" : "minus";
  j["supported"] = side.supported;
  if (!side.supported) {
    j["reason"] = side.reason;
    return j;
  }
  const CoverRing& R = side.splitting.ring;
  j["splitting"]["source"] = side.splitting.source;
  j["splitting"]["P_bar"] = format(side.splitting.P_bar);
  j["splitting"]["modulus"] = format(R.modulus());
  j["splitting"]["alpha"] = format(R.alpha());
  for (const auto& r : side.splitting.roots) j["splitting"]["roots"].push_back(R.to_string(r));
  for (const auto& s : side.lifted.sigma) j["sigma"].push_back(R.to_string(s));
  j["S1"] = R.to_string(side.factors.S1);
  j["S2"] = R.to_string(side.factors.S2);
  for (const auto& ch : side.charts) j["charts"].push_back({{"u_numerator", R.to_string(ch.u_numerator)}, {"v", R.to_string(ch.v)}});
  j["cocycle"] = json::array();
  for (const auto& e : side.cocycle.entries) {
    if (e.a > e.b) continue;
    json c{{"a", e.a}, {"b", e.b}, {"numerator", R.to_string(e.numerator)}, {"has_form", e.has_form}};
    if (e.has_form) {
      c["m"] = e.m;
      c["F"] = R.to_string(e.F);
    }
    j["cocycle"].push_back(c);
  }
  j["separated"] = side.separatedness.separated;
  j["pairs"] = json::array();
  for (const auto& v : side.separatedness.pairs) {
    json p{{"a", v.a}, {"b", v.b}, {"ok", v.ok}};
    if (!v.reason.empty()) p["reason"] = v.reason;
    if (!v.test.norm.is_zero()) {
      p["norm"] = format(v.test.norm);
      p["non_unit_factor"] = format(v.test.non_unit_factor);
    }
    j["pairs"].push_back(p);
  }
  if (!side.separatedness.separated) {
    j["witness"] = {side.separatedness.witness_a, side.separatedness.witness_b};
  }
  if (side.affineness) j["affineness_depth"] = side.affineness->depth;
  return j;
}

json certificate_json(const ClassificationReport& rep) {
  if (!rep.fpf.fpf) {
    return {{"kind", "fixed_point"}, {"reason", rep.fpf.reason}, {"witness", format(rep.fpf.witness)}};
  }
  if (rep.slice) {
    json j{{"kind", "slice"},
           {"slice", format(rep.slice->slice)},
           {"coordinates", rep.slice->original_coordinates ? "original" : "normalized"},
           {"verified", true}};
    if (rep.slice->invariant) j["invariant"] = format(*rep.slice->invariant);
    return j;
  }
  if (rep.gamma) return gamma_json(*rep.gamma, rep.gamma_replayed);
  if (rep.atlas) {
    const auto& gp = rep.atlas->general_position;
    json j;
    j["kind"] = "atlas";
    j["general_position"] = {{"plus_fix", gp.plus_fix},
                             {"shear", {to_string(gp.shear_a), to_string(gp.shear_b)}},
                             {"scales", {to_string(gp.scale_plus), to_string(gp.scale_minus)}},
                             {"P_plus", format(gp.P_plus)},
                             {"P_minus", format(gp.P_minus)},
                             {"alpha_plus", format(gp.alpha_plus)},
                             {"alpha_minus", format(gp.alpha_minus)},
                             {"Phi_plus", format(gp.Phi_plus)},
                             {"Phi_minus", format(gp.Phi_minus)},
                             {"candidates_tried", gp.candidates_tried}};
    j["sides"] = json::array();
    for (const auto& s : rep.atlas->sides) j["sides"].push_back(side_json(s));
    return j;
  }
  return nullptr;
}

}  // namespace

DerivationInput parse_input(const std::string& text) {
  json j = parse_json(text);
  check_version(j);
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<int>() < 0)
    throw SchemaError("field 'n' must be a non-negative integer");
  int n = j["n"].get<int>();
  if (j.contains("q") || j.contains("p")) {
    const VarList& v = TriangularDerivation::kVars;
    return TriangularDerivation(n, field_poly(j, "q", v), field_poly(j, "p", v));
  }
  if (j.contains("p_plus") || j.contains("p_minus")) {
    const VarList v{"y"};
    return TwinDerivation(n, field_poly(j, "p_plus", v), field_poly(j, "p_minus", v));
  }
  throw SchemaError("expected fields q and p, or p_plus and p_minus");
}

json input_json(const DerivationInput& d) {
  if (const auto* t = std::get_if<TriangularDerivation>(&d)) return {{"n", t->n}, {"q", format(t->q)}, {"p", format(t->p)}};
  const auto& w = std::get<TwinDerivation>(d);
  return {{"n", w.n}, {"p_plus", format(w.p_plus)}, {"p_minus", format(w.p_minus)}};
}

namespace {

CoverText cover_text(const json& j, const std::string& what) {
  if (j.is_string()) return {j.get<std::string>(), 0};
  if (j.is_object() && j.contains("num") && j["num"].is_string()) {
    int k = 0;
    if (j.contains("alpha_pow")) {
      if (!j["alpha_pow"].is_number_integer()) throw SchemaError(what + ": alpha_pow must be an integer");
      k = j["alpha_pow"].get<int>();
    }
    return {j["num"].get<std::string>(), k};
  }
  throw SchemaError(what + " must be a string or an object with num and alpha_pow");
}

}  // namespace

std::vector<SplittingData> parse_splittings(const std::string& text) {
  json j = parse_json(text);
  check_version(j);
  if (!j.contains("splittings") || !j["splittings"].is_array()) throw SchemaError("field 'splittings' must be an array");
  std::vector<SplittingData> out;
  for (const auto& e : j["splittings"]) {
    SplittingData s;
    s.alpha = field_string(e, "alpha");
    s.P_bar = field_string(e, "P_bar");
    s.modulus = field_string(e, "modulus");
    if (!e.contains("roots") || !e["roots"].is_array()) throw SchemaError("field 'roots' must be an array");
    for (const auto& r : e["roots"]) s.roots.push_back(cover_text(r, "root"));
    if (!e.contains("galois") || !e["galois"].is_array()) throw SchemaError("field 'galois' must be an array");
    for (const auto& g : e["galois"]) {
      if (!g.contains("perm") || !g["perm"].is_array()) throw SchemaError("field 'perm' must be an array");
      s.galois.push_back({cover_text(g.at("s_image"), "s_image"), g["perm"].get<std::vector<int>>()});
    }
    out.push_back(std::move(s));
  }
  return out;
}

json report_json(const ClassificationReport& rep, bool with_timings) {
  json j;
  j["version"] = kReportVersion;
  j["input"] = input_json(rep.input);
  j["verdict"] = verdict_name(rep.verdict);
  j["classification_equivalence"] = rep.classification_equivalence;
  j["reason"] = rep.reason;
  j["certificate"] = certificate_json(rep);
  j["trail"] = trail_json(rep.trail);
  if (with_timings) j["timings_ms"] = rep.timings_ms;
  return j;
}

std::string report_text(const ClassificationReport& rep) {
  std::ostringstream os;
  json in = input_json(rep.input);
  os << "input: " << in.dump() << "\n";
  os << "verdict: " << verdict_name(rep.verdict) << "\n";
  os << "reason: " << rep.reason << "\n";
  if (rep.classification_equivalence) os << "note: verdict transferred through a quotient identification\n";
  if (rep.slice)
    os << "slice (" << (rep.slice->original_coordinates ? "original" : "normalized")
       << " coordinates): " << format(rep.slice->slice) << "\n";
  if (rep.gamma) {
    os << "gamma certificate: ell = " << rep.gamma->ell << ", R_bar = " << format(rep.gamma->R_bar)
       << ", theta_bar = " << format(rep.gamma->theta_bar) << ", replayed = " << (rep.gamma_replayed ? "yes" : "no")
       << "\n";
  }
  if (rep.atlas) {
    for (const auto& s : rep.atlas->sides) {
      os << (s.plus ? "plus" : "minus") << " atlas: ";
      if (!s.supported) {
        os << "unsupported (" << s.reason << ")\n";
        continue;
      }
      os << (s.separatedness.separated ? "separated" : "not separated");
      for (const auto& v : s.separatedness.pairs)
        if (!v.ok) os << "; pair (" << v.a << ", " << v.b << "): " << v.reason;
      if (s.affineness) os << "; affineness depth " << s.affineness->depth;
      os << "\n";
    }
  }
  for (const auto& st : rep.trail) {
    os << "step " << kind_name(st.kind) << ":";
    const char* sep = " ";
    for (const auto& [k, v] : st.forward) {
      os << sep << k << " -> " << format(v);
      sep = ", ";
    }
    if (!st.isomorphism) os << " (quotient identification)";
    os << "\n";
  }
  return os.str();
}

}  // namespace lndkit
