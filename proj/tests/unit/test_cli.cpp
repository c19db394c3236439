#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gen.hpp"
#include "lndkit/report.hpp"

using namespace lndkit;

namespace {

std::string data_file(const std::string& name) {
  std::ifstream in(std::string(LNDKIT_EXAMPLES_DIR) + "/" + name);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const VarList& kYZU = TriangularDerivation::kVars;
TriangularDerivation delta(int r) {
  return {2, parse_poly("2*y", kYZU), parse_poly("1 + x^" + std::to_string(r) + "*z", kYZU)};
}

std::string stable_dump(const ClassificationReport& rep) { return report_json(rep, false).dump(2); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("input schema") {
    auto d = parse_input(R"({"n":2,"q":"2*y","p":"1 + x^2*z"})");
    REQUIRE(std::holds_alternative<TriangularDerivation>(d));
    const auto& t = std::get<TriangularDerivation>(d);
    CHECK(t.n == 2);
    CHECK(t.q == delta(2).q);
    CHECK(t.p == delta(2).p);
    auto w = parse_input(data_file("delta2_twin.json"));
    REQUIRE(std::holds_alternative<TwinDerivation>(w));
    CHECK(std::get<TwinDerivation>(w).p_minus == parse_poly("1 - 2*y^2", {"y"}));
    CHECK_THROWS_AS(parse_input(data_file("bad_version.json")), SchemaError);
    CHECK_THROWS_AS(parse_input(R"({"n":2,"q":"2*y"})"), SchemaError);
    CHECK_THROWS_AS(parse_input(R"({"n":-1,"q":"2*y","p":"1"})"), SchemaError);
    CHECK_THROWS_AS(parse_input(R"([1, 2])"), SchemaError);
    // q may only involve y
    CHECK_THROWS(parse_input(R"({"n":1,"q":"z","p":"1"})"));
  }

  TEST_CASE("malformed polynomial reports its location") {
    try {
      parse_input(data_file("malformed.json"));
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line == 1);
      CHECK(e.column == 3);
      CHECK(std::string(e.what()).find("field 'q'") != std::string::npos);
    }
    try {
      parse_input("{\"n\": 1,\n  \"q\": }");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line == 2);
    }
  }

  TEST_CASE("render after parse reproduces the normal form") {
    gen::Rng r(4242);
    for (int i = 0; i < 30; ++i) {
      Poly q = gen::poly(r, {"y"}, 3, 2, 0.5, true);
      Poly p = gen::poly(r, {"y", "z"}, 3, 2, 0.5, true);
      TriangularDerivation d(r.uniform(0, 3), q, p);
      std::string text = input_json(d).dump();
      auto back = parse_input(text);
      const auto& t = std::get<TriangularDerivation>(back);
      CHECK(t.q == d.q);
      CHECK(t.p == d.p);
      CHECK(input_json(back).dump() == text);
    }
  }

  TEST_CASE("splitting file") {
    auto s = parse_splittings(data_file("cubic_splitting.json"));
    REQUIRE(s.size() == 1);
    CHECK(s[0].roots.size() == 3);
    CHECK(s[0].galois.size() == 6);
    CHECK_NOTHROW(verify_splitting(splitting_from_data(s[0])));
    CHECK_THROWS_AS(parse_splittings(R"({"version":1})"), SchemaError);
    CHECK_THROWS_AS(parse_splittings(R"({"version":3,"splittings":[]})"), SchemaError);
  }

  TEST_CASE("delta family verdicts and certificates") {
    auto r1 = classify(delta(1));
    CHECK(r1.verdict == Verdict::NonProper);
    REQUIRE(r1.gamma);
    CHECK(r1.gamma->ell == 1);
    CHECK(replay_certificate(*r1.gamma));

    auto r2 = classify(delta(2));
    CHECK(r2.verdict == Verdict::NonProper);
    REQUIRE(r2.atlas);
    const AtlasSide& side = r2.atlas->sides.at(0);
    CHECK_FALSE(side.separatedness.separated);
    // replay: recompute the separatedness test from the stored cocycle only
    auto again = separatedness_check(side.splitting.ring, side.cocycle);
    CHECK_FALSE(again.separated);
    CHECK(again.pairs[0].test.non_unit_factor == parse_rpoly("t - 3/2", {"t"}));

    for (int r = 3; r <= 5; ++r) {
      auto rep = classify(delta(r));
      CHECK(rep.verdict == Verdict::Translation);
      REQUIRE(rep.slice);
      CHECK(rep.slice->original_coordinates);
      CHECK(apply_derivation(delta(r), rep.slice->slice) == Poly::constant(kYZU, BaseElem(1)));
    }
  }

  TEST_CASE("other routes through the driver") {
    auto fp = classify(parse_input(data_file("fixed_point.json")));
    CHECK(fp.verdict == Verdict::NotFixedPointFree);

    // n = 0 and constant residue of q
    CHECK(classify(TriangularDerivation(0, parse_poly("y^2", kYZU), parse_poly("z", kYZU))).verdict ==
          Verdict::Translation);
    // q vanishes after the coordinate change in z
    auto z1 = classify(TriangularDerivation(2, parse_poly("x^3*y", kYZU), parse_poly("1 + x*z", kYZU)));
    CHECK(z1.verdict == Verdict::Translation);
    REQUIRE(z1.slice);
    CHECK(z1.slice->original_coordinates);
    CHECK(z1.slice->checked_against.apply(z1.slice->slice) == Poly::constant(kYZU, BaseElem(1)));

    // modification chain: verdict holds through the quotient identification
    auto mc = classify(TriangularDerivation(3, parse_poly("x*(1 + y)", kYZU), parse_poly("1 + x*y*z", kYZU)));
    CHECK(mc.classification_equivalence);
    CHECK(mc.verdict != Verdict::Undecided);

    // cubic residue: unsupported without data, decided with the user splitting
    auto twin = parse_input(data_file("cubic_twin.json"));
    auto plain = classify(twin);
    CHECK(plain.verdict == Verdict::NonProper);
    DriverOptions opts;
    opts.splittings = parse_splittings(data_file("cubic_splitting.json"));
    auto with = classify(twin, opts);
    CHECK(with.verdict == Verdict::NonProper);
    REQUIRE(with.atlas);
    CHECK(with.atlas->sides.at(0).supported);
    CHECK(with.atlas->sides.at(0).separatedness.pairs.at(0).test.non_unit_factor == parse_rpoly("t - 1", {"t"}));
  }

  TEST_CASE("reports are deterministic") {
    for (int r = 1; r <= 5; ++r) CHECK(stable_dump(classify(delta(r))) == stable_dump(classify(delta(r))));
    gen::Rng rng(99);
    for (int i = 0; i < 30; ++i) {
      int n = rng.uniform(1, 3);
      Poly q = gen::poly(rng, {"y"}, 2, 1) + parse_poly("y", {"y"});
      Poly p = Poly::constant({"y", "z"}, BaseElem(1)) + mul_x_pow(gen::poly(rng, {"y", "z"}, 2, 1), 1);
      TriangularDerivation d(n, q, p);
      std::string a, b;
      try {
        a = stable_dump(classify(d));
        b = stable_dump(classify(d));
      } catch (const Error& e) {
        a = b = e.what();
      }
      CHECK(a == b);
    }
    nlohmann::json j = report_json(classify(delta(2)));
    CHECK(j["version"] == 1);
    CHECK(j["verdict"] == "NonProper");
    CHECK(j.contains("timings_ms"));
    CHECK(j["certificate"]["kind"] == "atlas");
  }

  TEST_CASE("text rendering names the verdict") {
    std::string text = report_text(classify(delta(4)));
    CHECK(text.find("verdict: Translation") != std::string::npos);
    CHECK(text.find("u - x^2*y*z + 2/3*y^3") != std::string::npos);
  }
}
