#include <algorithm>

#include "doctest.h"
#include "gen.hpp"
#include "lndkit/ideal.hpp"

using namespace lndkit;

namespace {

RPoly R(const std::string& s, const VarList& v) { return parse_rpoly(s, v); }
Poly P(const std::string& s, const VarList& v) { return parse_poly(s, v); }

// Euclidean-remainder resultant, independent of the Sylvester code path.
Rational euclid_resultant(UPoly f, UPoly g) {
  if (f.is_zero() || g.is_zero()) return 0;
  int m = f.degree(), n = g.degree();
  if (n == 0) {
    Rational c = 1;
    for (int i = 0; i < m; ++i) c *= g.lc();
    return c;
  }
  UPoly r = UPoly::divmod(f, g).second;
  if (r.is_zero()) return 0;
  Rational sign = ((m * n) % 2) ? -1 : 1;
  Rational scale = 1;
  for (int i = 0; i < m - r.degree(); ++i) scale *= g.lc();
  return sign * scale * euclid_resultant(g, r);
}

RPoly specialize(const RPoly& p, const std::string& var, const Rational& at) {
  return substitute(p, SubstMap<Rational>{{var, RPoly::constant({}, at)}});
}

}  // namespace

TEST_SUITE("ideal_engine") {
  TEST_CASE("univariate gcd and squarefree part") {
    VarList y{"y"};
    CHECK(uni_gcd(R("y^2-1", y), R("y-1", y)) == R("y-1", y));
    CHECK(squarefree_part(R("y^2", y)) == R("y", y));
    CHECK(uni_gcd(R("2*y", y), R("3*y^2+1", y)) == R("1", y));
    CHECK(squarefree_part(R("4*(y-1)^3*(y+2)", y)) == R("(y-1)*(y+2)", y));
    CHECK_THROWS_AS(uni_gcd(R("0", y), R("0", y)), ArithmeticError);
  }

  TEST_CASE("resultant examples and sign convention") {
    VarList v{"y", "a", "b"};
    CHECK(resultant(R("y-a", v), R("y-b", v), "y") == R("a-b", {"a", "b"}));
    CHECK(resultant(R("y^2+1", v), R("y^2+1", v), "y").is_zero());
    CHECK(resultant(R("s^2-t", {"t", "s"}), R("s", {"t", "s"}), "s") == R("-t", {"t"}));
    // a degree-zero argument contributes its power
    CHECK(resultant(R("3", {"y"}), R("y^2+1", {"y"}), "y") == R("9", {}));
    CHECK_THROWS_AS(resultant(R("a", {"a"}), R("b", {"b"}), "y"), VariableError);
  }

  TEST_CASE("resultant agrees with the Euclidean oracle under specialization") {
    gen::Rng r(21);
    int checked = 0;
    for (int i = 0; i < 60; ++i) {
      RPoly f = gen::rpoly(r, {"y", "t"}, 3), g = gen::rpoly(r, {"y", "t"}, 3);
      if (f.degree("y") < 1 || g.degree("y") < 1) continue;
      RPoly res = resultant(f, g, "y");
      for (int at = -2; at <= 2; ++at) {
        RPoly fs = specialize(f, "t", at), gs = specialize(g, "t", at);
        if (fs.degree("y") != f.degree("y") || gs.degree("y") != g.degree("y")) continue;
        Rational want = euclid_resultant(to_upoly(fs, "y"), to_upoly(gs, "y"));
        RPoly got = specialize(res, "t", at);
        CHECK(got == RPoly::constant(got.vars(), want));
        ++checked;
      }
    }
    CHECK(checked > 30);
  }

  TEST_CASE("minimal polynomial in a finite algebra") {
    VarList y{"y"};
    CHECK(minimal_polynomial_mod(R("y^2", y), R("2*y", y)) == R("t", {"t"}));
    CHECK(minimal_polynomial_mod(R("y - 2/3*y^3", y), R("1-2*y^2", y)) == R("t^2 - 2/9", {"t"}));
    CHECK(minimal_polynomial_mod(R("y^3", y), R("5", y)) == R("1", {"t"}));
    CHECK_THROWS_AS(minimal_polynomial_mod(R("y", y), R("0", y)), DegenerateError);
  }

  TEST_CASE("minimal polynomial against the characteristic polynomial oracle") {
    gen::Rng r(22);
    for (int i = 0; i < 40; ++i) {
      RPoly p = gen::rpoly(r, {"y"}, 3), P = gen::rpoly(r, {"y"}, 4);
      if (p.degree("y") < 1) continue;
      RPoly alpha = minimal_polynomial_mod(P, p);
      UPoly a = to_upoly(alpha, "t");
      CHECK(a.lc() == 1);
      UPoly pu = to_upoly(p, "y"), Pu = to_upoly(P, "y");
      CHECK(UPoly::divmod(a.compose(Pu), pu).second.is_zero());
      RPoly chi = resultant(p.with_vars({"y", "t"}), R("t", {"y", "t"}) - P.with_vars({"y", "t"}), "y");
      UPoly c = to_upoly(chi, "t");
      CHECK(UPoly::divmod(c, a).second.is_zero());
      CHECK(UPoly::divmod(a, squarefree_part(c)).second.is_zero());
    }
  }

  TEST_CASE("Groebner bases of textbook ideals") {
    VarList ab{"a", "b"};
    auto gb = groebner({R("a^3 - 2*a*b", ab), R("a^2*b - 2*b^2 + a", ab)});
    std::vector<RPoly> want{R("b^2 - a/2", ab), R("a*b", ab), R("a^2", ab)};
    REQUIRE(gb.generators.size() == 3);
    for (const auto& w : want)
      CHECK(std::find(gb.generators.begin(), gb.generators.end(), w) != gb.generators.end());
    VarList abc{"a", "b", "c"};
    auto lex = groebner({R("a^2+b^2+c^2-1", abc), R("a^2+c^2-b", abc), R("a-c", abc)}, MonomialOrder::Lex);
    std::vector<RPoly> want_lex{R("c^4 + c^2/2 - 1/4", abc), R("b - 2*c^2", abc), R("a - c", abc)};
    CHECK(lex.generators == want_lex);
  }

  TEST_CASE("unit ideal and membership examples") {
    VarList yz{"y", "z"};
    CHECK(unit_ideal({R("y", yz), R("1-y", yz)}));
    CHECK_FALSE(unit_ideal({R("y", yz), R("z", yz)}));
    auto w = member(R("y^2", yz), {R("y", yz)});
    CHECK(w.member);
    CHECK(w.cofactors[0] == R("y", yz));
    CHECK(w.verify());
    auto neg = member(R("1", yz), {});
    CHECK_FALSE(neg.member);
  }

  TEST_CASE("Groebner bases are canonical, idempotent and generate the same ideal") {
    gen::Rng r(23);
    VarList v{"a", "b", "c"};
    for (int i = 0; i < 30; ++i) {
      std::vector<RPoly> gens;
      int k = r.uniform(1, 3);
      for (int j = 0; j < k; ++j) gens.push_back(gen::rpoly(r, v, 2, 0.4));
      for (auto order : {MonomialOrder::Grevlex, MonomialOrder::Lex}) {
        auto gb = groebner(gens, order);
        auto shuffled = gens;
        std::reverse(shuffled.begin(), shuffled.end());
        shuffled.push_back(gens[0] * R("a+1", v));
        CHECK(groebner(shuffled, order).generators == gb.generators);
        CHECK(groebner(gb.generators, order).generators == gb.generators);
        for (const auto& g : gens) CHECK(normal_form(g, gb).is_zero());
        for (const auto& g : gb.generators) {
          auto w = member(g, gens, order);
          CHECK(w.member);
          CHECK(w.verify());
        }
      }
      CHECK(groebner(gens).is_unit() == groebner(gens, MonomialOrder::Lex).is_unit());
      // linear change of variables leaves the unit-ideal verdict alone
      SubstMap<Rational> change{{"a", R("a + 2*b", v)}, {"b", R("b - c", v)}, {"c", R("c + a/3", v)}};
      std::vector<RPoly> moved;
      for (const auto& g : gens) moved.push_back(substitute(g, change));
      CHECK(unit_ideal(moved) == unit_ideal(gens));
    }
  }

  TEST_CASE("layered membership examples") {
    VarList v{"y1", "y2"};
    Poly H = P("y2^2 - y1^2", v);
    auto pos = layered_membership(P("x", v) * H + P("7*x^2", v), H, 2);
    CHECK(pos.member);
    CHECK(pos.verify());
    auto neg = layered_membership(P("x*(y2-y1)^2*(y2+2*y1)/3", v), H, 2);
    CHECK_FALSE(neg.member);
    CHECK(neg.refusal_layer == 1);
    CHECK_THROWS_AS(layered_membership(P("y1", v), P("x*y1", v), 2), DegenerateError);
  }

  TEST_CASE("layered membership against the Groebner monitor") {
    gen::Rng r(24);
    VarList v{"y1", "y2"};
    int positives = 0;
    for (int i = 0; i < 40; ++i) {
      int n = r.uniform(1, 3);
      Poly H = gen::poly(r, v, 2, 1);
      if (residue_mod_x(H).is_zero()) H += P("y1", v);
      Poly f = r.coin() ? gen::poly(r, v, 2, 1) * H + mul_x_pow(gen::poly(r, v, 2, 1), n) : gen::poly(r, v, 3, 2);
      auto w = monitored_membership(f, H, n);
      if (w.member) {
        CHECK(w.verify());
        ++positives;
      }
      auto gw = member(to_qx(f), {to_qx(Poly::constant(v, BaseElem::x_pow(n))), to_qx(H)});
      if (gw.member) CHECK(w.member);
    }
    CHECK(positives > 5);
  }
}
