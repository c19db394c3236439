#include "doctest.h"
#include "gen.hpp"
#include "lndkit/reduction.hpp"

using namespace lndkit;

namespace {

const VarList kYZU{"y", "z", "u"};
Poly P(const std::string& s, const VarList& v = kYZU) { return parse_poly(s, v); }
TriangularDerivation delta(int r) { return {2, P("2*y"), P("1 + x^" + std::to_string(r) + "*z")}; }

// Random polynomial in y whose residue is a nonzero constant.
Poly constant_residue(gen::Rng& r, const VarList& vars) {
  Poly h = gen::poly(r, vars, 2, 1);
  Poly q = mul_x_pow(truncate_mod_x(h, 1), 1) + Poly::constant(vars, BaseElem(r.nonzero_rational()));
  return q + mul_x_pow(h, 1);
}

}  // namespace

TEST_SUITE("reduction_pipeline") {
  TEST_CASE("easy translation") {
    auto c0 = easy_translation(TriangularDerivation(0, P("y^2"), P("z*y")));
    REQUIRE(c0);
    CHECK(c0->s == P("y"));
    auto c1 = easy_translation(TriangularDerivation(1, P("2 + x*y"), P("y*z")));
    REQUIRE(c1);
    CHECK(c1->s == P("1/2*z - 1/4*y^2"));
    CHECK_FALSE(easy_translation(delta(3)));
    CHECK_THROWS_AS(easy_translation(TriangularDerivation(1, P("y"), P("z"))), PreconditionError);
  }

  TEST_CASE("constant residue slice builder examples") {
    for (int n = 1; n <= 3; ++n) {
      Poly s = constant_residue_slice_builder(n, P("-3/2", {"y"}));
      CHECK(s == P("-2/3*z", {"y", "z"}));
    }
    Poly s = constant_residue_slice_builder(2, P("1 - 2*x*y^2", {"y"}), "y", "u");
    Derivation d{{"y", "u"}, {P("x^2", {"y", "u"}), P("1 - 2*x*y^2", {"y", "u"})}};
    CHECK(d.apply(s) == P("1", {"y", "u"}));
    CHECK_THROWS_AS(constant_residue_slice_builder(1, P("y", {"y"})), PreconditionError);
  }

  TEST_CASE("slice builder always yields a slice, with and without parameters") {
    gen::Rng r(404);
    for (int i = 0; i < 40; ++i) {
      int n = r.uniform(1, 3);
      bool param = i % 2;
      VarList qv = param ? VarList{"y", "w"} : VarList{"y"};
      Poly q = constant_residue(r, qv);
      Poly s = constant_residue_slice_builder(n, q, "y", "z");
      VarList all{"y", "z", "w"};
      Derivation d{all, {Poly::constant(all, BaseElem::x_pow(n)), q.with_vars(all), Poly(all)}};
      CHECK(d.apply(s.with_vars(all)) == Poly::constant(all, BaseElem(1)));
    }
  }

  TEST_CASE("reducible q normalization") {
    auto a = reducible_q_normalize(TriangularDerivation(2, P("x^3*y"), P("1 + x*z")));
    REQUIRE(a);
    CHECK(a->z1_change);
    CHECK(a->mu == 3);
    CHECK(a->step.forward.at("z") == P("z - 1/2*x*y^2"));
    CHECK(a->derivation.q.is_zero());
    CHECK(a->derivation.p == P("1 + x*z + 1/2*x^2*y^2"));

    auto b = reducible_q_normalize(TriangularDerivation(3, P("x*y"), P("1 + x*y*z")));
    REQUIRE(b);
    CHECK_FALSE(b->z1_change);
    CHECK(b->derivation.n == 2);
    CHECK(b->derivation.q == P("y"));
    CHECK(b->derivation.p == P("1 + x*y*z"));
    CHECK_FALSE(b->step.isomorphism);

    auto c = reducible_q_normalize(TriangularDerivation(2, P("x^2*(y + 1)"), P("2")));
    REQUIRE(c);
    CHECK(c->step.forward.at("z") == P("z - y - 1/2*y^2"));

    CHECK_THROWS_AS(reducible_q_normalize(TriangularDerivation(2, P("0"), P("1"))), DegenerateError);
    CHECK_FALSE(reducible_q_normalize(delta(2)));
  }

  TEST_CASE("modification chain lowers n until it stops") {
    gen::Rng r(88);
    for (int i = 0; i < 30; ++i) {
      int n = r.uniform(1, 3);
      Poly q = mul_x_pow(gen::poly(r, {"y"}, 2, 1), r.uniform(1, 3));
      if (q.is_zero()) continue;
      TriangularDerivation d(n, q, P("1") * BaseElem(r.nonzero_rational()) + mul_x_pow(gen::poly(r, {"y", "z"}, 2, 1), 1));
      int guard = 0;
      while (auto res = reducible_q_normalize(d)) {
        if (res->z1_change) {
          CHECK(apply_derivation(d, res->step.forward.at("z")).is_zero());
          break;
        }
        CHECK(res->derivation.n == d.n - res->mu);
        CHECK(res->mu >= 1);
        d = res->derivation;
        REQUIRE(++guard < 5);
        if (d.q.is_zero()) break;
      }
    }
  }

  TEST_CASE("sharp decomposition examples") {
    auto d2 = sharp_decompose(P("x^2", {"y"}), P("2*y", {"y"}), 2);
    REQUIRE(d2.ok);
    CHECK(d2.f.is_zero());
    CHECK(d2.g == P("1", {"y"}));
    auto d1 = sharp_decompose(P("x", {"y"}), P("2*y", {"y"}), 2);
    CHECK_FALSE(d1.ok);
    CHECK(d1.refusal_layer == 1);
    auto same = sharp_decompose(P("3*y^2 + x", {"y"}), P("3*y^2 + x", {"y"}), 3);
    REQUIRE(same.ok);
    CHECK(same.f == P("1", {"tau"}));
    CHECK(same.g.is_zero());
    CHECK_THROWS_AS(sharp_decompose(P("y", {"y"}), P("2 + x*y", {"y"}), 2), PreconditionError);
  }

  TEST_CASE("sharp decomposition recovers planted solutions") {
    gen::Rng r(515);
    for (int i = 0; i < 40; ++i) {
      int n = r.uniform(1, 3);
      Poly q = gen::poly(r, {"y"}, 2, 1);
      if (residue_mod_x(q).is_constant()) q += P("y", {"y"});
      Poly f = gen::poly(r, {"tau"}, 2, 2);
      Poly g = gen::poly(r, {"y"}, 3, 1);
      Poly Q = antiderivative_y(q);
      Poly p = (q * substitute(f, SubstMap<BaseElem>{{"tau", Q}})).with_vars({"y"}) + mul_x_pow(g, n);
      auto res = sharp_decompose(p, q, n);
      REQUIRE(res.ok);
      CHECK(res.f == truncate_mod_x(f, n));
      Poly back = (q * substitute(res.f, SubstMap<BaseElem>{{"tau", Q}})).with_vars({"y"}) +
                  mul_x_pow(res.g, n);
      CHECK(back == p);
    }
  }

  TEST_CASE("sharp reduction of the delta family") {
    auto r3 = sharp_reduce(delta(3));
    REQUIRE(r3.twin);
    REQUIRE(r3.twin_derivation.trail.size() == 1);
    CHECK(format(r3.twin_derivation.trail[0].forward.at("u")) == "u - x*y*z");
    CHECK(r3.twin_derivation.p_plus == P("2*y", {"y"}));
    CHECK(format(r3.twin_derivation.p_minus) == "1 - 2*x*y^2");

    auto r2 = sharp_reduce(delta(2));
    REQUIRE(r2.twin);
    CHECK(r2.twin_derivation.trail[0].forward.at("u") == P("u - y*z"));
    CHECK(r2.twin_derivation.p_minus == P("1 - 2*y^2", {"y"}));

    auto r1 = sharp_reduce(delta(1));
    CHECK_FALSE(r1.twin);
    CHECK(r1.ell == 1);
    CHECK(r1.p_ell == P("x", {"y"}));

    TriangularDerivation flat(2, P("2*y"), P("1 + y"));
    auto r0 = sharp_reduce(flat);
    REQUIRE(r0.twin);
    CHECK(r0.twin_derivation.trail.empty());
    CHECK(r0.twin_derivation.p_minus == P("1 + y", {"y"}));
  }

  TEST_CASE("sharp reduction steps are automorphisms and lower the z-degree") {
    gen::Rng r(616);
    int reduced = 0;
    for (int i = 0; i < 40; ++i) {
      int n = r.uniform(1, 3);
      Poly q = gen::poly(r, {"y"}, 2, 1) + P("y", {"y"});
      if (residue_mod_x(q).is_constant()) continue;
      Poly Q = antiderivative_y(q);
      int ell = r.uniform(1, 2);
      Poly p = gen::poly(r, {"y"}, 2, 1).with_vars(kYZU);
      for (int k = 1; k <= ell; ++k) {
        Poly f = gen::poly(r, {"tau"}, 1, 1);
        Poly g = gen::poly(r, {"y"}, 2, 1) + P("1", {"y"});
        Poly pk = (q * substitute(f, SubstMap<BaseElem>{{"tau", Q}})).with_vars({"y"}) + mul_x_pow(g, n);
        p += pk.with_vars(kYZU) * P("z").pow(k);
      }
      TriangularDerivation d(n, q, p);
      auto res = sharp_reduce(d);
      CHECK(res.current.trail.size() <= static_cast<size_t>(ell));
      TriangularDerivation cur = d;
      for (const auto& st : res.current.trail) {
        Poly fwd = st.forward.at("u"), inv = st.inverse.at("u");
        CHECK(substitute(inv, SubstMap<BaseElem>{{"u", fwd}}).with_vars(kYZU) == P("u"));
        Poly image = apply_derivation(cur, fwd);
        CHECK(image.degree("z") < cur.ell());
        // conjugating back: the old image of u is the new image plus d(correction)
        TriangularDerivation next(cur.n, cur.q, image);
        CHECK(apply_derivation(next, inv) == cur.p);
        cur = next;
        ++reduced;
      }
    }
    CHECK(reduced > 10);
  }

  TEST_CASE("twin constant-residue slices map back to the original coordinates") {
    for (int r = 3; r <= 5; ++r) {
      auto red = sharp_reduce(delta(r));
      REQUIRE(red.twin);
      std::vector<NormalizationStep> extra;
      auto cert = twin_constant_residue_slice(red.twin_derivation, &extra);
      REQUIRE(cert);
      auto trail = red.twin_derivation.trail;
      auto back = replay_to_original(cert->s, trail);
      REQUIRE(back.complete);
      CHECK(apply_derivation(delta(r), back.value.with_vars(kYZU)) == P("1"));
    }
    // proportional nonconstant residues need a shear first
    TwinDerivation tw(1, P("y", {"y"}), P("2*y + 3", {"y"}));
    std::vector<NormalizationStep> steps;
    auto cert = twin_constant_residue_slice(tw, &steps);
    REQUIRE(cert);
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].kind == NormalizationStep::Kind::Shear);
    CHECK(apply_derivation(tw, cert->s) == P("1", tw.vars()));
    CHECK_FALSE(twin_constant_residue_slice(TwinDerivation(2, P("2*y", {"y"}), P("1 - 2*y^2", {"y"})), nullptr));
  }
}
