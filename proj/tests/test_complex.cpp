#include <catch2/catch_amalgamated.hpp>

#include "monres/constructions.hpp"

using namespace monres;

namespace {

Monomial mono(const ContextPtr& ctx, const std::string& s) { return parse_monomial(s, ctx); }

// two-step complex R <- R(-xy) <- R(-xyz), d2 = z, d1 = xy
FreeComplex tiny_complex() {
    auto ctx = make_context({"x", "y", "z"});
    FreeComplex cx;
    cx.ctx = ctx;
    cx.basis.push_back({0, 0, Monomial::one(ctx), BasisLabel::unit(), "1"});
    cx.basis.push_back({1, 1, mono(ctx, "x*y"), BasisLabel::subset({1}), "e_{1}"});
    cx.basis.push_back({2, 2, mono(ctx, "x*y*z"), BasisLabel::subset({1, 2}), "e_{1,2}"});
    cx.diff.resize(3);
    cx.diff[1].add_term(0, 1, mono(ctx, "x*y"));
    cx.diff[2].add_term(1, 1, mono(ctx, "z"));
    cx.augmentation = {mono(ctx, "x*y")};
    return cx;
}

} // namespace

TEST_CASE("validate accepts a well formed complex and rejects broken ones") {
    FreeComplex cx = tiny_complex();
    CHECK_NOTHROW(cx.validate());

    SECTION("wrong multigrading") {
        cx.diff[2] = ModuleElement();
        cx.diff[2].add_term(1, 1, mono(cx.ctx, "z^2"));
        CHECK_THROWS_WITH(cx.validate(), Catch::Matchers::ContainsSubstring("multigrading"));
    }
    SECTION("coefficient not scalar * monomial") {
        cx.diff[2] = ModuleElement();
        RingElement c;
        c.add_term(mono(cx.ctx, "z"), 1);
        c.add_term(mono(cx.ctx, "x"), 1);
        cx.diff[2].add(1, c);
        CHECK_THROWS_AS(cx.validate(), Error);
    }
    SECTION("degree drop is not one") {
        cx.diff[2] = ModuleElement();
        cx.diff[2].add_term(0, 1, mono(cx.ctx, "x*y*z"));
        CHECK_THROWS_AS(cx.validate(), Error);
    }
    SECTION("unit multidegree must be 1") {
        cx.basis[0].mdeg = mono(cx.ctx, "x");
        CHECK_THROWS_AS(cx.validate(), Error);
    }
    SECTION("exactly one degree-0 generator") {
        cx.basis.push_back({3, 0, Monomial::one(cx.ctx), BasisLabel::unit(), "1'"});
        cx.diff.resize(4);
        CHECK_THROWS_AS(cx.validate(), Error); // also unsorted by degree
    }
    SECTION("nonzero differential in degree 0") {
        cx.diff[0].add_term(0, 1, Monomial::one(cx.ctx));
        CHECK_THROWS_AS(cx.validate(), Error);
    }
}

TEST_CASE("apply_diff is linear and rejects mixed degrees") {
    FreeComplex cx = tiny_complex();
    ModuleElement x = cx.basis_element(2).scaled(Rational(3));
    ModuleElement dx = apply_diff(cx, x);
    ModuleElement expected;
    expected.add_term(1, 3, mono(cx.ctx, "z"));
    CHECK(dx == expected);
    CHECK(apply_diff(cx, ModuleElement()).is_zero());
    CHECK(apply_diff(cx, cx.basis_element(0)).is_zero());

    ModuleElement mixed = cx.basis_element(1) + cx.basis_element(2);
    CHECK_THROWS_WITH(apply_diff(cx, mixed),
                      Catch::Matchers::ContainsSubstring("mixed homological degree"));
    ModuleElement unknown;
    unknown.add_term(17, 1, Monomial::one(cx.ctx));
    CHECK_THROWS_AS(apply_diff(cx, unknown), Error);
}

TEST_CASE("frozen Taylor differential on (xy, yz)") {
    auto ctx = make_context({"x", "y", "z"});
    DGGammaAlgebra alg = taylor({mono(ctx, "x*y"), mono(ctx, "y*z")});
    const FreeComplex& cx = alg.cx;
    REQUIRE(cx.basis.size() == 4);
    // ids: 0 empty, 1 {1}, 2 {2}, 3 {1,2}
    CHECK(cx.elem(3).mdeg == mono(ctx, "x*y*z"));
    ModuleElement expected; // d e_{1,2} = x e_{2} - z e_{1}
    expected.add_term(2, 1, mono(ctx, "x"));
    expected.add_term(1, -1, mono(ctx, "z"));
    CHECK(cx.diff[3] == expected);

    CHECK(check_d_squared(cx).passed());

    SECTION("sign mutation is caught and names the culprit") {
        DGGammaAlgebra bad = alg;
        bad.cx.diff[3] = ModuleElement();
        bad.cx.diff[3].add_term(2, 1, mono(ctx, "x"));
        bad.cx.diff[3].add_term(1, 1, mono(ctx, "z"));
        CheckResult r = check_d_squared(bad.cx);
        REQUIRE_FALSE(r.passed());
        CHECK(r.violations[0].location == "e_{1,2}");
    }
}

TEST_CASE("strand matrices at a multidegree") {
    auto ctx = make_context({"x", "y", "z"});
    DGGammaAlgebra alg = taylor({mono(ctx, "x*y"), mono(ctx, "y*z")});
    std::vector<DenseMatrix> s = strand(alg.cx, mono(ctx, "x*y*z"));
    REQUIRE(s.size() == 2);
    REQUIRE(s[0].rows() == 1);
    REQUIRE(s[0].cols() == 2);
    CHECK(s[0].at(0, 0) == 1);
    CHECK(s[0].at(0, 1) == 1);
    REQUIRE(s[1].rows() == 2);
    REQUIRE(s[1].cols() == 1);
    CHECK(s[1].at(0, 0) == -1); // e_{1} row
    CHECK(s[1].at(1, 0) == 1);  // e_{2} row

    // at multidegree xy only the unit and e_{1} survive
    std::vector<DenseMatrix> t = strand(alg.cx, mono(ctx, "x*y"));
    CHECK(t[0].cols() == 1);
    CHECK(t[1].cols() == 0);
}

TEST_CASE("lattice strand degrees of the running example") {
    auto ctx = make_context({"x", "y"});
    DGGammaAlgebra alg =
        taylor({mono(ctx, "x^2"), mono(ctx, "x*y"), mono(ctx, "y^3")});
    CHECK(alg.cx.ranks() == std::vector<std::size_t>{1, 3, 3, 1});
    std::set<Monomial> got = lattice_strand_degrees(alg.cx);
    std::set<Monomial> expected;
    for (const char* s : {"1", "x^2", "x*y", "y^3", "x^2*y", "x*y^3", "x^2*y^3"})
        expected.insert(mono(ctx, s));
    CHECK(got == expected);
}

TEST_CASE("resolution verification") {
    auto ctx = make_context({"x", "y"});
    DGGammaAlgebra alg =
        taylor({mono(ctx, "x^2"), mono(ctx, "x*y"), mono(ctx, "y^3")});

    SECTION("lattice mode passes") {
        CheckResult r = verify_resolution(alg.cx);
        CHECK(r.passed());
    }
    SECTION("box mode passes and respects the cell cap") {
        ResolutionOptions opt;
        opt.mode = StrandMode::box;
        opt.box_bound = 4;
        CHECK(verify_resolution(alg.cx, opt).passed());
        opt.cell_cap = 10;
        CHECK_THROWS_WITH(verify_resolution(alg.cx, opt),
                          Catch::Matchers::ContainsSubstring("cap"));
    }
    SECTION("sign mutation breaks exactness and is reported") {
        DGGammaAlgebra bad = alg;
        // e_{1,2} is id 4; flip the sign of its e_{1} term
        ModuleElement d;
        d.add_term(2, 1, mono(ctx, "x"));
        d.add_term(1, 1, mono(ctx, "y"));
        bad.cx.diff[4] = d;
        CHECK_FALSE(verify_resolution(bad.cx).passed());
    }
    SECTION("missing augmentation errors") {
        FreeComplex cx = alg.cx;
        cx.augmentation.clear();
        CHECK_THROWS_AS(verify_resolution(cx), Error);
    }
}

TEST_CASE("degenerate ideal containing 1 resolves the zero ring") {
    auto ctx = make_context({"x"});
    DGGammaAlgebra alg = taylor({Monomial::one(ctx)}, 3, true);
    CHECK(alg.cx.ranks() == std::vector<std::size_t>{1, 1});
    CHECK(verify_resolution(alg.cx).passed());
    CHECK_THROWS_AS(taylor({Monomial::one(ctx)}), Error);
}

TEST_CASE("duplicate generators are legal and kept as separate indices") {
    auto ctx = make_context({"x", "y"});
    Monomial m = mono(ctx, "x*y");
    DGGammaAlgebra alg = taylor({m, m});
    CHECK(alg.cx.ranks() == std::vector<std::size_t>{1, 2, 1});
    CHECK(alg.cx.elem(3).mdeg == m);
    CHECK(check_d_squared(alg.cx).passed());
    CHECK(verify_resolution(alg.cx).passed());
}
