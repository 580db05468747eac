#include <catch2/catch_amalgamated.hpp>

#include "pbc/pbc.hpp"
#include "support.hpp"

using namespace pbc;
using pbctest::make_rng;

TEST_CASE("poisson blowup validation", "[surface]") {
    SurfaceModel s(BaseCase::F2Rational, 0);
    SECTION("base point with multiplicity 1 is legal") {
        CHECK(validate_poisson_blowup(s, {ParentRef::base("p1"), true, 1}));
    }
    SECTION("a point off the anticanonical curve is not") {
        CHECK_FALSE(validate_poisson_blowup(s, {ParentRef::base("p1"), false, 0}));
        CHECK_THROWS_AS(s.with_poisson_blowup({ParentRef::base("p1"), false, 0}),
                        poisson_violation);
    }
    SECTION("multiplicity growing down the forest is a construction error") {
        SurfaceModel one = s.with_poisson_blowup({ParentRef::base("p1"), true, 1});
        CHECK_THROWS_AS(validate_poisson_blowup(one, {ParentRef::at_node(0), true, 2}),
                        config_error);
        CHECK_THROWS_AS(one.with_poisson_blowup({ParentRef::at_node(0), true, 2}), config_error);
    }
}

TEST_CASE("validation is monotone below an exhausted site", "[surface][property]") {
    // once a center is off the curve, every descendant is rejected too
    const BlowupNode off{ParentRef::base("p1"), false, 0};
    SurfaceModel s(BaseCase::StandardRuled, 2);
    CHECK_FALSE(validate_poisson_blowup(s, off));
    for (Int mult : {Int{0}, Int{1}}) {
        const BlowupNode child{ParentRef::at_node(0), mult > 0, mult};
        CHECK_THROWS_AS(SurfaceModel(BaseCase::StandardRuled, 2, BlowupForest({off, child})),
                        poisson_violation);
    }
}

TEST_CASE("anticanonical class", "[surface]") {
    SurfaceModel s(BaseCase::F2Rational, 0);
    CHECK(anticanonical_class(s) == DivisorClass(2, 0, {}));
    SurfaceModel two = s.with_poisson_blowup({ParentRef::base("p1"), true, 1})
                           .with_poisson_blowup({ParentRef::at_node(0), true, 1});
    CHECK(anticanonical_class(two) == DivisorClass(2, 0, {-1, -1}));
    SurfaceModel k3(BaseCase::TrivialCanonical, 0, {}, {}, 2);
    CHECK(anticanonical_class(k3).is_zero());
}

TEST_CASE("anticanonical self-intersection after validated blowups", "[surface][property]") {
    auto rng = make_rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        SurfaceModel s = pbctest::random_surface(rng, 8);
        const Int n = static_cast<Int>(s.blowup_count());
        const DivisorClass ac = anticanonical_class(s);
        DivisorClass expected(s.blowup_count());
        expected.s = 2;
        for (Int& c : expected.e) c = -1;
        REQUIRE(ac == expected);
        REQUIRE(intersect(s, ac, ac) == 8 * (1 - s.genus()) - n);
    }
}

TEST_CASE("anticanonical state tracks -K and the center multiplicities", "[surface]") {
    SurfaceModel s(BaseCase::F2Rational, 0,
                   BlowupForest({{ParentRef::base("p1"), true, 2},
                                 {ParentRef::at_node(0), true, 1}}));
    const AnticanonicalState st = anticanonical_state(s);
    CHECK(st.divisor_class == -canonical_class(s));
    CHECK(st.multiplicities == std::vector<Int>{2, 1});
}

TEST_CASE("h1 of the anticanonical curve is g+1", "[surface]") {
    CHECK(h1_anticanonical(SurfaceModel(BaseCase::F2Rational, 0)) == 1);
    CHECK(h1_anticanonical(SurfaceModel(BaseCase::Genus1Product, 1)) == 2);
    CHECK(h1_anticanonical(SurfaceModel(BaseCase::StandardRuled, 5)) == 6);
    CHECK_THROWS_AS(h1_anticanonical(SurfaceModel(BaseCase::TrivialCanonical, 0, {}, {}, 2)),
                    math_error);
}

TEST_CASE("classification report", "[surface]") {
    SECTION("rational nodal case merges with I2") {
        SurfaceModel s(BaseCase::F2Rational, 0, {}, KodairaSubcase::I1);
        const auto r = classify_birational_type(s);
        CHECK(r.birational_class == "rational, integral nodal anticanonical; equivalent to I2");
    }
    SECTION("higher genus ruled surfaces only admit elementary transformations") {
        SurfaceModel s(BaseCase::StandardRuled, 2);
        const auto r = classify_birational_type(s);
        CHECK(r.birational_class == "ruling unique; only elementary transformations");
    }
    SECTION("trivial anticanonical bundle") {
        SurfaceModel s(BaseCase::TrivialCanonical, 0, {}, {}, 0);
        const auto r = classify_birational_type(s);
        CHECK(r.birational_class == "no nontrivial Poisson birational maps");
    }
}

TEST_CASE("surface type invariants", "[surface]") {
    CHECK_THROWS_AS(SurfaceModel(BaseCase::F2Rational, 1), config_error);
    CHECK_THROWS_AS(SurfaceModel(BaseCase::Genus1Product, 0), config_error);
    CHECK_THROWS_AS(SurfaceModel(BaseCase::TrivialCanonical, 0,
                                 BlowupForest({{ParentRef::base("p1"), true, 1}})),
                    config_error);
    SurfaceModel k3(BaseCase::TrivialCanonical, 0, {}, {}, 2);
    CHECK_THROWS_AS(k3.with_poisson_blowup({ParentRef::base("p1"), true, 1}), poisson_violation);
    CHECK_THROWS_AS(intersect(k3, DivisorClass(0), DivisorClass(0)), math_error);
}

TEST_CASE("chi of the structure sheaf per base case", "[surface]") {
    CHECK(SurfaceModel(BaseCase::F2Rational, 0).chi_structure_sheaf() == 1);
    CHECK(SurfaceModel(BaseCase::Genus1Product, 1).chi_structure_sheaf() == 0);
    CHECK(SurfaceModel(BaseCase::StandardRuled, 3).chi_structure_sheaf() == -2);
    CHECK(SurfaceModel(BaseCase::TrivialCanonical, 0, {}, {}, 2).chi_structure_sheaf() == 2);
}
