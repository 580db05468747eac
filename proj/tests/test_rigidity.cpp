#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "pbc/pbc.hpp"
#include "support.hpp"

using namespace pbc;
using pbctest::make_rng;

namespace {

SurfaceModel chain(std::size_t n) {
    std::vector<BlowupNode> nodes;
    nodes.push_back({ParentRef::base("p1"), true, 1});
    for (std::size_t i = 1; i < n; ++i)
        nodes.push_back({ParentRef::at_node(static_cast<int>(i) - 1), true, 1});
    return SurfaceModel(BaseCase::F2Rational, 0, BlowupForest(std::move(nodes)));
}

} // namespace

TEST_CASE("chi_alpha with disjoint restrictions", "[rigidity]") {
    SurfaceModel s = chain(2);
    SECTION("rank 0 reduces to minus the intersection number") {
        const SheafClass m{0, DivisorClass(0, 1, {-1, 0}), 1};
        const SheafClass n{0, DivisorClass(1, 0, {0, -1}), 0};
        CHECK(chi_alpha(s, m, n, RestrictionData::disjoint()) == -intersect(s, m.c1, n.c1));
    }
    SECTION("a line bundle on a -2 curve has index 2") {
        const DivisorClass c(0, 0, {1, -1});
        const SheafClass m{0, c, 5};
        CHECK(chi_alpha(s, m, m, RestrictionData::disjoint()) == 2);
    }
}

TEST_CASE("chi_alpha with transverse jets", "[rigidity]") {
    SurfaceModel y(BaseCase::F2Rational, 0);
    const SheafClass m{0, fiber_class(0), 1};
    SECTION("a single jet adds its length") {
        for (Int a : {Int{1}, Int{2}, Int{5}}) {
            JetProfile jets;
            jets.entries.push_back({JetSite::base("p"), a});
            CHECK(chi_alpha(y, m, m, RestrictionData::transverse(jets)) ==
                  -intersect(y, m.c1, m.c1) + a);
        }
    }
    SECTION("two profiles meet in the shared sites only") {
        JetProfile a, b;
        a.entries.push_back({JetSite::base("p"), 3});
        a.entries.push_back({JetSite::base("q"), 1});
        b.entries.push_back({JetSite::base("p"), 2});
        b.entries.push_back({JetSite::base("r"), 4});
        const SheafClass n{0, 2 * fiber_class(0), 0};
        CHECK(chi_alpha(y, m, n, RestrictionData::transverse(a, b)) ==
              -intersect(y, m.c1, n.c1) + 2);
    }
    SECTION("positive rank is rejected") {
        const SheafClass v{1, DivisorClass(0), 1};
        JetProfile jets;
        jets.entries.push_back({JetSite::base("p"), 1});
        CHECK_THROWS_AS(chi_alpha(y, v, v, RestrictionData::transverse(jets)), math_error);
    }
    SECTION("duplicate sites in a profile are rejected") {
        JetProfile jets;
        jets.entries.push_back({JetSite::base("p"), 1});
        jets.entries.push_back({JetSite::base("p"), 2});
        CHECK_THROWS_AS(chi_alpha(y, m, m, RestrictionData::transverse(jets)), math_error);
    }
}

TEST_CASE("chi_alpha symmetry for rank-0 transverse pairs", "[rigidity][property]") {
    auto rng = make_rng(61);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = pbctest::random_resolution_instance(rng, 8);
        const auto b = pbctest::random_resolution_instance(rng, 8);
        if (b.cls.stage() != a.cls.stage()) continue;
        const auto restr_ab = RestrictionData::transverse(a.jets, b.jets);
        const auto restr_ba = RestrictionData::transverse(b.jets, a.jets);
        REQUIRE(chi_alpha(a.surface, a.cls, b.cls, restr_ab) ==
                chi_alpha(a.surface, b.cls, a.cls, restr_ba));
    }
}

TEST_CASE("explicit restriction data enters with signs", "[rigidity]") {
    SurfaceModel y(BaseCase::F2Rational, 0);
    const SheafClass m{1, DivisorClass(0), 1};
    CHECK(chi_alpha(y, m, m, RestrictionData::explicit_dims(3, 1)) ==
          ext_euler(y, m, m) + 2);
}

TEST_CASE("leaf tangent dimension", "[rigidity]") {
    SurfaceModel s = chain(2);
    const SheafClass rigid{0, DivisorClass(0, 0, {1, -1}), 1};
    SECTION("a simple rigid sheaf sits on a point leaf") {
        CHECK(leaf_tangent_dim(s, rigid, RestrictionData::disjoint(), 1) == 0);
    }
    SECTION("index -2 gives dimension 4") {
        const SheafClass m{0, DivisorClass(1, 0, {0, 0}), 0}; // s.s = 2
        REQUIRE(index_of_rigidity(s, m, RestrictionData::disjoint()) == -2);
        CHECK(leaf_tangent_dim(s, m, RestrictionData::disjoint(), 1) == 4);
    }
    SECTION("impossible dimensions are rejected") {
        const SheafClass odd{0, DivisorClass(0, 0, {1, 0}), 0};
        REQUIRE(index_of_rigidity(s, odd, RestrictionData::disjoint()) == 1);
        CHECK_THROWS_AS(leaf_tangent_dim(s, odd, RestrictionData::explicit_dims(2, 0), 1),
                        math_error);
        CHECK_THROWS_AS(leaf_tangent_dim(s, odd, RestrictionData::disjoint(), 0), math_error);
    }
}

TEST_CASE("rigidity decision procedure", "[rigidity]") {
    SurfaceModel s = chain(2);
    SECTION("the strict transform class is numerically rigid") {
        const SheafClass m{0, DivisorClass(0, 0, {1, -1}), 2};
        const RigidityReport r = is_rigid_candidate(s, m, RestrictionData::disjoint(), 3);
        CHECK(r.chi_alpha == 2);
        CHECK(r.numeric_rigid);
        CHECK(r.in_minus_two_list);
        CHECK(r.c1_dot_canonical == 0);
    }
    SECTION("classes meeting the anticanonical curve cannot be disjoint") {
        const SheafClass fib{0, fiber_class(2), 1};
        REQUIRE(intersect(s, fib.c1, canonical_class(s)) != 0);
        CHECK_THROWS_AS(is_rigid_candidate(s, fib, RestrictionData::disjoint(), 3), math_error);
        // the index itself is still defined (and not 2)
        CHECK(index_of_rigidity(s, fib, RestrictionData::disjoint()) == 0);
    }
    SECTION("rank and restriction kind are enforced") {
        const SheafClass v{1, DivisorClass(2), 1};
        CHECK_THROWS_AS(is_rigid_candidate(s, v, RestrictionData::disjoint(), 3), math_error);
        const SheafClass m{0, DivisorClass(0, 0, {1, -1}), 2};
        JetProfile jets;
        jets.entries.push_back({JetSite::base("q"), 1});
        CHECK_THROWS_AS(is_rigid_candidate(s, m, RestrictionData::transverse(jets), 3),
                        math_error);
    }
}

TEST_CASE("index of rigidity ignores twists of rank-0 disjoint classes", "[rigidity][property]") {
    auto rng = make_rng(62);
    for (int trial = 0; trial < 100; ++trial) {
        SurfaceModel s = pbctest::random_surface(rng, 5);
        const SheafClass m = pbctest::random_class(rng, s.blowup_count(), 0, 4);
        const DivisorClass d = pbctest::random_divisor(rng, s.blowup_count(), 3);
        const SheafClass twisted = twist_class(s, m, d);
        REQUIRE(index_of_rigidity(s, twisted, RestrictionData::disjoint()) ==
                index_of_rigidity(s, m, RestrictionData::disjoint()));
    }
}

TEST_CASE("minimal lifts preserve chi_alpha along resolutions", "[rigidity][property]") {
    auto rng = make_rng(63);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto inst = pbctest::random_resolution_instance(rng, 8);
        const Int before = chi_alpha(inst.surface, inst.cls, inst.cls,
                                     RestrictionData::transverse(inst.jets));
        const ResolutionTrace trace = resolve_disjoint(inst.surface, inst.cls, inst.jets);
        for (const ResolutionStep& step : trace.steps) {
            const SurfaceModel at = trace.final_surface.prefix(step.node + 1);
            const Int now =
                chi_alpha(at, step.lift, step.lift, RestrictionData::transverse(step.jets));
            REQUIRE(now == before);
        }
        const Int final_value = chi_alpha(trace.final_surface, trace.final_lift, trace.final_lift,
                                          RestrictionData::disjoint());
        REQUIRE(final_value == before);
    }
}
