#include <random>

#include <catch_amalgamated.hpp>

#include "fincov/builders.hpp"
#include "fincov/generators.hpp"
#include "fincov/overlay.hpp"
#include "fincov/random_instances.hpp"
#include "oracles.hpp"

using namespace fincov;

namespace {

constexpr OverlayMethod all_methods[] = {OverlayMethod::definition, OverlayMethod::disjoint_images,
                                         OverlayMethod::intersection_slices};

/// Overlay test straight from the definition with the partition oracle for slices.
bool overlay_by_oracle(const CoverMap& p, const SetFamily& s) {
    for (PointIndex x = 0; x < p.domain()->size(); ++x) {
        PointSet st(p.domain()->size());
        for (const auto& e : s.elements())
            if (e.points.test(x)) st |= e.points;
        if (!oracle::slice_by_partitions(p, st)) return false;
    }
    return true;
}

} // namespace

TEST_CASE("overlay verdict examples", "[overlay]") {
    auto p = pmod(6, 3);
    auto bad = is_overlay_structure(p, arcs_cover(p.domain(), 3));
    CHECK_FALSE(bad.is_overlay);
    REQUIRE(bad.witness);
    const auto* sw = std::get_if<StarWitness>(&*bad.witness);
    REQUIRE(sw);
    CHECK(sw->point == "0");
    CHECK(p.domain()->names_of(sw->star) == std::vector<std::string>{"0", "1", "2", "4", "5"});

    for (auto m : all_methods) {
        CHECK(is_overlay_structure(p, arcs_cover(p.domain(), 2), m).is_overlay);
        auto v = is_overlay_structure(p, arcs_cover(p.domain(), 3), m);
        CHECK_FALSE(v.is_overlay);
        REQUIRE(v.witness);
        CHECK(witness_is_genuine(p, arcs_cover(p.domain(), 3), *v.witness));
    }
    auto c5 = cycle_space(5);
    for (auto m : all_methods) CHECK(is_overlay_structure(identity_map(c5), arcs_cover(c5, 4), m).is_overlay);

    try {
        is_overlay_structure(p, whole_cover(p.domain()));
        FAIL("expected a precondition error");
    } catch (const PreconditionError& e) {
        CHECK(e.offending() == "all");
    }
    CHECK_FALSE(is_overlay(p, whole_cover(p.domain())));
}

TEST_CASE("method names parse", "[overlay]") {
    for (auto m : all_methods) CHECK(parse_overlay_method(to_string(m)) == m);
    CHECK_THROWS_AS(parse_overlay_method("prop44a"), InputError);
}

TEST_CASE("the three overlay criteria agree and witnesses are genuine", "[overlay][property]") {
    std::mt19937_64 rng(44);
    int overlays = 0, non_overlays = 0;
    for (int trial = 0; trial < 300; ++trial) {
        auto p = random_covering_instance(rng);
        const auto& s = p.structure();
        const bool expected = overlay_by_oracle(p, s);
        for (auto m : all_methods) {
            auto v = is_overlay_structure(p, s, m);
            REQUIRE(v.is_overlay == expected);
            REQUIRE(v.witness.has_value() == !v.is_overlay);
            if (v.witness) CHECK(witness_is_genuine(p, s, *v.witness));
        }
        (expected ? overlays : non_overlays)++;
    }
    CHECK(overlays > 30);
    CHECK(non_overlays > 30);
}

TEST_CASE("cycle cover grid matches the documented verdicts", "[overlay][generators]") {
    for (std::size_t k = 1; k <= 3; ++k)
        for (std::size_t n = 3; n <= 6; ++n)
            for (std::size_t m = 1; m <= n; ++m) {
                auto inst = gen_cycle_cover(k, n, m);
                CHECK(is_covering_structure(inst.map, inst.map.structure()) == inst.expect_covering);
                CHECK(is_overlay(inst.map, inst.map.structure()) == inst.expect_overlay);
            }
    auto ex = gen_cycle_cover(2, 3, 3);
    CHECK(ex.expect_covering);
    CHECK_FALSE(ex.expect_overlay);
    CHECK(gen_cycle_cover(2, 3, 2).expect_overlay);
    CHECK(gen_cycle_cover(1, 3, 1).expect_overlay);
    CHECK_THROWS_AS(gen_cycle_cover(2, 3, 7), InputError);
}

TEST_CASE("refine_overlay_structure examples", "[overlay][refine]") {
    auto p = pmod(6, 3);
    auto single = refine_overlay_structure(p, arcs_cover(p.domain(), 2), singletons_cover(p.codomain()));
    CHECK(single.same_sets(singletons_cover(p.domain())));

    auto q = pmod(10, 5);
    auto r = refine_overlay_structure(q, arcs_cover(q.domain(), 3), arcs_cover(q.codomain(), 2));
    CHECK(r.same_sets(arcs_cover(q.domain(), 2)));

    auto c6 = cycle_space(6);
    auto id = identity_map(c6);
    auto s = arcs_cover(c6, 3);
    CHECK(refine_overlay_structure(id, s, image_cover(id, s)).same_sets(s));

    try {
        refine_overlay_structure(p, arcs_cover(p.domain(), 2), whole_cover(p.codomain()));
        FAIL("expected an input error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("'all'") != std::string::npos);
    }
    CHECK_THROWS_AS(refine_overlay_structure(p, arcs_cover(p.domain(), 3), singletons_cover(p.codomain())),
                    PreconditionError);
}

TEST_CASE("refinements of overlay covers carry overlay structures", "[overlay][refine][property]") {
    std::mt19937_64 rng(49);
    int refined = 0;
    for (int trial = 0; trial < 300 && refined < 80; ++trial) {
        auto p = random_covering_instance(rng);
        const auto& s = p.structure();
        if (!is_overlay(p, s)) continue;
        const Cover u = image_cover(p, s);
        // Random refinement: split each overlay-cover element into random nonempty parts.
        std::vector<CoverElement> parts;
        for (const auto& e : u.elements()) {
            auto pts = members(e.points);
            shuffle_with(pts, rng);
            const auto cut = draw(rng, 1, pts.size());
            parts.push_back({e.id + "L", make_set(u.space()->size(), std::vector<PointIndex>(pts.begin(), pts.begin() + static_cast<long>(cut)))});
            if (cut < pts.size())
                parts.push_back({e.id + "R", make_set(u.space()->size(), std::vector<PointIndex>(pts.begin() + static_cast<long>(cut), pts.end()))});
        }
        Cover v(u.space(), parts);
        auto out = refine_overlay_structure(p, s, v);
        CHECK(is_overlay_structure(p, out).is_overlay);
        CHECK(image_cover(p, out).same_sets(v));
        CHECK_FALSE(first_unrefined(out, s));
        ++refined;
    }
    CHECK(refined >= 40);
}

TEST_CASE("refine_to_covering_structure examples", "[overlay][lemma410]") {
    auto p = pmod(6, 3);
    auto v = arcs_cover(p.domain(), 3);
    auto s = refine_to_covering_structure(p, v);
    CHECK(is_covering_structure(p, s));
    CHECK_FALSE(first_unrefined(s, v));

    // Singleton fibers: nothing is removed, so S(x) is the chosen V(x).
    auto c5 = cycle_space(5);
    auto any = arcs_cover(c5, 2);
    auto kept = refine_to_covering_structure(identity_map(c5), any);
    for (PointIndex x = 0; x < 5; ++x) CHECK(kept.contains_set(any[any.containing(x).front()].points));
    for (const auto& e : kept.elements()) CHECK(any.contains_set(e.points));
    CHECK(kept.size() == 4);

    auto q = pmod(4, 2);
    auto v2 = arcs_cover(q.domain(), 2);
    auto s2 = refine_to_covering_structure(q, v2);
    CHECK(is_covering_structure(q, s2));
    CHECK_FALSE(first_unrefined(s2, v2));
    CHECK(is_overlay(q, s2));

    CHECK_THROWS_AS(refine_to_covering_structure(p, whole_cover(p.domain())), InputError);
}

TEST_CASE("refining a star refinement of a covering structure gives an overlay structure",
          "[overlay][lemma410][property]") {
    // Finite-fiber pipeline: covering structure V0, a star refinement V of V0
    // (the singletons always are one), then the covering-structure recipe.
    std::mt19937_64 rng(410);
    for (int trial = 0; trial < 100; ++trial) {
        auto p = random_covering_instance(rng);
        const auto& v0 = p.structure();
        std::vector<Cover> candidates{singletons_cover(p.domain())};
        // Stars of an overlay structure over its own refinement are a second source.
        auto halves = refine_to_covering_structure(p, v0);
        if (!first_star_unrefined(halves, v0)) candidates.push_back(halves);
        for (const auto& v : candidates) {
            REQUIRE_FALSE(first_star_unrefined(v, v0));
            auto s = refine_to_covering_structure(p, v);
            CHECK(is_covering_structure(p, s));
            CHECK(is_overlay(p, s));
        }
    }
}

TEST_CASE("the covering-structure recipe on covers by slices with fibers of at most two points",
          "[overlay][lemma410][property]") {
    std::mt19937_64 rng(4100);
    RandomInstanceParams two_sheets;
    two_sheets.max_fiber = 2;
    for (int trial = 0; trial < 300; ++trial) {
        auto p = random_covering_instance(rng, two_sheets);
        const auto& v = p.structure();
        auto s = refine_to_covering_structure(p, v);
        INFO("trial " << trial);
        CHECK(is_covering_structure(p, s));
        CHECK_FALSE(first_unrefined(s, v));
    }
}

TEST_CASE("the covering-structure recipe can fail on three-point fibers", "[overlay][lemma410]") {
    // Over y = {a*}: V(a0) and V(a1) share b0, so S(a0) = {a0} and S(a1) = {a1},
    // while S(a2) = {a2, b1} keeps its point over z. The fiber over y then has
    // no decomposition into output members with image {y}.
    auto X = make_space({"a0", "a1", "a2", "b0", "b1", "b2"});
    auto Y = make_space({"y", "z"});
    CoverMap p(X, Y, {0, 0, 0, 1, 1, 1});
    Cover v(X, {{"v0", X->subset({"a0", "b0"})},
                {"v1", X->subset({"a1", "b0"})},
                {"v2", X->subset({"a2", "b1"})},
                {"v3", X->subset({"b2"})}});
    for (const auto& e : v.elements()) REQUIRE(is_slice(p, e.points));
    auto s = refine_to_covering_structure(p, v);
    CHECK_FALSE(first_unrefined(s, v));
    CHECK(s.contains_set(X->subset({"a0"})));
    CHECK(s.contains_set(X->subset({"a2", "b1"})));
    auto check = check_covering_structure(p, s);
    CHECK_FALSE(check.holds);
    CHECK(check.failing_element == "S(a0)");
}
