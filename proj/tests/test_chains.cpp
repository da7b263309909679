#include <random>

#include <catch_amalgamated.hpp>

#include "fincov/chains.hpp"
#include "fincov/generators.hpp"
#include "fincov/random_instances.hpp"
#include "oracles.hpp"

using namespace fincov;

namespace {

std::vector<PointIndex> idx(const FiniteSpace& cyc, std::initializer_list<long long> pts) {
    std::vector<PointIndex> out;
    for (auto i : pts) out.push_back(cycle_point(cyc, i));
    return out;
}

std::vector<std::vector<PointIndex>> as_points(const std::vector<Lift>& lifts) {
    std::vector<std::vector<PointIndex>> out;
    for (const auto& l : lifts) out.push_back(l.points);
    std::sort(out.begin(), out.end());
    return out;
}

/// Random walk of the given number of steps along the image cover.
std::vector<PointIndex> random_chain(const Cover& u, std::size_t steps, std::mt19937_64& rng) {
    std::vector<PointIndex> ys{draw(rng, 0, u.space()->size() - 1)};
    for (std::size_t i = 0; i < steps; ++i) {
        auto options = members(star(ys.back(), u));
        ys.push_back(options[draw(rng, 0, options.size() - 1)]);
    }
    return ys;
}

} // namespace

TEST_CASE("chains are validated against their cover", "[chains]") {
    auto c3 = cycle_space(3);
    auto chain = Chain::from_names(arcs_cover(c3, 2), {"0", "1", "2", "0"});
    CHECK(chain.is_loop());
    CHECK(chain.steps() == 3);
    auto c6 = cycle_space(6);
    CHECK_THROWS_AS(Chain(arcs_cover(c6, 2), idx(*c6, {0, 2})), InputError);
}

TEST_CASE("lift_chain examples", "[chains][lift]") {
    auto p = pmod(6, 3);
    const auto& X = *p.domain();
    const auto& Y = *p.codomain();
    auto s2 = arcs_cover(p.domain(), 2);
    Chain loop(image_cover(p, s2), idx(Y, {0, 1, 2, 0}));
    auto lifts = lift_chain(p, s2, loop, X.index_of("0"));
    REQUIRE(lifts.size() == 1);
    CHECK(lifts[0].points == idx(X, {0, 1, 2, 3}));
    CHECK_FALSE(lifts[0].is_loop());

    auto s3 = arcs_cover(p.domain(), 3);
    Chain step(image_cover(p, s3), idx(Y, {0, 1}));
    auto two = lift_chain(p, s3, step, X.index_of("0"));
    CHECK(as_points(two) == std::vector<std::vector<PointIndex>>{idx(X, {0, 1}), idx(X, {0, 4})});

    auto c5 = cycle_space(5);
    auto id = identity_map(c5).with_structure(arcs_cover(c5, 2));
    Chain c(image_cover(id, id.structure()), idx(*c5, {0, 1, 2, 1, 0, 4}));
    auto same = lift_chain(id, c, c.front());
    REQUIRE(same.size() == 1);
    CHECK(same[0].points == c.points());

    CHECK_THROWS_AS(lift_chain(p, s2, loop, X.index_of("1")), InputError);
}

TEST_CASE("lifts agree with exhaustive sequence enumeration", "[chains][lift][property]") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 150; ++trial) {
        auto p = random_covering_instance(rng);
        const auto& s = p.structure();
        Lifter lifter(p, s);
        for (int rep = 0; rep < 4; ++rep) {
            auto ys = random_chain(lifter.overlay_cover(), draw(rng, 0, 5), rng);
            for (auto x0 : members(p.fiber(ys.front()))) {
                auto expected = oracle::lifts_by_enumeration(p, s, ys, x0);
                auto got = lift_chain(p, s, Chain(lifter.overlay_cover(), ys), x0);
                REQUIRE(as_points(got) == expected);
                CHECK(lifter.count_lifts(ys, x0) == expected.size());
                for (const auto& l : got) CHECK(is_valid_lift(lifter, l, ys));
            }
        }
    }
}

TEST_CASE("unique-lifting verdict examples", "[chains][thm53]") {
    auto p = pmod(6, 3);
    CHECK(verify_unique_lifting(p, arcs_cover(p.domain(), 2)).unique_lifts);
    auto bad = verify_unique_lifting(p, arcs_cover(p.domain(), 3));
    CHECK_FALSE(bad.unique_lifts);
    REQUIRE(bad.witness);
    CHECK(p.codomain()->name(bad.witness->y0) == "0");
    CHECK(p.codomain()->name(bad.witness->y1) == "1");
    CHECK(p.domain()->name(bad.witness->x0) == "0");
    CHECK(bad.witness->lifts == 2);
    auto c4 = cycle_space(4);
    CHECK(verify_unique_lifting(identity_map(c4), arcs_cover(c4, 3)).unique_lifts);
}

TEST_CASE("one-step lifting decides lifting of longer chains", "[chains][thm53][property]") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        auto p = random_covering_instance(rng);
        const auto& s = p.structure();
        const bool unique = verify_unique_lifting(p, s).unique_lifts;
        CHECK(unique == is_overlay_structure(p, s).is_overlay);
        Lifter lifter(p, s);
        bool all_unique = true;
        for (int rep = 0; rep < 20; ++rep) {
            auto ys = random_chain(lifter.overlay_cover(), draw(rng, 1, 6), rng);
            for (auto x0 : members(p.fiber(ys.front())))
                all_unique = all_unique && lifter.count_lifts(ys, x0) == 1;
        }
        if (unique) CHECK(all_unique);
    }
}

TEST_CASE("unique lifts extend step by step", "[chains][property]") {
    std::mt19937_64 rng(8);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        auto p = random_covering_instance(rng);
        if (!is_overlay(p, p.structure())) continue;
        Lifter lifter(p, p.structure());
        auto ys = random_chain(lifter.overlay_cover(), draw(rng, 1, 6), rng);
        for (auto x0 : members(p.fiber(ys.front()))) {
            auto whole = lifter.unique_lift(ys, x0);
            REQUIRE(whole);
            std::vector<PointIndex> prefix(ys.begin(), ys.end() - 1);
            auto head = lifter.unique_lift(prefix, x0);
            REQUIRE(head);
            auto last = lifter.unique_step(head->points.back(), ys.back());
            REQUIRE(last);
            head->points.push_back(*last);
            CHECK(head->points == whole->points);
            ++checked;
        }
    }
    CHECK(checked > 50);
}

TEST_CASE("irregular loop search examples", "[chains][irregular]") {
    auto p = pmod(6, 3);
    CHECK_FALSE(find_irregular_loop(p, arcs_cover(p.domain(), 2), 12));
    auto c4 = cycle_space(4);
    CHECK_FALSE(find_irregular_loop(identity_map(c4), arcs_cover(c4, 2), 8));
    CHECK_THROWS_AS(find_irregular_loop(p, arcs_cover(p.domain(), 3), 12), PreconditionError);

    auto w = wedge3();
    auto found = find_irregular_loop(w.map, w.map.structure(), 8);
    REQUIRE(found);
    const auto& loop = found->loop;
    CHECK(loop.front() == loop.back());
    CHECK(loop.size() - 1 <= 8);
    Lifter lifter(w.map, w.map.structure());
    CHECK(is_valid_lift(lifter, {found->closed_lift}, loop));
    CHECK(is_valid_lift(lifter, {found->open_lift}, loop));
    CHECK(found->closed_lift.front() == found->closed_lift.back());
    CHECK(found->open_lift.front() != found->open_lift.back());

    auto regular = gen_wedge_cover(parse_cycles("(1 2 3)", 3), parse_cycles("(1 2 3)", 3));
    CHECK_FALSE(find_irregular_loop(regular.map, regular.map.structure(), 2 * regular.map.domain()->size()));
}

TEST_CASE("cycle notation round trips", "[generators]") {
    CHECK(format_cycles(parse_cycles("(1 2)(3 4)", 4)) == "(1 2)(3 4)");
    CHECK(format_cycles(parse_cycles("id", 3)) == "id");
    CHECK(parse_cycles("(1,3,2)", 3) == Permutation{2, 0, 1});
    CHECK_THROWS_AS(parse_cycles("(1 4)", 3), InputError);
    CHECK_THROWS_AS(parse_cycles("(1 1)", 3), InputError);
    CHECK_THROWS_AS(gen_wedge_cover(parse_cycles("(1 2)", 3), parse_cycles("(1 2)", 3)), InputError);
}
