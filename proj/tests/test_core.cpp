#include <random>

#include <catch_amalgamated.hpp>

#include "fincov/builders.hpp"
#include "fincov/slices.hpp"
#include "oracles.hpp"

using namespace fincov;

namespace {

PointSet cyc_set(const FiniteSpace& cyc, std::initializer_list<long long> pts) {
    PointSet s(cyc.size());
    for (auto i : pts) s.set(cycle_point(cyc, i));
    return s;
}

/// Random surjection onto a random codomain with a random subset, for
/// property checks against the brute-force oracles.
struct RandomMap {
    CoverMap map;
    PointSet subset;
};

RandomMap random_map(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> ysize(1, 4);
    const auto ny = static_cast<std::size_t>(ysize(rng));
    std::vector<std::size_t> fiber(ny);
    std::size_t nx = 0;
    for (auto& f : fiber) {
        f = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
        nx += f;
    }
    std::vector<std::string> xs, ys;
    for (std::size_t i = 0; i < nx; ++i) xs.push_back("x" + std::to_string(i));
    for (std::size_t i = 0; i < ny; ++i) ys.push_back("y" + std::to_string(i));
    auto X = make_space(xs), Y = make_space(ys);
    std::vector<PointIndex> m;
    for (std::size_t y = 0; y < ny; ++y)
        for (std::size_t k = 0; k < fiber[y]; ++k) m.push_back(y);
    std::shuffle(m.begin(), m.end(), rng);
    PointSet u(nx);
    while (u.none())
        for (std::size_t i = 0; i < nx; ++i)
            if (rng() % 3 == 0) u.set(i);
    return {CoverMap(X, Y, m), u};
}

} // namespace

TEST_CASE("rationals parse and print in canonical p/q form", "[core]") {
    CHECK(format_rational(parse_rational("2/4")) == "1/2");
    CHECK(format_rational(parse_rational("3")) == "3/1");
    CHECK(format_rational(parse_rational("0")) == "0/1");
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("a/2"), InputError);
    CHECK_THROWS_AS(parse_rational(""), InputError);
}

TEST_CASE("spaces order points lexicographically and validate metrics", "[core]") {
    auto s = make_space({"b", "a", "10", "2"});
    CHECK(s->points() == std::vector<std::string>{"10", "2", "a", "b"});
    CHECK_THROWS_AS(make_space({}), InputError);
    CHECK_THROWS_AS(make_space({"a", "a"}), InputError);

    DistanceTable d(3);
    d.set(0, 1, make_rational(1));
    d.set(1, 2, make_rational(1));
    d.set(0, 2, make_rational(3));
    CHECK_THROWS_AS(make_space({"a", "b", "c"}, d), InputError); // triangle inequality
    d.set(0, 2, make_rational(2));
    CHECK_NOTHROW(make_space({"a", "b", "c"}, d));
    DistanceTable zero(2);
    CHECK_THROWS_AS(make_space({"a", "b"}, zero), InputError);
}

TEST_CASE("covers merge equal sets and must cover the space", "[core]") {
    auto c3 = cycle_space(3);
    auto whole = arcs_cover(c3, 3);
    REQUIRE(whole.size() == 1);
    CHECK(whole[0].id == "a0");

    Cover merged(c3, {{"z", full_set(3)}, {"b", full_set(3)}, {"c", make_set(3, {0})}});
    CHECK(merged.size() == 2);
    CHECK(merged[0].id == "b");

    CHECK_THROWS_AS(Cover(c3, {{"a", make_set(3, {0})}}), InputError);
    CHECK_THROWS_AS(Cover(c3, {{"a", full_set(3)}, {"a", make_set(3, {1})}}), InputError);
    CHECK_THROWS_AS(Cover(c3, {{"a", full_set(3)}, {"e", empty_set(3)}}), InputError);
    CHECK_NOTHROW(SetFamily(c3, {{"a", make_set(3, {0})}}));
}

TEST_CASE("maps must be surjective", "[core]") {
    auto X = cycle_space(2), Y = cycle_space(3);
    CHECK_THROWS_AS(CoverMap(X, Y, {0, 1}), InputError);
    CHECK_THROWS_AS(CoverMap(Y, X, {0, 1}), InputError);
}

TEST_CASE("star is the union of members through the point", "[core][star]") {
    auto c6 = cycle_space(6);
    auto s = arcs_cover(c6, 3);
    CHECK(star("0", s) == cyc_set(*c6, {4, 5, 0, 1, 2}));

    auto c3 = cycle_space(3);
    CHECK(star("1", whole_cover(c3)).all());
    CHECK(star("0", singletons_cover(c3)) == make_set(3, {c3->index_of("0")}));
    CHECK_THROWS_AS(star("7", s), InputError);
}

TEST_CASE("star contains exactly the members through the point", "[core][star][property]") {
    auto c9 = cycle_space(9);
    for (std::size_t m = 1; m <= 9; ++m) {
        auto s = arcs_cover(c9, m);
        for (PointIndex x = 0; x < 9; ++x) {
            PointSet expected(9);
            for (const auto& e : s.elements()) {
                if (e.points.test(x)) {
                    CHECK(e.points.is_subset_of(star(x, s)));
                    expected |= e.points;
                }
            }
            CHECK(expected == star(x, s));
        }
    }
}

TEST_CASE("is_slice examples", "[core][slice]") {
    auto p = pmod(6, 3);
    const auto& X = *p.domain();
    auto res = is_slice(p, arc(X, 0, 3));
    REQUIRE(res.is_slice);
    REQUIRE(res.decomposition->blocks.size() == 2);
    CHECK(res.decomposition->blocks[0] == cyc_set(X, {0, 1, 2}));
    CHECK(res.decomposition->blocks[1] == cyc_set(X, {3, 4, 5}));

    auto c3 = cycle_space(3);
    auto id = identity_map(c3);
    auto single = is_slice(id, make_set(3, {0, 1}));
    REQUIRE(single.is_slice);
    CHECK(single.decomposition->blocks.size() == 1);

    CHECK_FALSE(is_slice(p, cyc_set(X, {0, 1, 3})).is_slice);
    CHECK_THROWS_AS(is_slice(p, empty_set(6)), InputError);
}

TEST_CASE("slice criterion agrees with exhaustive partition search", "[core][slice][property]") {
    std::mt19937_64 rng(7);
    int slices = 0;
    for (int trial = 0; trial < 400; ++trial) {
        auto [p, u] = random_map(rng);
        const bool fast = is_slice(p, u).is_slice;
        REQUIRE(fast == oracle::slice_by_partitions(p, u));
        if (fast) {
            ++slices;
            CHECK(equal_fiber_cardinality(p, p.image(u)));
            const auto check = is_slice(p, u);
            const auto& dec = *check.decomposition;
            PointSet seen(p.domain()->size());
            for (const auto& b : dec.blocks) {
                CHECK_FALSE(seen.intersects(b));
                seen |= b;
                CHECK(p.injective_on(b));
                CHECK(p.image(b) == dec.target);
            }
            CHECK(seen == p.preimage(dec.target));
        }
    }
    CHECK(slices > 20);
}

TEST_CASE("slice_decompositions examples", "[core][decomposition]") {
    auto p = pmod(6, 3);
    auto s = arcs_cover(p.domain(), 3);
    auto decs = slice_decompositions(p, "a0", s);
    REQUIRE(decs.size() == 1);
    CHECK(decs[0].block_ids == std::vector<std::string>{"a0", "a3"});

    auto c4 = cycle_space(4);
    auto id = identity_map(c4);
    auto any = arcs_cover(c4, 2);
    for (const auto& e : any.elements()) {
        auto d = slice_decompositions(id, e.id, any);
        REQUIRE(d.size() == 1);
        CHECK(d[0].block_ids == std::vector<std::string>{e.id});
    }

    SetFamily only(p.domain(), {{"a0", arc(*p.domain(), 0, 3)}});
    CHECK(slice_decompositions(p, "a0", only).empty());
    CHECK_THROWS_AS(slice_decompositions(p, "nope", s), InputError);
}

TEST_CASE("slice_decompositions returns exactly the partitions found by subset enumeration",
          "[core][decomposition][property]") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 150; ++trial) {
        auto [p, u] = random_map(rng);
        const auto nx = p.domain()->size();
        std::vector<CoverElement> els;
        for (int k = 0; k < 7; ++k) {
            PointSet s(nx);
            while (s.none())
                for (std::size_t i = 0; i < nx; ++i)
                    if (rng() % 2) s.set(i);
            els.push_back({"e" + std::to_string(k), s});
        }
        els.push_back({"u", u});
        SetFamily family(p.domain(), els);
        for (std::size_t k = 0; k < family.size(); ++k) {
            auto got = slice_decompositions(p, family[k].id, family);
            auto expected = oracle::decompositions_by_subsets(p, k, family);
            REQUIRE(got.size() == expected.size());
            for (const auto& d : got) {
                PointSet seen(nx);
                for (const auto& b : d.blocks) {
                    CHECK_FALSE(seen.intersects(b));
                    seen |= b;
                    CHECK(p.image(b) == d.target);
                }
                CHECK(seen == p.preimage(d.target));
            }
        }
    }
}

TEST_CASE("is_covering_structure examples", "[core][covering]") {
    auto p = pmod(6, 3);
    CHECK(is_covering_structure(p, arcs_cover(p.domain(), 3)));
    CHECK(is_covering_structure(p, arcs_cover(p.domain(), 2)));
    auto whole = check_covering_structure(p, whole_cover(p.domain()));
    CHECK_FALSE(whole.holds);
    CHECK(whole.failing_element == "all");
    CHECK(is_covering_structure(identity_map(cycle_space(3)), arcs_cover(cycle_space(3), 2)));
}

TEST_CASE("image covers name sets after the smallest preimage id", "[core]") {
    auto p = pmod(6, 3);
    auto u = image_cover(p, arcs_cover(p.domain(), 2));
    REQUIRE(u.size() == 3);
    CHECK(u[0].id == "a0");
    CHECK(u[0].points == arc(*p.codomain(), 0, 2));
    CHECK(u[2].id == "a2");
}
