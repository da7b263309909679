#include <random>

#include <catch_amalgamated.hpp>

#include "fincov/builders.hpp"
#include "fincov/generators.hpp"
#include "fincov/nerve.hpp"
#include "fincov/random_instances.hpp"

using namespace fincov;

namespace {

std::size_t count_dim(const SimplicialComplex& k, std::size_t dim) {
    std::size_t n = 0;
    for (const auto& s : k.simplices()) n += s.size() == dim + 1;
    return n;
}

/// Nerve by testing every subset of members; for families of at most 16.
std::set<std::vector<std::size_t>> nerve_by_subsets(const SetFamily& c, std::size_t cap) {
    std::set<std::vector<std::size_t>> out;
    for (unsigned long mask = 1; mask < (1ul << c.size()); ++mask) {
        std::vector<std::size_t> s;
        PointSet common = full_set(c.space()->size());
        for (std::size_t k = 0; k < c.size(); ++k)
            if (mask & (1ul << k)) {
                s.push_back(k);
                common &= c[k].points;
            }
        if (s.size() <= cap + 1 && common.any()) out.insert(s);
    }
    return out;
}

} // namespace

TEST_CASE("nerve examples", "[nerve]") {
    auto tri = build_nerve(arcs_cover(cycle_space(3), 2));
    CHECK(tri.vertices().size() == 3);
    CHECK(count_dim(tri, 1) == 3);
    CHECK(count_dim(tri, 2) == 0);

    auto one = build_nerve(whole_cover(cycle_space(4)));
    CHECK(one.simplices().size() == 1);

    auto hex = build_nerve(arcs_cover(cycle_space(6), 2));
    CHECK(count_dim(hex, 1) == 6);
    CHECK(hex.dimension() == 1);
    for (std::size_t v = 0; v < 6; ++v) CHECK(hex.neighbors(v).size() == 2);
}

TEST_CASE("nerve simplices are exactly the intersecting subfamilies", "[nerve][property]") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 100; ++trial) {
        auto p = random_covering_instance(rng);
        const auto& s = p.structure();
        if (s.size() > 14) continue;
        for (std::size_t cap : {1, 2, 3}) CHECK(build_nerve(s, cap).simplices() == nerve_by_subsets(s, cap));
    }
}

TEST_CASE("induced map examples", "[nerve]") {
    auto p = pmod(6, 3);
    auto f = induced_map(p, arcs_cover(p.domain(), 2));
    for (std::size_t v = 0; v < 6; ++v)
        CHECK(f.target().vertices()[f(v)] == "a" + std::to_string(std::stoi(f.source().vertices()[v].substr(1)) % 3));
    for (auto mode : {NerveCoveringMode::full, NerveCoveringMode::one_skeleton})
        CHECK(is_simplicial_covering(f, mode).is_covering);

    auto c4 = cycle_space(4);
    auto id = induced_map(identity_map(c4), arcs_cover(c4, 2));
    for (std::size_t v = 0; v < 4; ++v) CHECK(id(v) == v);
    CHECK(is_simplicial_covering(id, NerveCoveringMode::full).is_covering);
    CHECK(is_simplicial_covering(id, NerveCoveringMode::one_skeleton).is_covering);

    auto g = induced_map(p, arcs_cover(p.domain(), 3));
    auto v1 = is_simplicial_covering(g, NerveCoveringMode::one_skeleton);
    CHECK_FALSE(v1.is_covering);
    REQUIRE(v1.witness);
    CHECK(v1.witness->reason == "two edges at one vertex with equal image");
    CHECK(v1.witness->involved.size() == 2);
    CHECK_FALSE(is_simplicial_covering(g, NerveCoveringMode::full).is_covering);
}

TEST_CASE("non-simplicial vertex maps are rejected", "[nerve]") {
    auto hex = build_nerve(arcs_cover(cycle_space(6), 2));
    auto pts = build_nerve(singletons_cover(cycle_space(2)));
    CHECK_THROWS_AS(SimplicialMap(hex, pts, {0, 0, 0, 1, 1, 1}), InputError);
}

TEST_CASE("nerve covering verdicts equal overlay verdicts", "[nerve][property]") {
    std::mt19937_64 rng(710);
    for (int trial = 0; trial < 200; ++trial) {
        auto p = random_covering_instance(rng);
        const auto& s = p.structure();
        const bool overlay = is_overlay(p, s);
        for (std::size_t cap : {2, 3}) {
            auto f = induced_map(p, s, cap);
            CHECK(is_simplicial_covering(f, NerveCoveringMode::full).is_covering == overlay);
            CHECK(is_simplicial_covering(f, NerveCoveringMode::one_skeleton).is_covering == overlay);
        }
    }
}

TEST_CASE("DOT export lists vertices and edges", "[nerve]") {
    auto dot = to_dot(build_nerve(arcs_cover(cycle_space(3), 2)));
    CHECK(dot.find("graph \"nerve\" {") == 0);
    CHECK(dot.find("\"a0\" -- \"a1\";") != std::string::npos);
    CHECK(dot.find("\"a0\" -- \"a2\";") != std::string::npos);
}

TEST_CASE("pullback examples", "[nerve][pullback]") {
    auto p = pmod(6, 3);
    auto r = verify_pullback(p, arcs_cover(p.domain(), 2));
    CHECK(r.holds);
    CHECK(r.partition_exact);
    CHECK(r.commutes);
    REQUIRE(r.points.size() == 3);
    for (const auto& pt : r.points) {
        CHECK(pt.solutions == 2);
        CHECK(pt.fiber_matches);
    }
    auto c4 = cycle_space(4);
    auto id = verify_pullback(identity_map(c4), arcs_cover(c4, 2));
    CHECK(id.holds);
    for (const auto& pt : id.points) CHECK(pt.solutions == 1);

    auto q = pmod(10, 5);
    CHECK(verify_pullback(q, arcs_cover(q.domain(), 2)).holds);
    CHECK_THROWS_AS(verify_pullback(p, arcs_cover(p.domain(), 3)), PreconditionError);
}

TEST_CASE("pullback solutions match fibers on overlay instances", "[nerve][pullback][property]") {
    std::mt19937_64 rng(72);
    int seen = 0;
    for (int trial = 0; trial < 200; ++trial) {
        auto p = random_covering_instance(rng);
        if (!is_overlay(p, p.structure())) continue;
        auto r = verify_pullback(p, p.structure());
        CHECK(r.holds);
        for (const auto& pt : r.points) CHECK(pt.solutions == pt.fiber_size);
        ++seen;
    }
    auto w = wedge3();
    CHECK(verify_pullback(w.map, w.map.structure()).holds);
    CHECK(seen > 30);
}
