#include <functional>
#include <random>

#include <catch_amalgamated.hpp>

#include "fincov/builders.hpp"
#include "fincov/generators.hpp"
#include "fincov/metric.hpp"
#include "fincov/random_instances.hpp"

using namespace fincov;

namespace {

const Rational eps(Integer(1), Integer(10));

long long hops(const FiniteSpace& cyc, PointIndex a, PointIndex b) {
    const auto n = static_cast<long long>(cyc.size());
    auto d = std::llabs(std::stoll(cyc.name(a)) - std::stoll(cyc.name(b)));
    return std::min(d, n - d);
}

/// Remetrized cycle distance for V = arcs(n, len): each point lies in len
/// arcs with weight 1/len, and points h apart share max(0, len - h) arcs.
Rational cycle_remetrized(long long h, long long len) {
    return eps * Rational(h) + Rational(Integer(2 * std::min(h, len)), Integer(len));
}

/// Shortest paths on cyc(total) where a step of j <= reach hops costs
/// step_cost(j); Bellman-Ford over hop offsets.
std::vector<Rational> cycle_chain_distances(long long total, long long reach,
                                            const std::function<Rational(long long)>& step_cost) {
    std::vector<std::optional<Rational>> best(total);
    best[0] = Rational(0);
    for (long long round = 0; round < total; ++round)
        for (long long h = 0; h < total; ++h) {
            if (!best[h]) continue;
            for (long long j = 1; j <= reach; ++j)
                for (long long dir : {-1LL, 1LL}) {
                    const auto to = ((h + dir * j) % total + total) % total;
                    Rational c = *best[h] + step_cost(j);
                    if (!best[to] || c < *best[to]) best[to] = c;
                }
        }
    std::vector<Rational> out;
    for (auto& b : best) out.push_back(*b);
    return out;
}

MetricTable scaled_cycle(std::size_t n) { return given_metric(metric_cycle_space(n, eps)); }

} // namespace

TEST_CASE("remetrized nine-cycle", "[metric]") {
    auto d = scaled_cycle(9);
    auto dy = remetrize_base(d, arcs_cover(d.space, 5), arcs_cover(d.space, 3));
    CHECK(dy.provenance == MetricProvenance::remetrized);
    const auto& y = *dy.space;
    for (PointIndex a = 0; a < 9; ++a)
        for (PointIndex b = 0; b < 9; ++b) CHECK(dy(a, b) == cycle_remetrized(hops(y, a, b), 3));
    CHECK(dy(y.index_of("0"), y.index_of("1")) == eps + Rational(Integer(2), Integer(3)));
    CHECK(dy(y.index_of("0"), y.index_of("3")) == Rational(Integer(3), Integer(10)) + 2);
    for (long long c = 0; c < 9; ++c) CHECK(y.open_ball(cycle_point(y, c), 2) == arc(y, c - 2, 5));
}

TEST_CASE("remetrized five-cycle and trivial refinement", "[metric]") {
    auto d = scaled_cycle(5);
    auto dy = remetrize_base(d, arcs_cover(d.space, 3), arcs_cover(d.space, 2));
    const auto& y = *dy.space;
    for (PointIndex a = 0; a < 5; ++a)
        for (PointIndex b = 0; b < 5; ++b) CHECK(dy(a, b) == cycle_remetrized(hops(y, a, b), 2));
    for (long long c = 0; c < 5; ++c) CHECK(y.open_ball(cycle_point(y, c), 2) == arc(y, c - 1, 3));

    auto whole = whole_cover(d.space);
    auto same = remetrize_base(d, whole, whole);
    CHECK(same.table() == d.table());
}

TEST_CASE("remetrize rejects a family that does not star refine", "[metric]") {
    auto d = scaled_cycle(9);
    try {
        remetrize_base(d, arcs_cover(d.space, 3), arcs_cover(d.space, 3));
        FAIL("accepted");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("star of '0'") != std::string::npos);
    }
}

TEST_CASE("chain metric over the eighteen-cycle", "[metric]") {
    auto d = scaled_cycle(9);
    auto dy = remetrize_base(d, arcs_cover(d.space, 5), arcs_cover(d.space, 3));
    auto p = pmod(18, 9);
    auto dx = chain_metric(p, arcs_cover(p.domain(), 5), dy);
    CHECK(dx.provenance == MetricProvenance::chain_constructed);
    const auto& x = *dx.space;
    auto oracle = cycle_chain_distances(18, 4, [](long long j) { return cycle_remetrized(std::min(j, 9 - j), 3); });
    for (PointIndex a = 0; a < 18; ++a) {
        for (PointIndex b = 0; b < 18; ++b) CHECK(dx(a, b) == oracle[static_cast<std::size_t>(hops(x, a, b))]);
        const auto c = std::stoll(x.name(a));
        CHECK(dx(a, cycle_point(x, c + 1)) == eps + Rational(Integer(2), Integer(3)));
        CHECK(x.open_ball(a, 1) == arc(x, c - 1, 3));
    }
    CHECK(check_local_isometry(p, dx, dy, 1).holds);
}

TEST_CASE("chain metric over the ten-cycle", "[metric]") {
    auto d = scaled_cycle(5);
    auto dy = remetrize_base(d, arcs_cover(d.space, 3), arcs_cover(d.space, 2));
    auto p = pmod(10, 5);
    auto dx = chain_metric(p, arcs_cover(p.domain(), 3), dy);
    CHECK(check_local_isometry(p, dx, dy, 1).holds);
    auto oracle = cycle_chain_distances(10, 2, [](long long j) { return cycle_remetrized(std::min(j, 5 - j), 2); });
    for (PointIndex a = 0; a < 10; ++a)
        for (PointIndex b = 0; b < 10; ++b)
            CHECK(dx(a, b) == oracle[static_cast<std::size_t>(hops(*dx.space, a, b))]);
}

TEST_CASE("chain metric on the identity reproduces the base", "[metric]") {
    auto d = scaled_cycle(9);
    auto dy = remetrize_base(d, arcs_cover(d.space, 5), arcs_cover(d.space, 3));
    auto id = identity_map(cycle_space(9));
    auto dx = chain_metric(id, arcs_cover(id.domain(), 5), dy);
    CHECK(dx.table() == dy.table());
}

TEST_CASE("chain metric preconditions", "[metric]") {
    auto d = scaled_cycle(9);
    auto dy = remetrize_base(d, arcs_cover(d.space, 5), arcs_cover(d.space, 3));
    auto p = pmod(18, 9);
    CHECK_THROWS_AS(chain_metric(p, arcs_cover(p.domain(), 3), dy), PreconditionError);
    CHECK_THROWS_AS(chain_metric(p, arcs_cover(p.domain(), 6), dy), PreconditionError);
}

TEST_CASE("local isometry examples", "[metric]") {
    auto y = given_metric(metric_cycle_space(5, eps));
    auto id = identity_map(y.space);
    for (auto r : {Rational(Integer(1), Integer(20)), Rational(1), Rational(3)}) CHECK(check_local_isometry(id, y, y, r).holds);

    auto p = pmod(6, 3);
    auto dx = given_metric(metric_cycle_space(6, 1)), dy = given_metric(metric_cycle_space(3, 1));
    auto r = check_local_isometry(p, dx, dy, 2);
    CHECK_FALSE(r.holds);
    CHECK(r.failing_point == "0");
    CHECK(check_local_isometry(p, dx, dy, 1).holds);
}

TEST_CASE("metric pipeline on cycle covers", "[metric][property]") {
    struct Case { std::size_t k, n, m, v; };
    for (auto [k, n, m, v] : std::vector<Case>{{2, 9, 5, 3}, {2, 5, 3, 2}, {3, 7, 3, 2}, {3, 9, 4, 2}, {2, 11, 5, 3},
                                               {4, 6, 3, 2}, {1, 6, 3, 2}}) {
        INFO(k << "," << n << "," << m);
        auto inst = gen_cycle_cover(k, n, m, eps);
        const auto& p = inst.map;
        auto pipe = metrize_overlay(p, p.structure(), given_metric(p.codomain()), arcs_cover(p.codomain(), v));
        CHECK(check_local_isometry(pipe.map, pipe.total, pipe.base, 1).holds);
        CHECK(is_overlay(pipe.map, ball_cover(pipe.total, Rational(Integer(1), Integer(3)))));
    }
}

TEST_CASE("metric pipeline on random overlays", "[metric][property]") {
    std::mt19937_64 rng(54);
    std::size_t done = 0, nontrivial = 0;
    for (int trial = 0; trial < 2000 && done < 60; ++trial) {
        auto p = random_covering_instance(rng);
        const auto& s = p.structure();
        if (!is_overlay(p, s)) continue;
        auto label = chain_components(s);
        if (std::any_of(label.begin(), label.end(), [](std::size_t l) { return l != 0; })) continue;
        const auto ny = p.codomain()->size();
        DistanceTable base(ny);
        for (PointIndex a = 0; a < ny; ++a)
            for (PointIndex b = a + 1; b < ny; ++b) base.set(a, b, eps * Rational(static_cast<long long>(1 + (a + b) % 2)));
        auto d = attach_metric(*p.codomain(), base, MetricProvenance::given);
        const Cover u = image_cover(p, s);
        const SetFamily v = first_star_unrefined(u, u) ? SetFamily(singletons_cover(p.codomain())) : SetFamily(u);
        auto pipe = metrize_overlay(p, s, d, v);
        ++done;
        for (PointIndex y = 0; y < ny; ++y) nontrivial += pipe.base.space->open_ball(y, 2).count() > 1;
        CHECK(check_local_isometry(pipe.map, pipe.total, pipe.base, 1).holds);
        for (PointIndex a = 0; a < p.domain()->size(); ++a)
            for (PointIndex b = 0; b < p.domain()->size(); ++b) CHECK(pipe.total(a, b) >= pipe.base(p(a), p(b)));
    }
    CHECK(done >= 30);
    CHECK(nontrivial > 0);
}
