#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fincov/actions.hpp"
#include "fincov/overlay.hpp"
#include "fincov/space.hpp"

namespace fincov {

enum class MetricProvenance { given, remetrized, chain_constructed };

inline const char* to_string(MetricProvenance p) {
    switch (p) {
        case MetricProvenance::given: return "given";
        case MetricProvenance::remetrized: return "remetrized";
        case MetricProvenance::chain_constructed: return "chain_constructed";
    }
    return "?";
}

/// A space carrying a validated exact metric, tagged with where it came from.
struct MetricTable {
    SpacePtr space;
    MetricProvenance provenance = MetricProvenance::given;

    const DistanceTable& table() const { return space->metric(); }
    const Rational& operator()(PointIndex a, PointIndex b) const { return space->distance(a, b); }
};

inline MetricTable given_metric(const SpacePtr& space) {
    require(space->has_metric(), "space has no metric");
    return {space, MetricProvenance::given};
}

inline MetricTable attach_metric(const FiniteSpace& space, DistanceTable d, MetricProvenance provenance) {
    return {std::make_shared<const FiniteSpace>(space.with_metric(std::move(d))), provenance};
}

struct LocalIsometryReport {
    bool holds = false;
    std::optional<std::string> failing_point;
    std::string reason;
};

/// Open balls of radius r around every point, ids "B(<x>)".
inline Cover ball_cover(const MetricTable& d, const Rational& r) {
    std::vector<CoverElement> els;
    for (PointIndex x = 0; x < d.space->size(); ++x)
        els.push_back({"B(" + d.space->name(x) + ")", d.space->open_ball(x, r)});
    return Cover(d.space, std::move(els));
}

/// p maps every open ball B(x, r) bijectively and isometrically onto
/// B(p(x), r). When it does, the balls of radius r/3 are checked to form an
/// overlay structure of p.
inline LocalIsometryReport check_local_isometry(const CoverMap& p, const MetricTable& dx, const MetricTable& dy,
                                                const Rational& r) {
    require(dx.space->points() == p.domain()->points(), "domain metric lives on another space");
    require(dy.space->points() == p.codomain()->points(), "codomain metric lives on another space");
    require(r > 0, "radius must be positive");
    for (PointIndex x = 0; x < p.domain()->size(); ++x) {
        const auto& name = p.domain()->name(x);
        const PointSet bx = dx.space->open_ball(x, r);
        if (!p.injective_on(bx)) return {false, name, "p is not injective on the ball"};
        if (p.image(bx) != dy.space->open_ball(p(x), r)) return {false, name, "ball is not mapped onto the image ball"};
        const auto pts = members(bx);
        for (auto a : pts)
            for (auto b : pts)
                if (dx(a, b) != dy(p(a), p(b))) return {false, name, "distances are not preserved on the ball"};
    }
    ensure(is_overlay(p, ball_cover(dx, r / 3)), "balls of a third of the radius are not an overlay structure");
    return {true, std::nullopt, ""};
}

/// d_Y(y, z) = d(y, z) + sum_j |phi_j(y) - phi_j(z)| with the degree
/// partition of unity phi_j(y) = [y in V_j] / #{j : y in V_j} of the star
/// refinement V of U. Checks that points with no common V-member end up
/// more than 2 apart, so every 2-ball lies in a star of V, hence in a member of U.
inline MetricTable remetrize_base(const MetricTable& d, const SetFamily& u, const SetFamily& v) {
    require_same_space(u, d.space, "cover");
    require(v.space()->points() == d.space->points(), "refinement lives on another space");
    require(v.covers_space(), "refinement does not cover the space");
    if (auto y = first_star_unrefined(v, u)) throw InputError("star of '" + *y + "' lies in no member of the cover");
    const auto n = d.space->size();
    std::vector<std::vector<Rational>> phi(n, std::vector<Rational>(v.size()));
    for (PointIndex y = 0; y < n; ++y) {
        const auto deg = v.containing(y).size();
        for (auto j : v.containing(y)) phi[y][j] = Rational(Integer(1), Integer(deg));
    }
    DistanceTable out(n);
    for (PointIndex a = 0; a < n; ++a)
        for (PointIndex b = a + 1; b < n; ++b) {
            Rational sum = d(a, b);
            for (std::size_t j = 0; j < v.size(); ++j) sum += abs(phi[a][j] - phi[b][j]);
            out.set(a, b, sum);
        }
    auto table = attach_metric(*d.space, std::move(out), MetricProvenance::remetrized);
    for (PointIndex a = 0; a < n; ++a) {
        const PointSet st = star(a, v);
        for (PointIndex b = 0; b < n; ++b)
            if (!st.test(b)) ensure(table(a, b) > 2, "points without a common member are within distance 2");
        ensure(table.space->open_ball(a, 2).is_subset_of(st), "2-ball leaves the star");
    }
    return table;
}

/// d_X(x, x') = least total d_Y-length of the image of an S-chain from x to
/// x', by shortest paths over pairs sharing a member of S. Requires S to be
/// an overlay structure whose image cover is exactly the family of open
/// 2-balls of d_Y. Checks the metric axioms, d_X >= d_Y o (p x p), distance
/// at least 2 within fibers, and that p is an isometry on every unit ball.
inline MetricTable chain_metric(const CoverMap& p, const SetFamily& s, const MetricTable& dy) {
    require(dy.space->points() == p.codomain()->points(), "codomain metric lives on another space");
    require_same_space(s, p.domain(), "structure");
    if (!is_overlay(p, s)) throw PreconditionError("structure is not an overlay structure");
    if (!image_cover(p, s).same_sets(ball_cover(dy, 2)))
        throw PreconditionError("overlay cover is not the family of open 2-balls");
    require_chain_connected(s);

    const auto n = p.domain()->size();
    std::vector<std::vector<std::optional<Rational>>> dist(n, std::vector<std::optional<Rational>>(n));
    for (PointIndex a = 0; a < n; ++a) {
        dist[a][a] = Rational(0);
        for_each_member(star(a, s), [&](PointIndex b) {
            if (b != a) dist[a][b] = dy(p(a), p(b));
        });
    }
    for (PointIndex k = 0; k < n; ++k)
        for (PointIndex a = 0; a < n; ++a) {
            if (!dist[a][k]) continue;
            for (PointIndex b = 0; b < n; ++b) {
                if (!dist[k][b]) continue;
                Rational via = *dist[a][k] + *dist[k][b];
                if (!dist[a][b] || via < *dist[a][b]) dist[a][b] = via;
            }
        }
    DistanceTable out(n);
    for (PointIndex a = 0; a < n; ++a)
        for (PointIndex b = a + 1; b < n; ++b) {
            ensure(dist[a][b].has_value(), "chain-connected space with unreachable pair");
            out.set(a, b, *dist[a][b]);
        }
    auto why = metric_axiom_violation(out, p.domain()->points());
    ensure(why.empty(), "chain metric violates the metric axioms: " + why);
    MetricTable dx{std::make_shared<const FiniteSpace>(p.domain()->with_metric(std::move(out))),
                   MetricProvenance::chain_constructed};
    for (PointIndex a = 0; a < n; ++a)
        for (PointIndex b = 0; b < n; ++b) {
            ensure(dx(a, b) >= dy(p(a), p(b)), "chain metric is shorter than the base metric");
            if (a != b && p(a) == p(b)) ensure(dx(a, b) >= 2, "points of one fiber closer than 2");
        }
    auto iso = check_local_isometry(p, dx, dy, Rational(1));
    ensure(iso.holds, "p is not an isometry on the unit ball at '" + iso.failing_point.value_or("?") + "': " + iso.reason);
    return dx;
}

struct MetricPipeline {
    CoverMap map;          ///< carries the constructed metrics on both spaces
    MetricTable base;      ///< remetrized d_Y
    MetricTable total;     ///< chain metric d_X
    Cover structure;       ///< overlay structure over the 2-balls
};

/// Full construction for an overlay p with structure S over a metrized base:
/// remetrize with the star refinement V of U = p(S), move S onto the 2-balls
/// with the refinement recipe, then build the chain metric on X.
inline MetricPipeline metrize_overlay(const CoverMap& p, const SetFamily& s, const MetricTable& d,
                                      const SetFamily& v) {
    const Cover u = image_cover(p, s);
    auto dy = remetrize_base(d, u, v);
    const Cover balls = ball_cover(dy, 2);
    Cover over_balls = refine_overlay_structure(p, s, balls);
    auto dx = chain_metric(p, over_balls, dy);
    CoverMap metrized(dx.space, dy.space, p.mapping(), Cover(dx.space, over_balls.elements()));
    return {std::move(metrized), std::move(dy), std::move(dx), std::move(over_balls)};
}

} // namespace fincov
