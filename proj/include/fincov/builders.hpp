#pragma once

#include <string>
#include <vector>

#include "fincov/cover.hpp"
#include "fincov/cover_map.hpp"
#include "fincov/space.hpp"

// Small constructors for the standard instances: cycles cyc(n) with points
// "0".."n-1", arcs of consecutive points, reduction maps cyc(k*n) -> cyc(n).

namespace fincov {

inline DistanceTable cycle_graph_metric(std::size_t n, const Rational& scale,
                                        const std::vector<std::string>& sorted_names) {
    // Points are named by their integer position; sorted order is lexicographic.
    DistanceTable d(n);
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[i] = std::stoul(sorted_names[i]);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            auto diff = pos[a] > pos[b] ? pos[a] - pos[b] : pos[b] - pos[a];
            auto hops = std::min(diff, n - diff);
            d.set(a, b, scale * Rational(static_cast<long long>(hops)));
        }
    return d;
}

inline SpacePtr cycle_space(std::size_t n) {
    require(n >= 1, "cycle needs at least one point");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
    return make_space(std::move(names));
}

/// cyc(n) carrying the graph metric scaled by `scale`.
inline SpacePtr metric_cycle_space(std::size_t n, const Rational& scale) {
    auto bare = cycle_space(n);
    return std::make_shared<const FiniteSpace>(
        bare->with_metric(cycle_graph_metric(n, scale, bare->points())));
}

/// Index of the point named by integer position i on a cycle space.
inline PointIndex cycle_point(const FiniteSpace& cyc, long long i) {
    const auto n = static_cast<long long>(cyc.size());
    return cyc.index_of(std::to_string(((i % n) + n) % n));
}

/// {start, start+1, ..., start+length-1} mod n.
inline PointSet arc(const FiniteSpace& cyc, long long start, std::size_t length) {
    PointSet s(cyc.size());
    for (std::size_t j = 0; j < length; ++j) s.set(cycle_point(cyc, start + static_cast<long long>(j)));
    return s;
}

/// All arcs of the given length, element "a<k>" starting at k.
inline Cover arcs_cover(const SpacePtr& cyc, std::size_t length) {
    std::vector<CoverElement> els;
    for (std::size_t k = 0; k < cyc->size(); ++k)
        els.push_back({"a" + std::to_string(k), arc(*cyc, static_cast<long long>(k), length)});
    return Cover(cyc, std::move(els));
}

inline Cover singletons_cover(const SpacePtr& space) {
    std::vector<CoverElement> els;
    for (PointIndex i = 0; i < space->size(); ++i)
        els.push_back({"{" + space->name(i) + "}", make_set(space->size(), {i})});
    return Cover(space, std::move(els));
}

inline Cover whole_cover(const SpacePtr& space) {
    return Cover(space, {{"all", full_set(space->size())}});
}

/// Reduction cyc(total) -> cyc(base), x -> x mod base.
inline CoverMap pmod(const SpacePtr& total, const SpacePtr& base) {
    require(total->size() % base->size() == 0, "cycle lengths are not multiples");
    std::vector<PointIndex> m(total->size());
    for (PointIndex x = 0; x < total->size(); ++x)
        m[x] = cycle_point(*base, std::stoll(total->name(x)));
    return CoverMap(total, base, std::move(m));
}

inline CoverMap pmod(std::size_t total, std::size_t base) {
    return pmod(cycle_space(total), cycle_space(base));
}

inline CoverMap identity_map(const SpacePtr& space) {
    std::vector<PointIndex> m(space->size());
    for (PointIndex x = 0; x < m.size(); ++x) m[x] = x;
    return CoverMap(space, space, std::move(m));
}

} // namespace fincov
