#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fincov/cover.hpp"
#include "fincov/cover_map.hpp"
#include "fincov/errors.hpp"

// Stars, slices and covering structures. Throughout, spaces are finite and
// discrete: every subset is open, a homeomorphism onto an image is a
// bijection, and continuity is vacuous.

namespace fincov {

/// Partition of p^-1(target) into blocks, each mapped bijectively onto target.
struct SliceDecomposition {
    PointSet target;
    std::vector<PointSet> blocks;
    std::vector<std::string> block_ids; ///< family identifiers when blocks are family members
};

inline void require_same_space(const SetFamily& f, const SpacePtr& space, const char* what) {
    require(f.space()->points() == space->points(), std::string(what) + " lives on a different space");
}

/// Union of all elements of s containing x.
inline PointSet star(PointIndex x, const SetFamily& s) {
    require(x < s.space()->size(), "point outside the space of the cover");
    PointSet st(s.space()->size());
    for (auto k : s.containing(x)) st |= s[k].points;
    return st;
}

inline PointSet star(const std::string& x, const SetFamily& s) {
    return star(s.space()->index_of(x), s);
}

/// All fibers of p over the points of t have the same cardinality.
inline bool equal_fiber_cardinality(const CoverMap& p, const PointSet& t) {
    std::optional<std::size_t> k;
    bool ok = true;
    for_each_member(t, [&](PointIndex y) {
        auto c = p.fiber(y).count();
        if (!k) k = c;
        else if (*k != c) ok = false;
    });
    return ok;
}

struct SliceCheck {
    bool is_slice = false;
    std::optional<SliceDecomposition> decomposition;
    explicit operator bool() const noexcept { return is_slice; }
};

/// U is a slice of p iff p|U is injective and p^-1(p(U)) splits into blocks
/// mapped bijectively onto p(U), one of them U. For finite discrete spaces
/// this is equivalent to: p|U injective and all fibers over p(U) of equal
/// size. The witness takes U and then the remaining fiber points in index
/// order, one per block.
inline SliceCheck is_slice(const CoverMap& p, const PointSet& u) {
    require(u.size() == p.domain()->size(), "subset sized for a different space");
    require(u.any(), "a slice must be nonempty");
    SliceCheck out;
    if (!p.injective_on(u)) return out;
    const PointSet target = p.image(u);
    if (!equal_fiber_cardinality(p, target)) return out;

    const auto sheets = p.fiber(target.find_first()).count();
    SliceDecomposition dec{target, std::vector<PointSet>(sheets, PointSet(p.domain()->size())), {}};
    dec.blocks[0] = u;
    for_each_member(target, [&](PointIndex y) {
        std::size_t next = 1;
        for_each_member(p.fiber(y), [&](PointIndex x) {
            if (!u.test(x)) dec.blocks[next++].set(x);
        });
    });
    out.is_slice = true;
    out.decomposition = std::move(dec);
    return out;
}

namespace detail {

template <typename Emit>
void exact_cover_search(const SetFamily& family, const std::vector<std::size_t>& candidates,
                        PointSet remaining, std::vector<std::size_t>& chosen, Emit& emit,
                        bool& stop) {
    if (stop) return;
    if (remaining.none()) {
        if (!emit(chosen)) stop = true;
        return;
    }
    const auto pivot = remaining.find_first();
    for (auto k : candidates) {
        const auto& w = family[k].points;
        if (!w.test(pivot) || !w.is_subset_of(remaining)) continue;
        chosen.push_back(k);
        exact_cover_search(family, candidates, remaining - w, chosen, emit, stop);
        chosen.pop_back();
        if (stop) return;
    }
}

/// Calls emit(element indices) for every partition of p^-1(p(U)) into
/// members of `within` with image p(U), U among them. emit returns false to
/// stop the search.
template <typename Emit>
void for_each_structure_decomposition(const CoverMap& p, std::size_t u_index,
                                      const SetFamily& within, Emit emit) {
    const PointSet& u = within[u_index].points;
    const PointSet target = p.image(u);
    const PointSet saturated = p.preimage(target);
    std::vector<std::size_t> candidates;
    for (std::size_t k = 0; k < within.size(); ++k) {
        if (k == u_index) continue;
        const auto& w = within[k].points;
        if (w.is_subset_of(saturated) && !w.intersects(u) && p.image(w) == target)
            candidates.push_back(k);
    }
    std::vector<std::size_t> chosen{u_index};
    bool stop = false;
    exact_cover_search(within, candidates, saturated - u, chosen, emit, stop);
}

} // namespace detail

/// Every way of writing p^-1(p(U)) as a disjoint union of members of
/// `within` having image p(U), one of which is U itself. Members are compared
/// as sets. Backtracking exact-cover search; at most `limit` results.
inline std::vector<SliceDecomposition>
slice_decompositions(const CoverMap& p, const std::string& u_id, const SetFamily& within,
                     std::size_t limit = std::numeric_limits<std::size_t>::max()) {
    require_same_space(within, p.domain(), "family");
    auto u_index = within.find(u_id);
    if (!u_index) throw InputError("'" + u_id + "' is not a member of the family");
    std::vector<SliceDecomposition> out;
    const PointSet target = p.image(within[*u_index].points);
    detail::for_each_structure_decomposition(
        p, *u_index, within, [&](const std::vector<std::size_t>& chosen) {
            SliceDecomposition d{target, {}, {}};
            for (auto k : chosen) {
                d.blocks.push_back(within[k].points);
                d.block_ids.push_back(within[k].id);
            }
            out.push_back(std::move(d));
            return out.size() < limit;
        });
    return out;
}

inline bool has_structure_decomposition(const CoverMap& p, std::size_t u_index,
                                        const SetFamily& within) {
    bool found = false;
    detail::for_each_structure_decomposition(p, u_index, within, [&](const auto&) {
        found = true;
        return false;
    });
    return found;
}

struct CoveringStructureCheck {
    bool holds = false;
    std::string failing_element; ///< id of the first offending member
    std::string reason;
    explicit operator bool() const noexcept { return holds; }
};

/// S is a covering structure of p: every member is a slice and every
/// saturated image p^-1(p(U)) splits into members of S over p(U).
inline CoveringStructureCheck check_covering_structure(const CoverMap& p, const SetFamily& s) {
    require_same_space(s, p.domain(), "cover");
    require(s.covers_space(), "family does not cover the domain");
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (!is_slice(p, s[k].points)) return {false, s[k].id, "not a slice of the map"};
        if (!has_structure_decomposition(p, k, s))
            return {false, s[k].id, "preimage of its image does not split into members"};
    }
    return {true, {}, {}};
}

inline bool is_covering_structure(const CoverMap& p, const SetFamily& s) {
    return check_covering_structure(p, s).holds;
}

} // namespace fincov
