#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fincov/cover_map.hpp"
#include "fincov/overlay.hpp"
#include "fincov/slices.hpp"

namespace fincov {

/// Finite point sequence y_0..y_n whose consecutive points share a member of
/// the cover it was validated against.
class Chain {
public:
    Chain(const SetFamily& cover, std::vector<PointIndex> points)
        : space_(cover.space()), points_(std::move(points)) {
        require(!points_.empty(), "a chain needs at least one point");
        for (auto y : points_) require(y < space_->size(), "chain point outside the space");
        for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
            if (!star(points_[i], cover).test(points_[i + 1])) {
                throw InputError("chain step " + space_->name(points_[i]) + " -> " +
                                 space_->name(points_[i + 1]) + " is not inside a cover member");
            }
        }
    }

    static Chain from_names(const SetFamily& cover, const std::vector<std::string>& names) {
        std::vector<PointIndex> pts;
        for (const auto& n : names) pts.push_back(cover.space()->index_of(n));
        return Chain(cover, std::move(pts));
    }

    const SpacePtr& space() const noexcept { return space_; }
    const std::vector<PointIndex>& points() const noexcept { return points_; }
    std::size_t steps() const noexcept { return points_.size() - 1; }
    PointIndex front() const { return points_.front(); }
    PointIndex back() const { return points_.back(); }
    bool is_loop() const { return points_.front() == points_.back(); }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (auto y : points_) out.push_back(space_->name(y));
        return out;
    }

private:
    SpacePtr space_;
    std::vector<PointIndex> points_;
};

/// A lift x_0..x_n of a chain y_0..y_n: p(x_i) = y_i and the x_i form a
/// chain for the structure.
struct Lift {
    std::vector<PointIndex> points;
    bool is_loop() const { return points.front() == points.back(); }
};

/// Stars of every point of X for a fixed structure S; the shared machinery
/// behind chain lifting, deck transformations and group lifting.
class Lifter {
public:
    Lifter(const CoverMap& p, const SetFamily& structure) : p_(&p), s_(&structure) {
        require_same_space(structure, p.domain(), "structure");
        for (PointIndex x = 0; x < p.domain()->size(); ++x) stars_.push_back(star(x, structure));
        overlay_cover_.emplace(image_cover(p, structure));
    }

    const CoverMap& map() const { return *p_; }
    const SetFamily& structure() const { return *s_; }
    const Cover& overlay_cover() const { return *overlay_cover_; }
    const PointSet& star_of(PointIndex x) const { return stars_.at(x); }

    /// Points over y sharing a structure member with x.
    PointSet step_candidates(PointIndex x, PointIndex y) const { return stars_[x] & p_->fiber(y); }

    /// The lift of one step from x to the fiber over y, when it exists and is unique.
    std::optional<PointIndex> unique_step(PointIndex x, PointIndex y) const {
        auto c = step_candidates(x, y);
        if (c.count() != 1) return std::nullopt;
        return c.find_first();
    }

    /// Number of lifts of `ys` starting from x0, saturating at `cap`.
    std::size_t count_lifts(const std::vector<PointIndex>& ys, PointIndex x0,
                            std::size_t cap = std::numeric_limits<std::size_t>::max()) const {
        if ((*p_)(x0) != ys.front()) return 0;
        const auto n = p_->domain()->size();
        // ways[x] = number of lifts of ys[i..] starting at x, computed backwards.
        std::vector<std::size_t> ways(n, 0), next(n, 0);
        for_each_member(p_->fiber(ys.back()), [&](PointIndex x) { ways[x] = 1; });
        for (std::size_t i = ys.size() - 1; i-- > 0;) {
            std::fill(next.begin(), next.end(), 0);
            for_each_member(p_->fiber(ys[i]), [&](PointIndex x) {
                std::size_t total = 0;
                for_each_member(step_candidates(x, ys[i + 1]), [&](PointIndex z) {
                    total = std::min(cap, total + ways[z]);
                });
                next[x] = total;
            });
            std::swap(ways, next);
        }
        return std::min(cap, ways[x0]);
    }

    /// Every lift of `ys` from x0, depth first in point order, at most `limit`.
    std::vector<Lift> all_lifts(const std::vector<PointIndex>& ys, PointIndex x0,
                                std::size_t limit) const {
        std::vector<Lift> out;
        if ((*p_)(x0) != ys.front()) return out;
        // completable[i] marks points at position i from which a lift can finish.
        std::vector<PointSet> completable(ys.size(), PointSet(p_->domain()->size()));
        completable.back() = p_->fiber(ys.back());
        for (std::size_t i = ys.size() - 1; i-- > 0;) {
            for_each_member(p_->fiber(ys[i]), [&](PointIndex x) {
                if (step_candidates(x, ys[i + 1]).intersects(completable[i + 1])) completable[i].set(x);
            });
        }
        if (!completable[0].test(x0)) return out;
        std::vector<PointIndex> cur{x0};
        auto rec = [&](auto&& self, std::size_t i) -> void {
            if (out.size() >= limit) return;
            if (i == ys.size()) {
                out.push_back({cur});
                return;
            }
            const auto options = step_candidates(cur.back(), ys[i]) & completable[i];
            for_each_member(options, [&](PointIndex z) {
                cur.push_back(z);
                self(self, i + 1);
                cur.pop_back();
            });
        };
        rec(rec, 1);
        return out;
    }

    /// Walks the unique lift; nullopt as soon as a step is missing or ambiguous.
    std::optional<Lift> unique_lift(const std::vector<PointIndex>& ys, PointIndex x0) const {
        if ((*p_)(x0) != ys.front()) return std::nullopt;
        Lift l{{x0}};
        for (std::size_t i = 1; i < ys.size(); ++i) {
            auto z = unique_step(l.points.back(), ys[i]);
            if (!z) return std::nullopt;
            l.points.push_back(*z);
        }
        return l;
    }

private:
    const CoverMap* p_;
    const SetFamily* s_;
    std::vector<PointSet> stars_;
    std::optional<Cover> overlay_cover_;
};

/// True when `lift` maps onto `of` pointwise and is a chain for the structure.
inline bool is_valid_lift(const Lifter& lifter, const Lift& lift, const std::vector<PointIndex>& of) {
    if (lift.points.size() != of.size()) return false;
    for (std::size_t i = 0; i < of.size(); ++i)
        if (lifter.map()(lift.points[i]) != of[i]) return false;
    for (std::size_t i = 0; i + 1 < of.size(); ++i)
        if (!lifter.star_of(lift.points[i]).test(lift.points[i + 1])) return false;
    return true;
}

/// All lifts of the p(S)-chain c starting at x0 that are S-chains. For an
/// overlay structure there is exactly one.
inline std::vector<Lift> lift_chain(const CoverMap& p, const SetFamily& s, const Chain& c,
                                    PointIndex x0,
                                    std::size_t limit = std::numeric_limits<std::size_t>::max()) {
    Lifter lifter(p, s);
    require(c.space()->points() == p.codomain()->points(), "chain does not live in the codomain");
    require(x0 < p.domain()->size(), "start point outside the domain");
    if (p(x0) != c.front())
        throw InputError("start point " + p.domain()->name(x0) + " does not lie over " +
                         c.space()->name(c.front()));
    Chain(lifter.overlay_cover(), c.points()); // validates c against p(S)
    return lifter.all_lifts(c.points(), x0, limit);
}

inline std::vector<Lift> lift_chain(const CoverMap& p, const Chain& c, PointIndex x0) {
    return lift_chain(p, p.structure(), c, x0);
}

struct LiftingWitness {
    PointIndex y0 = 0, y1 = 0, x0 = 0;
    std::size_t lifts = 0;
};

struct LiftingVerdict {
    bool unique_lifts = false;
    std::optional<LiftingWitness> witness;
};

/// Checks that every one-step p(S)-chain (y0, y1) has exactly one S-chain
/// lift from each point over y0. Longer chains follow by induction on the
/// number of steps, so this decides unique lifting of all chains.
inline LiftingVerdict verify_unique_lifting(const CoverMap& p, const SetFamily& s) {
    Lifter lifter(p, s);
    const auto& u = lifter.overlay_cover();
    for (PointIndex y0 = 0; y0 < p.codomain()->size(); ++y0) {
        const auto reach = star(y0, u);
        for (PointIndex y1 = 0; y1 < p.codomain()->size(); ++y1) {
            if (!reach.test(y1)) continue;
            LiftingVerdict failure;
            for_each_member(p.fiber(y0), [&](PointIndex x0) {
                if (failure.witness) return;
                auto n = lifter.step_candidates(x0, y1).count();
                if (n != 1) failure.witness = LiftingWitness{y0, y1, x0, n};
            });
            if (failure.witness) return failure;
        }
    }
    return {true, std::nullopt};
}

struct IrregularLoop {
    std::vector<PointIndex> loop;        ///< p(S)-loop in Y
    std::vector<PointIndex> closed_lift; ///< a lift that is a loop
    std::vector<PointIndex> open_lift;   ///< a lift that is not
};

/// Searches p(S)-loops with at most max_len steps for one whose lifts are
/// not uniformly loops or non-loops. Breadth first over (endpoint, sheet
/// permutation) states, so the first witness found is a shortest one.
/// Finding nothing does not certify regularity.
inline std::optional<IrregularLoop> find_irregular_loop(const CoverMap& p, const SetFamily& s,
                                                        std::size_t max_len) {
    if (!is_overlay(p, s)) throw PreconditionError("structure is not an overlay structure");
    Lifter lifter(p, s);
    const auto& u = lifter.overlay_cover();
    const auto ny = p.codomain()->size();
    std::vector<PointSet> reach;
    for (PointIndex y = 0; y < ny; ++y) reach.push_back(star(y, u));

    for (PointIndex y0 = 0; y0 < ny; ++y0) {
        const auto sheets = members(p.fiber(y0));
        if (sheets.size() < 2) continue;
        // State: current base point and the current endpoint of the lift from each sheet.
        using State = std::pair<PointIndex, std::vector<PointIndex>>;
        const State start{y0, sheets};
        std::map<State, State> parent;
        parent.emplace(start, start);
        std::deque<std::pair<State, std::size_t>> frontier{{start, 0}};
        while (!frontier.empty()) {
            auto [state, depth] = frontier.front();
            frontier.pop_front();
            if (depth == max_len) continue;
            for (auto y : members(reach[state.first])) {
                State next{y, {}};
                for (auto x : state.second) {
                    auto z = lifter.unique_step(x, y);
                    ensure(z.has_value(), "overlay structure without unique step lift");
                    next.second.push_back(*z);
                }
                if (parent.count(next)) continue;
                parent.emplace(next, state);
                if (y == y0) {
                    std::optional<std::size_t> fixed, moved;
                    for (std::size_t i = 0; i < sheets.size(); ++i) {
                        if (next.second[i] == sheets[i]) {
                            if (!fixed) fixed = i;
                        } else if (!moved) {
                            moved = i;
                        }
                    }
                    if (fixed && moved) {
                        std::vector<PointIndex> loop;
                        for (State cur = next; cur != start; cur = parent.at(cur)) loop.push_back(cur.first);
                        loop.push_back(y0);
                        std::reverse(loop.begin(), loop.end());
                        auto closed = lifter.unique_lift(loop, sheets[*fixed]);
                        auto open = lifter.unique_lift(loop, sheets[*moved]);
                        ensure(closed && open && closed->is_loop() && !open->is_loop(),
                               "irregular loop reconstruction failed");
                        return IrregularLoop{loop, closed->points, open->points};
                    }
                }
                frontier.emplace_back(std::move(next), depth + 1);
            }
        }
    }
    return std::nullopt;
}

inline std::size_t default_loop_bound(const CoverMap& p) { return 2 * p.domain()->size(); }

} // namespace fincov
