#pragma once

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "fincov/builders.hpp"
#include "fincov/chains.hpp"
#include "fincov/group.hpp"
#include "fincov/overlay.hpp"

namespace fincov {

using PointPermutation = std::vector<PointIndex>;

/// Left action of a finite group on a finite space by permutations:
/// perm(g)[x] = g . x.
class GroupAction {
public:
    GroupAction(FiniteGroup group, SpacePtr space, std::vector<PointPermutation> perms)
        : group_(std::move(group)), space_(std::move(space)), perms_(std::move(perms)) {
        const auto n = space_->size();
        require(perms_.size() == group_.size(), "action needs one permutation per group element");
        for (GroupElement g = 0; g < group_.size(); ++g) {
            require(perms_[g].size() == n, "permutation of '" + group_.name(g) + "' has the wrong length");
            std::vector<bool> hit(n, false);
            for (auto x : perms_[g]) {
                require(x < n && !hit[x], "image list of '" + group_.name(g) + "' is not a permutation");
                hit[x] = true;
            }
        }
        for (PointIndex x = 0; x < n; ++x) require(perms_[group_.identity()][x] == x, "identity does not act trivially");
        for (GroupElement g = 0; g < group_.size(); ++g)
            for (GroupElement h = 0; h < group_.size(); ++h)
                for (PointIndex x = 0; x < n; ++x)
                    require(perms_[group_.mul(g, h)][x] == perms_[g][perms_[h][x]],
                            "permutations do not compose like the group: (" + group_.name(g) + ", " +
                                group_.name(h) + ")");
    }

    const FiniteGroup& group() const noexcept { return group_; }
    const SpacePtr& space() const noexcept { return space_; }
    const PointPermutation& perm(GroupElement g) const { return perms_.at(g); }
    PointIndex act(GroupElement g, PointIndex x) const { return perms_[g][x]; }

    PointSet translate(GroupElement g, const PointSet& u) const {
        PointSet out(space_->size());
        for_each_member(u, [&](PointIndex x) { out.set(perms_[g][x]); });
        return out;
    }

private:
    FiniteGroup group_;
    SpacePtr space_;
    std::vector<PointPermutation> perms_;
};

/// Group acting on its own elements by x -> x * h^-1 for h in a subgroup H;
/// its orbits are the cosets x H.
inline GroupAction right_multiplication_action(const FiniteGroup& g, const GroupSet& h) {
    auto sub = subgroup_group(g, h);
    std::vector<PointPermutation> perms(sub.size(), PointPermutation(g.size()));
    for (GroupElement k = 0; k < sub.size(); ++k) {
        const auto hk = g.index_of(sub.name(k));
        for (GroupElement x = 0; x < g.size(); ++x) perms[k][x] = g.mul(x, g.inv(hk));
    }
    return GroupAction(std::move(sub), g.space(), std::move(perms));
}

/// Z/k acting on cyc(n) by rotation x -> x + step * g.
inline GroupAction rotation_action(const SpacePtr& cyc, std::size_t k, std::size_t step) {
    auto g = cyclic_group(k);
    std::vector<PointPermutation> perms(k, PointPermutation(cyc->size()));
    for (GroupElement e = 0; e < k; ++e) {
        const auto amount = static_cast<long long>(std::stoul(g.name(e)) * step);
        for (PointIndex x = 0; x < cyc->size(); ++x)
            perms[e][x] = cycle_point(*cyc, std::stoll(cyc->name(x)) + amount);
    }
    return GroupAction(std::move(g), cyc, std::move(perms));
}

/// Z/2 acting on cyc(n) by x -> -x.
inline GroupAction reflection_action(const SpacePtr& cyc) {
    auto g = cyclic_group(2);
    std::vector<PointPermutation> perms(2, PointPermutation(cyc->size()));
    for (PointIndex x = 0; x < cyc->size(); ++x) {
        perms[g.index_of("0")][x] = x;
        perms[g.index_of("1")][x] = cycle_point(*cyc, -std::stoll(cyc->name(x)));
    }
    return GroupAction(std::move(g), cyc, std::move(perms));
}

inline GroupAction trivial_action(const SpacePtr& space) {
    PointPermutation id(space->size());
    for (PointIndex x = 0; x < id.size(); ++x) id[x] = x;
    return GroupAction(cyclic_group(1), space, {id});
}

/// No element other than the identity fixes a point.
inline bool is_free(const GroupAction& a) {
    for (GroupElement g = 0; g < a.group().size(); ++g) {
        if (g == a.group().identity()) continue;
        for (PointIndex x = 0; x < a.space()->size(); ++x)
            if (a.act(g, x) == x) return false;
    }
    return true;
}

/// U meets g U only for g = 1.
inline bool is_action_slice(const GroupAction& a, const PointSet& u) {
    require(u.any(), "an action slice must be nonempty");
    for (GroupElement g = 0; g < a.group().size(); ++g)
        if (g != a.group().identity() && a.translate(g, u).intersects(u)) return false;
    return true;
}

struct ActionQuotient {
    SpacePtr space;     ///< orbits, named by their lexicographically smallest point
    CoverMap projection;
};

inline ActionQuotient quotient(const GroupAction& a) {
    const auto n = a.space()->size();
    std::vector<PointIndex> rep(n, n);
    std::vector<std::string> names;
    for (PointIndex x = 0; x < n; ++x) {
        if (rep[x] != n) continue;
        names.push_back(a.space()->name(x));
        for (GroupElement g = 0; g < a.group().size(); ++g) rep[a.act(g, x)] = x;
    }
    auto q = make_space(names);
    std::vector<PointIndex> m(n);
    for (PointIndex x = 0; x < n; ++x) m[x] = q->index_of(a.space()->name(rep[x]));
    return {q, CoverMap(a.space(), q, std::move(m))};
}

/// G . U: every translate of every member; translates of "id" are "id@g".
inline Cover saturate(const GroupAction& a, const SetFamily& u) {
    require_same_space(u, a.space(), "cover");
    std::vector<CoverElement> out;
    for (const auto& e : u.elements())
        for (GroupElement g = 0; g < a.group().size(); ++g) {
            auto id = g == a.group().identity() ? e.id : e.id + "@" + a.group().name(g);
            out.push_back({std::move(id), a.translate(g, e.points)});
        }
    return Cover(a.space(), std::move(out));
}

enum class ActionOverlayMethod { def31, prop33b };

inline const char* to_string(ActionOverlayMethod m) { return m == ActionOverlayMethod::def31 ? "def31" : "prop33b"; }

struct ActionOverlayVerdict {
    bool is_overlay = false;
    std::string failure; ///< empty on success
};

/// Overlay-action test for a free action and a cover U of X. def31: the
/// saturation G . U is a covering structure of X -> X/G all of whose stars
/// are action slices. prop33b: for every U, V in U some g makes U + g V an
/// action slice.
inline ActionOverlayVerdict is_overlay_action(const GroupAction& a, const SetFamily& u, ActionOverlayMethod method) {
    if (!is_free(a)) throw PreconditionError("action is not free");
    require_same_space(u, a.space(), "cover");
    require(u.covers_space(), "family does not cover the space");
    if (method == ActionOverlayMethod::def31) {
        const Cover v = saturate(a, u);
        const auto q = quotient(a).projection;
        auto cs = check_covering_structure(q, v);
        if (!cs) return {false, "saturation is not a covering structure of the quotient map at '" + cs.failing_element + "'"};
        for (PointIndex x = 0; x < a.space()->size(); ++x)
            if (!is_action_slice(a, star(x, v))) return {false, "star of '" + a.space()->name(x) + "' is not an action slice"};
        return {true, ""};
    }
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < u.size(); ++j) {
            bool found = false;
            for (GroupElement g = 0; g < a.group().size() && !found; ++g)
                found = is_action_slice(a, u[i].points | a.translate(g, u[j].points));
            if (!found) return {false, "no translate of '" + u[j].id + "' joins '" + u[i].id + "' in an action slice"};
        }
    return {true, ""};
}

/// Pairwise even covering of a quotient cover, read through lifted slices.
/// Slices over each image A = q(U) are unique: members of S over A are equal
/// or disjoint. For images A, B of members of S, q^-1(A + B) is an exact
/// cover by sets U' + V' (U' over A, V' over B, members of S) each mapped
/// bijectively onto A + B.
inline bool pairwise_unions_evenly_covered(const GroupAction& a, const SetFamily& s) {
    const auto q = quotient(a).projection;
    const Cover images = image_cover(q, s);
    const auto over = image_indices(q, s, images);
    for (std::size_t u = 0; u < s.size(); ++u)
        for (std::size_t v = u + 1; v < s.size(); ++v)
            if (over[u] == over[v] && s[u].points.intersects(s[v].points)) return false;
    for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t j = i; j < images.size(); ++j) {
            const PointSet target = images[i].points | images[j].points;
            std::vector<PointSet> blocks;
            for (std::size_t u = 0; u < s.size(); ++u) {
                if (over[u] != i) continue;
                for (std::size_t v = 0; v < s.size(); ++v) {
                    if (over[v] != j) continue;
                    const PointSet b = s[u].points | s[v].points;
                    if (q.injective_on(b) && q.image(b) == target) blocks.push_back(b);
                }
            }
            auto covered = [&](auto&& self, const PointSet& remaining) -> bool {
                if (remaining.none()) return true;
                const auto pivot = remaining.find_first();
                for (const auto& b : blocks)
                    if (b.test(pivot) && b.is_subset_of(remaining) && self(self, remaining - b)) return true;
                return false;
            };
            if (!covered(covered, q.preimage(target))) return false;
        }
    return true;
}

/// Chain component label of every point with respect to the members of s.
inline std::vector<std::size_t> chain_components(const SetFamily& s) {
    const auto n = s.space()->size();
    std::vector<std::size_t> label(n, n);
    std::size_t next = 0;
    for (PointIndex x = 0; x < n; ++x) {
        if (label[x] != n) continue;
        std::vector<PointIndex> todo{x};
        label[x] = next;
        while (!todo.empty()) {
            auto z = todo.back();
            todo.pop_back();
            for_each_member(star(z, s), [&](PointIndex w) {
                if (label[w] == n) { label[w] = next; todo.push_back(w); }
            });
        }
        ++next;
    }
    return label;
}

inline void require_chain_connected(const SetFamily& s) {
    auto label = chain_components(s);
    for (PointIndex x = 1; x < label.size(); ++x)
        if (label[x] != label[0])
            throw PreconditionError("space is not chain-connected: '" + s.space()->name(0) + "' and '" +
                                    s.space()->name(x) + "' lie in different chain components");
}

/// Extends x0 -> target to a deck transformation preserving S by lifting
/// along chains from x0; nullopt on the first inconsistency.
inline std::optional<PointPermutation> extend_deck(const Lifter& lifter, PointIndex x0, PointIndex target) {
    const auto& p = lifter.map();
    const auto n = p.domain()->size();
    PointPermutation h(n, n);
    h[x0] = target;
    std::deque<PointIndex> todo{x0};
    while (!todo.empty()) {
        auto z = todo.front();
        todo.pop_front();
        for (auto w : members(lifter.star_of(z))) {
            auto hw = lifter.unique_step(h[z], p(w));
            if (!hw) return std::nullopt;
            if (h[w] == n) {
                h[w] = *hw;
                todo.push_back(w);
            } else if (h[w] != *hw) {
                return std::nullopt;
            }
        }
    }
    std::vector<bool> hit(n, false);
    for (auto v : h) {
        if (v >= n || hit[v]) return std::nullopt;
        hit[v] = true;
    }
    const auto& s = lifter.structure();
    for (const auto& e : s.elements()) {
        PointSet img(n);
        for_each_member(e.points, [&](PointIndex x) { img.set(h[x]); });
        if (!s.contains_set(img)) return std::nullopt;
    }
    return h;
}

struct DeckGroup {
    PointIndex base_point = 0;                ///< x0, the first point of X
    std::vector<PointPermutation> transformations; ///< indexed like the group elements
    GroupAction action;                       ///< elements named by the image of x0
};

/// Deck transformations of p preserving the overlay structure S, found by
/// extending x0 -> x' along chains for every x' over p(x0).
inline DeckGroup deck_group(const CoverMap& p, const SetFamily& s) {
    if (!is_overlay(p, s)) throw PreconditionError("structure is not an overlay structure");
    require_chain_connected(s);
    Lifter lifter(p, s);
    const PointIndex x0 = 0;
    std::vector<PointPermutation> hs;
    for (auto target : members(p.fiber(p(x0))))
        if (auto h = extend_deck(lifter, x0, target)) hs.push_back(std::move(*h));
    ensure(!hs.empty() && hs.front()[x0] == x0, "identity is not a deck transformation");

    const auto& X = *p.domain();
    std::vector<std::string> names;
    for (const auto& h : hs) names.push_back(X.name(h[x0]));
    std::vector<std::size_t> by_value(X.size(), hs.size());
    for (std::size_t i = 0; i < hs.size(); ++i) by_value[hs[i][x0]] = i;
    std::vector<std::vector<std::string>> table(hs.size());
    for (std::size_t i = 0; i < hs.size(); ++i)
        for (std::size_t j = 0; j < hs.size(); ++j) {
            const auto at = hs[i][hs[j][x0]];
            ensure(by_value[at] < hs.size(), "deck transformations are not closed under composition");
            const auto k = by_value[at];
            for (PointIndex x = 0; x < X.size(); ++x)
                ensure(hs[k][x] == hs[i][hs[j][x]], "deck transformation not determined by its value at x0");
            table[i].push_back(names[k]);
        }
    FiniteGroup group(names, table);
    std::vector<PointPermutation> perms(hs.size());
    for (std::size_t i = 0; i < hs.size(); ++i) perms[group.index_of(names[i])] = hs[i];
    GroupAction action(std::move(group), p.domain(), perms);
    ensure(is_free(action), "deck group does not act freely");
    std::vector<PointPermutation> ordered;
    for (GroupElement g = 0; g < action.group().size(); ++g) ordered.push_back(action.perm(g));
    return {x0, std::move(ordered), std::move(action)};
}

struct RegularityReport {
    bool regular = false;
    std::size_t deck_order = 0;
    std::size_t fiber_size = 0; ///< size of the fiber through x0
    bool quotient_matches_base = false; ///< Y -> X/G is a bijection over the projections (checked when regular)
};

/// Regularity via transitivity of the deck group on the fiber through x0.
/// Transitivity on that fiber is checked to imply it on every fiber, and for
/// regular p the induced map Y -> X/G is checked to be a bijection with
/// (Y -> X/G) o p equal to the projection.
inline RegularityReport is_regular(const CoverMap& p, const SetFamily& s) {
    auto deck = deck_group(p, s);
    RegularityReport r;
    r.deck_order = deck.action.group().size();
    r.fiber_size = p.fiber(p(deck.base_point)).count();
    r.regular = r.deck_order == r.fiber_size;
    const auto q = quotient(deck.action).projection;
    bool every_fiber = true;
    for (PointIndex y = 0; y < p.codomain()->size(); ++y) {
        const auto f = members(p.fiber(y));
        PointSet orbit(p.domain()->size());
        for (GroupElement g = 0; g < deck.action.group().size(); ++g) orbit.set(deck.action.act(g, f.front()));
        every_fiber = every_fiber && orbit == p.fiber(y);
    }
    ensure(every_fiber == r.regular, "deck transitivity differs between fibers");
    if (r.regular) {
        std::vector<PointIndex> h(p.codomain()->size());
        bool ok = true;
        for (PointIndex y = 0; y < h.size(); ++y) {
            const auto f = members(p.fiber(y));
            h[y] = q(f.front());
            for (auto x : f) ok = ok && q(x) == h[y];
        }
        std::vector<bool> hit(q.codomain()->size(), false);
        for (auto v : h) {
            ok = ok && !hit[v];
            hit[v] = true;
        }
        ok = ok && h.size() == q.codomain()->size();
        ensure(ok, "regular overlay whose base does not match the deck quotient");
        r.quotient_matches_base = ok;
    }
    return r;
}

struct DeckFactorization {
    CoverMap projection; ///< X -> X/G with structure S
    CoverMap overlay;    ///< X/G -> Y with the images of S as structure
};

/// p = q o projection with q : X/G -> Y an overlay over the images of S.
inline DeckFactorization factor_through_deck(const CoverMap& p, const SetFamily& s) {
    auto deck = deck_group(p, s);
    auto [orbits, proj] = quotient(deck.action);
    std::vector<PointIndex> m(orbits->size());
    for (PointIndex x = 0; x < p.domain()->size(); ++x) m[proj(x)] = p(x);
    for (PointIndex x = 0; x < p.domain()->size(); ++x) ensure(m[proj(x)] == p(x), "p does not factor through the deck quotient");
    Cover s_cover(s);
    Cover image = image_cover(proj, s_cover);
    CoverMap q(orbits, p.codomain(), std::move(m), image);
    auto projection = proj.with_structure(s_cover);
    ensure(is_overlay(projection, s_cover), "projection onto the deck quotient is not an overlay");
    ensure(is_overlay(q, q.structure()), "factor X/G -> Y is not an overlay over the images of S");
    return {std::move(projection), std::move(q)};
}

} // namespace fincov
