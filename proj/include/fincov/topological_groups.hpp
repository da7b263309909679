#pragma once

#include <deque>
#include <string>
#include <vector>

#include "fincov/actions.hpp"
#include "fincov/group.hpp"
#include "fincov/overlay.hpp"

namespace fincov {

/// {U * g : g in G} on the elements of G, ids "U*<g>".
inline Cover right_translates(const FiniteGroup& g, const GroupSet& u) {
    std::vector<CoverElement> els;
    for (GroupElement x = 0; x < g.size(); ++x) els.push_back({"U*" + g.name(x), right_translate(g, u, x)});
    return Cover(g.space(), std::move(els));
}

inline void require_identity_neighborhood(const FiniteGroup& g, const GroupSet& u) {
    require(u.size() == g.size(), "subset lives in another group");
    require(u.test(g.identity()), "U does not contain the identity");
    require(inverse(g, u) == u, "U is not symmetric");
}

struct CosetOverlayReport {
    bool normal = false;          ///< H is normal in G
    bool fourth_power_condition = false; ///< U^4 meets H only in the identity
    Cover cover;                  ///< {U * g}
    CoverMap quotient_map;        ///< G -> G/H for the right action of H
    bool is_covering_structure = false;
    bool is_overlay = false;
    bool translates_meet_in_double_products = false; ///< Ug & Uf nonempty => g f^-1 in U U
    bool no_translate_meets_two_in_one_coset = false; ///< Ug meets Uf and Ufh only for h = 1
};

/// Tests {U g} as an overlay structure of G -> G/H (orbits of the right
/// action of H). Non-normal H and U with U^4 & H != {1} are processed and
/// reported; when H is normal and U^4 & H = {1} an overlay verdict is required.
inline CosetOverlayReport coset_overlay_structure(const FiniteGroup& g, const GroupSet& h, const GroupSet& u) {
    require_identity_neighborhood(g, u);
    require(is_subgroup(g, h), "H is not a subgroup");
    CosetOverlayReport r{is_normal(g, h), (power(g, u, 4) & h) == singleton(g, g.identity()),
                         right_translates(g, u), quotient(right_multiplication_action(g, h)).projection};
    r.is_covering_structure = is_covering_structure(r.quotient_map, r.cover);
    r.is_overlay = r.is_covering_structure && is_overlay_structure(r.quotient_map, r.cover).is_overlay;

    const GroupSet uu = product(g, u, u);
    r.translates_meet_in_double_products = true;
    r.no_translate_meets_two_in_one_coset = true;
    for (GroupElement a = 0; a < g.size(); ++a)
        for (GroupElement b = 0; b < g.size(); ++b) {
            const GroupSet ua = right_translate(g, u, a);
            if (!ua.intersects(right_translate(g, u, b))) continue;
            if (!uu.test(g.mul(a, g.inv(b)))) r.translates_meet_in_double_products = false;
            for_each_member(h, [&](GroupElement k) {
                if (k != g.identity() && ua.intersects(right_translate(g, u, g.mul(b, k))))
                    r.no_translate_meets_two_in_one_coset = false;
            });
        }
    ensure(r.translates_meet_in_double_products, "translates meet outside U U");
    if (r.normal && r.fourth_power_condition) {
        ensure(r.no_translate_meets_two_in_one_coset, "a translate meets two translates over one coset");
        ensure(r.is_overlay, "coset cover is not an overlay structure under the fourth-power condition");
    }
    return r;
}

inline CoverMap homomorphism_map(const FiniteGroup& g, const FiniteGroup& y, const std::vector<GroupElement>& f) {
    return CoverMap(g.space(), y.space(), f);
}

struct QuotientHomCover {
    GroupSet w;           ///< p(U)
    Cover cover;          ///< {W * y}
    Cover structure;      ///< {U * g}, an overlay structure over `cover`
    CoverMap map;
};

/// For a surjective homomorphism p : G -> Y whose kernel H satisfies
/// U^4 & H = {1} and which is injective on U, the translates of W = p(U)
/// form an overlay cover of Y, with the translates of U over it.
inline QuotientHomCover quotient_hom_cover(const FiniteGroup& g, const FiniteGroup& y,
                                           const std::vector<GroupElement>& f, const GroupSet& u) {
    require_identity_neighborhood(g, u);
    if (!is_homomorphism(g, y, f)) throw PreconditionError("map is not a homomorphism");
    GroupSet hit(y.size());
    for (auto v : f) hit.set(v);
    if (!hit.all()) throw PreconditionError("homomorphism is not surjective");
    GroupSet kernel(g.size());
    for (GroupElement a = 0; a < g.size(); ++a)
        if (f[a] == y.identity()) kernel.set(a);
    if ((power(g, u, 4) & kernel) != singleton(g, g.identity()))
        throw PreconditionError("U^4 meets the kernel outside the identity");
    auto p = homomorphism_map(g, y, f);
    if (!p.injective_on(u)) throw PreconditionError("homomorphism is not injective on U");

    const GroupSet w = p.image(u);
    std::vector<CoverElement> els;
    for (GroupElement b = 0; b < y.size(); ++b) els.push_back({"W*" + y.name(b), right_translate(y, w, b)});
    Cover cover(y.space(), std::move(els));
    Cover structure = right_translates(g, u);
    ensure(is_overlay(p, structure), "translates of U are not an overlay structure of the homomorphism");
    ensure(image_cover(p, structure).same_sets(cover), "image of the translates of U is not the translates of W");
    auto with = p.with_structure(structure);
    return {w, std::move(cover), std::move(structure), std::move(with)};
}

struct LiftedGroup {
    FiniteGroup group;                       ///< on the points of X, identity x0
    std::vector<GroupElement> homomorphism;  ///< p as a map of groups, X index -> Y index
    GroupSet kernel;
    std::size_t loops_checked = 0;           ///< translated loops checked for uniform closing
};

namespace detail {

/// U-loops of 2..max_steps steps through `start`, depth first, at most `limit`.
inline std::vector<std::vector<PointIndex>> sample_loops(const Cover& u, PointIndex start, std::size_t max_steps,
                                                         std::size_t limit) {
    std::vector<std::vector<PointIndex>> out;
    std::vector<PointIndex> cur{start};
    auto rec = [&](auto&& self) -> void {
        if (out.size() >= limit) return;
        if (cur.size() > 2 && cur.back() == start) {
            out.push_back(cur);
            return;
        }
        if (cur.size() > max_steps) return;
        for (auto next : members(star(cur.back(), u))) {
            if (next == cur.back()) continue;
            cur.push_back(next);
            self(self);
            cur.pop_back();
            if (out.size() >= limit) return;
        }
    };
    rec(rec);
    return out;
}

} // namespace detail

/// Group structure on X making p a homomorphism onto the group Y, for a
/// regular overlay p with structure S over the translates {U * y}. For each
/// x the map h_x with h_x(x0) = x and p(h_x(z)) = p(z) p(x) is built by
/// lifting translated chains along a spanning tree of S-adjacency from x0,
/// then checked on every S-adjacent pair; x * x' := h_{x'}(x).
inline LiftedGroup lift_group_structure(const CoverMap& p, const SetFamily& s, const FiniteGroup& y,
                                        const GroupSet& u, PointIndex x0) {
    require(y.space()->points() == p.codomain()->points(), "group structure lives on another space than Y");
    require(u.size() == y.size() && u.test(y.identity()), "U must contain the identity of Y");
    require(x0 < p.domain()->size(), "base point outside X");
    if (p(x0) != y.identity()) throw PreconditionError("base point does not lie over the identity");
    std::vector<CoverElement> translates;
    for (GroupElement b = 0; b < y.size(); ++b) translates.push_back({"U*" + y.name(b), right_translate(y, u, b)});
    if (!image_cover(p, s).same_sets(Cover(y.space(), translates)))
        throw PreconditionError("overlay cover is not the family of translates of U");
    if (!is_overlay(p, s)) throw PreconditionError("structure is not an overlay structure");
    require_chain_connected(s);
    if (!is_regular(p, s).regular) throw PreconditionError("overlay is not regular");

    const auto n = p.domain()->size();
    Lifter lifter(p, s);
    std::vector<PointIndex> order{x0}, parent(n, n);
    parent[x0] = x0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (auto w : members(lifter.star_of(order[i])))
            if (parent[w] == n) {
                parent[w] = order[i];
                order.push_back(w);
            }

    std::vector<PointPermutation> h(n, PointPermutation(n, n));
    for (PointIndex x = 0; x < n; ++x) {
        auto& hx = h[x];
        hx[x0] = x;
        for (std::size_t i = 1; i < order.size(); ++i) {
            const auto z = order[i];
            auto step = lifter.unique_step(hx[parent[z]], y.mul(p(z), p(x)));
            ensure(step.has_value(), "translated chain has no unique lift");
            hx[z] = *step;
        }
        for (PointIndex z = 0; z < n; ++z)
            for (auto w : members(lifter.star_of(z)))
                ensure(lifter.unique_step(hx[z], y.mul(p(w), p(x))) == hx[w],
                       "translation lift depends on the chain");
        std::vector<bool> seen(n, false);
        for (auto v : hx) {
            ensure(!seen[v], "translation lift is not injective");
            seen[v] = true;
        }
        for (const auto& e : s.elements()) {
            PointSet img(n);
            for_each_member(e.points, [&](PointIndex z) { img.set(hx[z]); });
            ensure(s.contains_set(img), "translation lift does not preserve the structure");
        }
    }

    std::vector<std::vector<std::string>> table(n);
    for (PointIndex a = 0; a < n; ++a)
        for (PointIndex b = 0; b < n; ++b) table[a].push_back(p.domain()->name(h[b][a]));
    std::optional<FiniteGroup> lifted;
    try {
        lifted.emplace(p.domain()->points(), table);
    } catch (const InputError& e) {
        throw InvariantViolation(std::string("lifted multiplication is not a group: ") + e.what());
    }
    ensure(lifted->identity() == x0, "base point is not the identity of the lifted group");
    std::vector<GroupElement> hom(n);
    for (PointIndex x = 0; x < n; ++x) hom[x] = p(x);
    ensure(is_homomorphism(*lifted, y, hom), "p is not a homomorphism for the lifted group");
    GroupSet kernel(n);
    for (PointIndex x = 0; x < n; ++x)
        if (hom[x] == y.identity()) kernel.set(x);
    ensure(kernel == p.fiber(y.identity()), "kernel differs from the fiber over the identity");

    // Uniform closing of translated loops.
    std::size_t loops = 0;
    const auto& uc = lifter.overlay_cover();
    for (auto loop : detail::sample_loops(uc, y.identity(), 6, 40)) {
        bool closes = false;
        for (auto x : members(p.fiber(loop.front()))) closes = closes || lifter.unique_lift(loop, x)->is_loop();
        if (!closes) continue;
        for (GroupElement t = 0; t < y.size(); ++t) {
            std::vector<PointIndex> moved;
            for (auto v : loop) moved.push_back(y.mul(v, t));
            for (auto x : members(p.fiber(moved.front()))) {
                auto l = lifter.unique_lift(moved, x);
                ensure(l && l->is_loop(), "a translate of a closing loop has a non-closing lift");
            }
            ++loops;
        }
    }
    return {std::move(*lifted), std::move(hom), std::move(kernel), loops};
}

} // namespace fincov
