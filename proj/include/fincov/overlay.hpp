#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fincov/cover_map.hpp"
#include "fincov/slices.hpp"

namespace fincov {

enum class OverlayMethod { definition, disjoint_images, intersection_slices };

inline const char* to_string(OverlayMethod m) {
    switch (m) {
        case OverlayMethod::definition: return "definition";
        case OverlayMethod::disjoint_images: return "prop44b";
        case OverlayMethod::intersection_slices: return "prop44c";
    }
    return "?";
}

inline OverlayMethod parse_overlay_method(const std::string& s) {
    if (s == "definition") return OverlayMethod::definition;
    if (s == "prop44b") return OverlayMethod::disjoint_images;
    if (s == "prop44c") return OverlayMethod::intersection_slices;
    throw InputError("unknown overlay method '" + s + "'");
}

/// The star of `point` is not a slice.
struct StarWitness {
    std::string point;
    PointSet star;
};

/// `u` meets both `v` and `w`, v != w, and p(v) == p(w).
struct TripleWitness {
    std::string u, v, w;
};

/// u and v meet but p does not map u & v bijectively onto p(u) & p(v).
struct PairWitness {
    std::string u, v;
};

using OverlayWitness = std::variant<StarWitness, TripleWitness, PairWitness>;

struct OverlayVerdict {
    bool is_overlay = false;
    OverlayMethod method = OverlayMethod::definition;
    std::optional<OverlayWitness> witness; ///< present iff !is_overlay
};

namespace detail {

inline void require_covering_structure(const CoverMap& p, const SetFamily& s) {
    auto check = check_covering_structure(p, s);
    if (!check) {
        throw PreconditionError("not a covering structure: element '" + check.failing_element +
                                    "' " + check.reason,
                                check.failing_element);
    }
}

inline std::optional<OverlayWitness> star_method(const CoverMap& p, const SetFamily& s) {
    for (PointIndex x = 0; x < p.domain()->size(); ++x) {
        auto st = star(x, s);
        if (!is_slice(p, st)) return StarWitness{p.domain()->name(x), st};
    }
    return std::nullopt;
}

inline std::optional<OverlayWitness> disjoint_images_method(const CoverMap& p,
                                                            const SetFamily& s) {
    std::vector<PointSet> images;
    for (const auto& e : s.elements()) images.push_back(p.image(e.points));
    for (std::size_t u = 0; u < s.size(); ++u) {
        std::vector<std::size_t> met;
        for (std::size_t v = 0; v < s.size(); ++v)
            if (s[u].points.intersects(s[v].points)) met.push_back(v);
        for (std::size_t i = 0; i < met.size(); ++i)
            for (std::size_t j = i + 1; j < met.size(); ++j)
                if (images[met[i]] == images[met[j]])
                    return TripleWitness{s[u].id, s[met[i]].id, s[met[j]].id};
    }
    return std::nullopt;
}

/// p maps u & v bijectively onto p(u) & p(v) and u & v is a slice over it.
inline bool intersection_is_slice_over_meet(const CoverMap& p, const PointSet& u,
                                            const PointSet& v) {
    const PointSet meet = u & v;
    const PointSet image_meet = p.image(u) & p.image(v);
    if (!p.injective_on(meet) || p.image(meet) != image_meet) return false;
    return is_slice(p, meet).is_slice;
}

inline std::optional<OverlayWitness> intersection_method(const CoverMap& p,
                                                         const SetFamily& s) {
    for (std::size_t u = 0; u < s.size(); ++u)
        for (std::size_t v = u; v < s.size(); ++v) {
            if (!s[u].points.intersects(s[v].points)) continue;
            if (!intersection_is_slice_over_meet(p, s[u].points, s[v].points))
                return PairWitness{s[u].id, s[v].id};
        }
    return std::nullopt;
}

} // namespace detail

/// Decides whether the covering structure S is an overlay structure of p,
/// using one of three equivalent criteria: every star is a slice; no member
/// meets two distinct members with the same image; every intersecting pair
/// meets in a slice over the intersection of images. Throws
/// PreconditionError when S is not a covering structure.
inline OverlayVerdict is_overlay_structure(const CoverMap& p, const SetFamily& s,
                                           OverlayMethod method = OverlayMethod::definition) {
    detail::require_covering_structure(p, s);
    OverlayVerdict verdict;
    verdict.method = method;
    switch (method) {
        case OverlayMethod::definition: verdict.witness = detail::star_method(p, s); break;
        case OverlayMethod::disjoint_images: verdict.witness = detail::disjoint_images_method(p, s); break;
        case OverlayMethod::intersection_slices: verdict.witness = detail::intersection_method(p, s); break;
    }
    verdict.is_overlay = !verdict.witness.has_value();
    return verdict;
}

/// Overlay verdict for a pair that may not be a covering structure: false
/// (without throwing) when S is not one.
inline bool is_overlay(const CoverMap& p, const SetFamily& s) {
    if (!is_covering_structure(p, s)) return false;
    return is_overlay_structure(p, s).is_overlay;
}

/// Re-derives a failure witness from scratch. True iff it is a genuine
/// counterexample for its method.
inline bool witness_is_genuine(const CoverMap& p, const SetFamily& s, const OverlayWitness& w) {
    struct Visitor {
        const CoverMap& p;
        const SetFamily& s;
        bool operator()(const StarWitness& sw) const {
            auto x = p.domain()->index_of(sw.point);
            return star(x, s) == sw.star && !is_slice(p, sw.star);
        }
        bool operator()(const TripleWitness& t) const {
            auto u = s.find(t.u), v = s.find(t.v), w = s.find(t.w);
            if (!u || !v || !w || *v == *w) return false;
            return s[*u].points.intersects(s[*v].points) && s[*u].points.intersects(s[*w].points) &&
                   p.image(s[*v].points) == p.image(s[*w].points);
        }
        bool operator()(const PairWitness& pw) const {
            auto u = s.find(pw.u), v = s.find(pw.v);
            if (!u || !v) return false;
            return s[*u].points.intersects(s[*v].points) &&
                   !detail::intersection_is_slice_over_meet(p, s[*u].points, s[*v].points);
        }
    };
    return std::visit(Visitor{p, s}, w);
}

/// Every element of `fine` lies inside some element of `coarse`; returns the
/// id of the first element that does not, or nullopt.
inline std::optional<std::string> first_unrefined(const SetFamily& fine, const SetFamily& coarse) {
    for (const auto& f : fine.elements()) {
        bool inside = false;
        for (const auto& c : coarse.elements())
            if (f.points.is_subset_of(c.points)) { inside = true; break; }
        if (!inside) return f.id;
    }
    return std::nullopt;
}

/// Every star st(x, fine) lies in some element of `coarse`.
inline std::optional<std::string> first_star_unrefined(const SetFamily& fine, const SetFamily& coarse) {
    for (PointIndex x = 0; x < fine.space()->size(); ++x) {
        auto st = star(x, fine);
        bool inside = false;
        for (const auto& c : coarse.elements())
            if (st.is_subset_of(c.points)) { inside = true; break; }
        if (!inside) return fine.space()->name(x);
    }
    return std::nullopt;
}

/// Pushes an overlay structure S onto a refinement V of its overlay cover
/// p(S): over each W in V, the new slices are U_s & p^-1(W) where {U_s} are
/// the members of S over any element of p(S) containing W. The slices over
/// W do not depend on that choice; this is verified for every containing
/// element. Output ids are "<W id>#<k>", k ordering the slices by their
/// first point.
inline Cover refine_overlay_structure(const CoverMap& p, const SetFamily& s, const SetFamily& v) {
    require_same_space(v, p.codomain(), "refinement");
    auto verdict = is_overlay_structure(p, s);
    if (!verdict.is_overlay) throw PreconditionError("structure is not an overlay structure");
    const Cover overlay_cover = image_cover(p, s);
    if (auto bad = first_unrefined(v, overlay_cover))
        throw InputError("element '" + *bad + "' of the refinement lies in no overlay-cover element");

    std::vector<CoverElement> out;
    for (const auto& w : v.elements()) {
        const PointSet over_w = p.preimage(w.points);
        std::optional<std::vector<PointSet>> agreed;
        for (const auto& u : overlay_cover.elements()) {
            if (!w.points.is_subset_of(u.points)) continue;
            std::vector<PointSet> pieces;
            for (const auto& e : s.elements())
                if (p.image(e.points) == u.points) pieces.push_back(e.points & over_w);
            std::sort(pieces.begin(), pieces.end(),
                      [](const PointSet& a, const PointSet& b) { return a.find_first() < b.find_first(); });
            if (!agreed) agreed = std::move(pieces);
            else ensure(*agreed == pieces, "slices over '" + w.id + "' depend on the containing element");
        }
        for (std::size_t k = 0; k < agreed->size(); ++k)
            out.push_back({w.id + "#" + std::to_string(k), (*agreed)[k]});
    }
    Cover refined(p.domain(), std::move(out));
    ensure(image_cover(p, refined).same_sets(v), "refined structure does not lie over the refinement");
    ensure(is_overlay_structure(p, refined).is_overlay, "refined structure is not an overlay structure");
    return refined;
}

/// Builds the cover {S(x)} from a cover V of X by slices: V(x) is the first
/// member (by id) containing x, U(y) = intersection of p(V(x)) over the
/// fiber of y, W(x) = V(x) & p^-1(U(p(x))), and S(x) removes from W(x) its
/// overlaps with W(x') for the other points x' of the fiber. Empty S(x)
/// are dropped; ids are "S(<x>)". The result is returned as is; callers
/// decide what to assert about it.
inline Cover refine_to_covering_structure(const CoverMap& p, const SetFamily& v) {
    require_same_space(v, p.domain(), "cover");
    require(v.covers_space(), "family does not cover the domain");
    for (const auto& e : v.elements())
        if (!is_slice(p, e.points)) throw InputError("element '" + e.id + "' is not a slice");

    const auto n = p.domain()->size();
    std::vector<std::size_t> chosen(n);
    for (PointIndex x = 0; x < n; ++x) chosen[x] = v.containing(x).front();

    std::vector<PointSet> w(n, PointSet(n));
    for (PointIndex y = 0; y < p.codomain()->size(); ++y) {
        PointSet common = full_set(p.codomain()->size());
        for_each_member(p.fiber(y), [&](PointIndex x) { common &= p.image(v[chosen[x]].points); });
        const PointSet over = p.preimage(common);
        for_each_member(p.fiber(y), [&](PointIndex x) { w[x] = v[chosen[x]].points & over; });
    }
    std::vector<CoverElement> out;
    for (PointIndex x = 0; x < n; ++x) {
        PointSet sx = w[x];
        for_each_member(p.fiber(p(x)), [&](PointIndex other) {
            if (other != x) sx -= (w[x] & w[other]);
        });
        if (sx.any()) out.push_back({"S(" + p.domain()->name(x) + ")", sx});
    }
    return Cover(p.domain(), std::move(out));
}

} // namespace fincov
