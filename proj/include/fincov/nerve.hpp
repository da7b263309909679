#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fincov/cover_map.hpp"
#include "fincov/overlay.hpp"
#include "fincov/rational.hpp"

namespace fincov {

using Simplex = std::vector<std::size_t>; ///< sorted vertex indices

class SimplicialComplex {
public:
    SimplicialComplex(std::vector<std::string> vertices, std::set<Simplex> simplices,
                      std::optional<std::size_t> dimension_cap)
        : vertices_(std::move(vertices)), simplices_(std::move(simplices)), cap_(dimension_cap) {
        for (std::size_t v = 0; v < vertices_.size(); ++v)
            ensure(simplices_.count({v}), "vertex without its 0-simplex");
        for (const auto& s : simplices_) {
            ensure(!s.empty() && std::is_sorted(s.begin(), s.end()), "malformed simplex");
            if (s.size() < 2) continue;
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                Simplex face;
                for (std::size_t i = 0; i < s.size(); ++i)
                    if (i != drop) face.push_back(s[i]);
                ensure(simplices_.count(face), "simplex set is not closed under faces");
            }
        }
        neighbors_.assign(vertices_.size(), {});
        for (const auto& s : simplices_)
            if (s.size() == 2) {
                neighbors_[s[0]].push_back(s[1]);
                neighbors_[s[1]].push_back(s[0]);
            }
    }

    const std::vector<std::string>& vertices() const noexcept { return vertices_; }
    const std::set<Simplex>& simplices() const noexcept { return simplices_; }
    std::optional<std::size_t> dimension_cap() const noexcept { return cap_; }
    bool contains(const Simplex& s) const { return simplices_.count(s) > 0; }
    const std::vector<std::size_t>& neighbors(std::size_t v) const { return neighbors_.at(v); }

    std::size_t dimension() const {
        std::size_t d = 0;
        for (const auto& s : simplices_) d = std::max(d, s.size() - 1);
        return d;
    }

    /// Simplices containing v.
    std::vector<Simplex> open_star(std::size_t v) const {
        std::vector<Simplex> out;
        for (const auto& s : simplices_)
            if (std::binary_search(s.begin(), s.end(), v)) out.push_back(s);
        return out;
    }

private:
    std::vector<std::string> vertices_;
    std::set<Simplex> simplices_;
    std::optional<std::size_t> cap_;
    std::vector<std::vector<std::size_t>> neighbors_;
};

inline constexpr std::size_t default_dimension_cap = 3;

/// Nerve of a set family: one vertex per member, a simplex for every set of
/// at most cap+1 members with a common point.
inline SimplicialComplex build_nerve(const SetFamily& c,
                                     std::optional<std::size_t> cap = default_dimension_cap) {
    std::vector<std::string> vertices;
    for (const auto& e : c.elements()) vertices.push_back(e.id);
    const std::size_t max_size = cap ? *cap + 1 : c.size();
    std::set<Simplex> simplices;
    Simplex cur;
    auto extend = [&](auto&& self, std::size_t from, const PointSet& common) -> void {
        simplices.insert(cur);
        if (cur.size() == max_size) return;
        for (std::size_t k = from; k < c.size(); ++k) {
            PointSet next = common & c[k].points;
            if (next.none()) continue;
            cur.push_back(k);
            self(self, k + 1, next);
            cur.pop_back();
        }
    };
    for (std::size_t v = 0; v < c.size(); ++v) {
        cur = {v};
        extend(extend, v + 1, c[v].points);
    }
    return SimplicialComplex(std::move(vertices), std::move(simplices), cap);
}

/// Vertex map between complexes; construction checks that simplices go to
/// simplices.
class SimplicialMap {
public:
    SimplicialMap(SimplicialComplex source, SimplicialComplex target, std::vector<std::size_t> vertex_map)
        : source_(std::move(source)), target_(std::move(target)), map_(std::move(vertex_map)) {
        require(map_.size() == source_.vertices().size(), "vertex map is not total");
        for (auto v : map_) require(v < target_.vertices().size(), "vertex map leaves the target");
        for (const auto& s : source_.simplices()) {
            if (!target_.contains(apply(s)))
                throw InputError("vertex map is not simplicial at a simplex through '" +
                                 source_.vertices()[s.front()] + "'");
        }
    }

    const SimplicialComplex& source() const noexcept { return source_; }
    const SimplicialComplex& target() const noexcept { return target_; }
    std::size_t operator()(std::size_t v) const { return map_.at(v); }
    const std::vector<std::size_t>& vertex_map() const noexcept { return map_; }

    Simplex apply(const Simplex& s) const {
        Simplex out;
        for (auto v : s) out.push_back(map_[v]);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

private:
    SimplicialComplex source_;
    SimplicialComplex target_;
    std::vector<std::size_t> map_;
};

/// N(p): N(S) -> N(p(S)), V -> p(V).
inline SimplicialMap induced_map(const CoverMap& p, const SetFamily& s,
                                 std::optional<std::size_t> cap = default_dimension_cap) {
    require_same_space(s, p.domain(), "structure");
    const Cover u = image_cover(p, s);
    return SimplicialMap(build_nerve(s, cap), build_nerve(u, cap), image_indices(p, s, u));
}

enum class NerveCoveringMode { full, one_skeleton };

struct NerveCoveringWitness {
    std::string vertex;               ///< vertex where the local condition fails
    std::vector<std::string> involved; ///< offending neighbors / simplex vertices
    std::string reason;
};

struct NerveCoveringVerdict {
    bool is_covering = false;
    std::optional<NerveCoveringWitness> witness;
};

namespace detail {

inline std::vector<std::string> names(const SimplicialComplex& k, const std::vector<std::size_t>& vs) {
    std::vector<std::string> out;
    for (auto v : vs) out.push_back(k.vertices()[v]);
    return out;
}

inline std::optional<NerveCoveringWitness> one_skeleton_failure(const SimplicialMap& f) {
    const auto& src = f.source();
    const auto& tgt = f.target();
    for (std::size_t v = 0; v < src.vertices().size(); ++v) {
        const auto u = f(v);
        std::vector<std::size_t> seen_from(tgt.vertices().size(), SIZE_MAX);
        for (auto w : src.neighbors(v)) {
            const auto fw = f(w);
            if (seen_from[fw] != SIZE_MAX)
                return NerveCoveringWitness{src.vertices()[v], names(src, {seen_from[fw], w}),
                                            "two edges at one vertex with equal image"};
            seen_from[fw] = w;
        }
        if (seen_from[u] != SIZE_MAX)
            return NerveCoveringWitness{src.vertices()[v], names(src, {seen_from[u]}),
                                        "edge collapses onto a vertex"};
        for (auto t : tgt.neighbors(u))
            if (seen_from[t] == SIZE_MAX)
                return NerveCoveringWitness{src.vertices()[v], names(tgt, {t}),
                                            "target edge has no lift at this vertex"};
    }
    return std::nullopt;
}

inline std::optional<NerveCoveringWitness> full_failure(const SimplicialMap& f) {
    const auto& src = f.source();
    const auto& tgt = f.target();
    const auto nsrc = src.vertices().size();
    for (std::size_t u = 0; u < tgt.vertices().size(); ++u) {
        // Preimage of st(u) must be the disjoint union of st(v), f(v) = u.
        for (const auto& s : src.simplices()) {
            std::vector<std::size_t> over;
            for (auto v : s)
                if (f(v) == u) over.push_back(v);
            if (over.size() > 1)
                return NerveCoveringWitness{tgt.vertices()[u], names(src, s),
                                            "preimage of the star is not a disjoint union of stars"};
        }
        const auto target_star = tgt.open_star(u);
        const std::set<Simplex> target_star_set(target_star.begin(), target_star.end());
        for (std::size_t v = 0; v < nsrc; ++v) {
            if (f(v) != u) continue;
            const auto st = src.open_star(v);
            std::set<std::size_t> closure;
            for (const auto& s : st) closure.insert(s.begin(), s.end());
            std::set<std::size_t> images;
            for (auto w : closure) images.insert(f(w));
            if (images.size() != closure.size())
                return NerveCoveringWitness{src.vertices()[v], {}, "map is not injective on the star"};
            std::set<Simplex> image_star;
            for (const auto& s : st) image_star.insert(f.apply(s));
            if (image_star != target_star_set)
                return NerveCoveringWitness{src.vertices()[v], names(tgt, {u}),
                                            "star is not mapped onto the star of its image"};
        }
    }
    return std::nullopt;
}

} // namespace detail

/// Combinatorial covering test for a simplicial map. one_skeleton: every
/// vertex's neighbors map bijectively onto the neighbors of its image.
/// full: the preimage of every open vertex star splits as the disjoint union
/// of the stars over it, each mapped isomorphically onto it.
inline NerveCoveringVerdict is_simplicial_covering(const SimplicialMap& f, NerveCoveringMode mode) {
    NerveCoveringVerdict out;
    out.witness = mode == NerveCoveringMode::one_skeleton ? detail::one_skeleton_failure(f)
                                                          : detail::full_failure(f);
    out.is_covering = !out.witness.has_value();
    return out;
}

/// 1-skeleton in Graphviz DOT: one node per vertex, one edge per 1-simplex.
inline std::string to_dot(const SimplicialComplex& k, const std::string& name = "nerve") {
    auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') q += '\\';
            q += c;
        }
        return q + "\"";
    };
    std::ostringstream out;
    out << "graph " << quote(name) << " {\n";
    for (const auto& v : k.vertices()) out << "  " << quote(v) << ";\n";
    for (const auto& s : k.simplices())
        if (s.size() == 2)
            out << "  " << quote(k.vertices()[s[0]]) << " -- " << quote(k.vertices()[s[1]]) << ";\n";
    out << "}\n";
    return out.str();
}

struct PullbackPointReport {
    std::string point;
    std::size_t fiber_size = 0;
    std::size_t solutions = 0;
    bool fiber_matches = false; ///< x -> psi(x) is a bijection fiber -> solutions
};

struct PullbackReport {
    bool holds = false;
    bool partition_exact = false;  ///< both partitions of unity sum to exactly 1
    bool commutes = false;          ///< N(p) o psi == phi o p at every point
    bool no_shared_images = false;  ///< no simplex of N(S) has two vertices over one member
    std::vector<PullbackPointReport> points;
};

/// Exhibits p as the pull-back of N(p) along phi: Y -> N(p(S)). phi is the
/// degree partition of unity phi_U(y) = [y in U] / #{U' : y in U'} and
/// psi_V(x) = [x in V] phi_{p(V)}(p(x)). For every y the solutions z of
/// N(p)(z) = phi(y), one member over each U with phi_U(y) > 0 spanning a
/// simplex, must correspond exactly to the fiber over y via psi.
inline PullbackReport verify_pullback(const CoverMap& p, const SetFamily& s) {
    if (!is_overlay(p, s)) throw PreconditionError("structure is not an overlay structure");
    const Cover u = image_cover(p, s);
    const auto over = image_indices(p, s, u);
    const auto nx = p.domain()->size(), ny = p.codomain()->size();

    std::vector<std::vector<Rational>> phi(ny, std::vector<Rational>(u.size()));
    for (PointIndex y = 0; y < ny; ++y) {
        const auto deg = u.containing(y).size();
        for (auto k : u.containing(y)) phi[y][k] = Rational(Integer(1), Integer(deg));
    }
    std::vector<std::vector<Rational>> psi(nx, std::vector<Rational>(s.size()));
    for (PointIndex x = 0; x < nx; ++x)
        for (auto v : s.containing(x)) psi[x][v] = phi[p(x)][over[v]];

    PullbackReport report;
    report.partition_exact = true;
    for (const auto& row : phi) {
        Rational sum = 0;
        for (const auto& c : row) sum += c;
        report.partition_exact = report.partition_exact && sum == 1;
    }
    for (const auto& row : psi) {
        Rational sum = 0;
        for (const auto& c : row) sum += c;
        report.partition_exact = report.partition_exact && sum == 1;
    }

    report.commutes = true;
    for (PointIndex x = 0; x < nx; ++x) {
        std::vector<Rational> pushed(u.size());
        for (std::size_t v = 0; v < s.size(); ++v) pushed[over[v]] += psi[x][v];
        report.commutes = report.commutes && pushed == phi[p(x)];
    }

    report.no_shared_images = true;
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = a + 1; b < s.size(); ++b)
            if (over[a] == over[b] && s[a].points.intersects(s[b].points)) report.no_shared_images = false;

    bool all_match = true;
    for (PointIndex y = 0; y < ny; ++y) {
        const auto& through = u.containing(y);
        std::vector<std::vector<std::size_t>> choices(through.size());
        for (std::size_t i = 0; i < through.size(); ++i)
            for (std::size_t v = 0; v < s.size(); ++v)
                if (over[v] == through[i]) choices[i].push_back(v);
        std::set<std::vector<Rational>> solutions;
        std::vector<std::size_t> picked;
        auto search = [&](auto&& self, std::size_t i, const PointSet& common) -> void {
            if (i == through.size()) {
                std::vector<Rational> z(s.size());
                for (std::size_t j = 0; j < picked.size(); ++j) z[picked[j]] = phi[y][through[j]];
                solutions.insert(std::move(z));
                return;
            }
            for (auto v : choices[i]) {
                PointSet next = common & s[v].points;
                if (next.none()) continue;
                picked.push_back(v);
                self(self, i + 1, next);
                picked.pop_back();
            }
        };
        search(search, 0, full_set(nx));

        PullbackPointReport pr;
        pr.point = p.codomain()->name(y);
        pr.fiber_size = p.fiber(y).count();
        pr.solutions = solutions.size();
        std::set<std::vector<Rational>> hit;
        bool inside = true;
        for_each_member(p.fiber(y), [&](PointIndex x) {
            inside = inside && solutions.count(psi[x]) > 0;
            hit.insert(psi[x]);
        });
        pr.fiber_matches = inside && hit.size() == pr.fiber_size && hit.size() == solutions.size();
        all_match = all_match && pr.fiber_matches;
        report.points.push_back(pr);
    }
    report.holds = report.partition_exact && report.commutes && report.no_shared_images && all_match;
    return report;
}

} // namespace fincov
