#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "fincov/builders.hpp"
#include "fincov/overlay.hpp"

namespace fincov {

struct CycleCoverInstance {
    std::size_t k = 0, n = 0, m = 0;
    CoverMap map; ///< cyc(kn) -> cyc(n) with structure arcs(kn, m)
    bool expect_covering = false;
    bool expect_overlay = false;
};

/// Expected verdicts for arcs(kn, m) over cyc(n): a covering structure iff
/// m <= n, an overlay structure iff also 2m - 1 <= n (stars are arcs of
/// length 2m - 1). With k = 1 the map is the identity and both always hold.
inline std::pair<bool, bool> cycle_cover_expectations(std::size_t k, std::size_t n, std::size_t m) {
    if (k == 1) return {true, true};
    const bool covering = m <= n;
    return {covering, covering && 2 * m - 1 <= n};
}

/// cyc(kn) -> cyc(n), x -> x mod n, with structure arcs(kn, m). When `scale`
/// is given both cycles carry the graph metric multiplied by it. The
/// documented verdicts are checked before returning.
inline CycleCoverInstance gen_cycle_cover(std::size_t k, std::size_t n, std::size_t m,
                                          std::optional<Rational> scale = std::nullopt) {
    require(k >= 1, "k must be at least 1");
    require(n >= 3, "n must be at least 3");
    require(m >= 1 && m <= k * n, "m must lie in 1..k*n");
    if (scale) require(*scale > 0, "metric scale must be positive");
    auto X = scale ? metric_cycle_space(k * n, *scale) : cycle_space(k * n);
    auto Y = scale ? metric_cycle_space(n, *scale) : cycle_space(n);
    auto p = pmod(X, Y).with_structure(arcs_cover(X, m));
    auto [covering, overlay] = cycle_cover_expectations(k, n, m);
    ensure(is_covering_structure(p, p.structure()) == covering, "cycle cover: covering verdict differs from expectation");
    ensure(is_overlay(p, p.structure()) == overlay, "cycle cover: overlay verdict differs from expectation");
    return {k, n, m, std::move(p), covering, overlay};
}

using Permutation = std::vector<std::size_t>; ///< 0-based images

/// Parses cycle notation on {1..k}, e.g. "(1 2)(3 4)", "(1,2,3)", "()" or "id".
inline Permutation parse_cycles(const std::string& text, std::size_t k) {
    Permutation perm(k);
    for (std::size_t i = 0; i < k; ++i) perm[i] = i;
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t == "id" || t.empty()) return perm;
    std::vector<bool> used(k, false);
    std::size_t i = 0;
    auto fail = [&] { throw InputError("malformed permutation '" + text + "'"); };
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) { ++i; continue; }
        if (text[i] != '(') fail();
        auto close = text.find(')', i);
        if (close == std::string::npos) fail();
        std::vector<std::size_t> cycle;
        std::string num;
        auto flush = [&] {
            if (num.empty()) return;
            const auto v = std::stoul(num);
            if (v < 1 || v > k) throw InputError("permutation entry " + num + " outside 1.." + std::to_string(k));
            if (used[v - 1]) throw InputError("permutation entry " + num + " repeated");
            used[v - 1] = true;
            cycle.push_back(v - 1);
            num.clear();
        };
        for (std::size_t j = i + 1; j < close; ++j) {
            const char c = text[j];
            if (std::isdigit(static_cast<unsigned char>(c))) num += c;
            else if (c == ' ' || c == ',') flush();
            else fail();
        }
        flush();
        for (std::size_t j = 0; j < cycle.size(); ++j) perm[cycle[j]] = cycle[(j + 1) % cycle.size()];
        i = close + 1;
    }
    return perm;
}

inline std::string format_cycles(const Permutation& perm) {
    std::string out;
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i] || perm[i] == i) continue;
        out += "(";
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            if (j != i) out += " ";
            out += std::to_string(j + 1);
            seen[j] = true;
        }
        out += ")";
    }
    return out.empty() ? "id" : out;
}

struct WedgeCoverInstance {
    Permutation sigma_a, sigma_b;
    CoverMap map; ///< k-sheeted cover of the figure eight with the lifted edge structure
};

/// Figure-eight model Y = {h, a1, a2, b1, b2}: two 3-point cycles h-a1-a2-h
/// and h-b1-b2-h sharing the hub h, covered by their six edges. X has the
/// points "<y>.<i>" for sheets i = 1..k; edges are lifted within a sheet,
/// except that the closing edges a2-h and b2-h go from sheet i to sheet
/// sigma_a(i) and sigma_b(i). The structure is the set of lifted edges.
inline WedgeCoverInstance gen_wedge_cover(const Permutation& sigma_a, const Permutation& sigma_b) {
    const auto k = sigma_a.size();
    require(k >= 1 && sigma_b.size() == k, "permutations must act on the same nonempty set");
    for (const auto* s : {&sigma_a, &sigma_b}) {
        std::vector<bool> hit(k, false);
        for (auto v : *s) {
            require(v < k && !hit[v], "not a permutation");
            hit[v] = true;
        }
    }
    std::vector<bool> reached(k, false);
    std::vector<std::size_t> todo{0};
    reached[0] = true;
    while (!todo.empty()) {
        auto i = todo.back();
        todo.pop_back();
        for (auto j : {sigma_a[i], sigma_b[i]})
            if (!reached[j]) { reached[j] = true; todo.push_back(j); }
    }
    for (bool r : reached) require(r, "permutations do not generate a transitive group");

    const std::vector<std::string> base{"a1", "a2", "b1", "b2", "h"};
    auto Y = make_space(base);
    std::vector<std::string> xs;
    for (const auto& y : base)
        for (std::size_t i = 1; i <= k; ++i) xs.push_back(y + "." + std::to_string(i));
    auto X = make_space(xs);
    std::vector<PointIndex> m(X->size());
    for (PointIndex x = 0; x < X->size(); ++x) m[x] = Y->index_of(X->name(x).substr(0, X->name(x).find('.')));

    auto pt = [&](const std::string& y, std::size_t sheet) { return X->index_of(y + "." + std::to_string(sheet + 1)); };
    std::vector<CoverElement> edges;
    for (std::size_t i = 0; i < k; ++i) {
        const std::string s = "." + std::to_string(i + 1);
        auto edge = [&](PointIndex u, PointIndex v) { return make_set(X->size(), {u, v}); };
        edges.push_back({"a0" + s, edge(pt("h", i), pt("a1", i))});
        edges.push_back({"a1" + s, edge(pt("a1", i), pt("a2", i))});
        edges.push_back({"a2" + s, edge(pt("a2", i), pt("h", sigma_a[i]))});
        edges.push_back({"b0" + s, edge(pt("h", i), pt("b1", i))});
        edges.push_back({"b1" + s, edge(pt("b1", i), pt("b2", i))});
        edges.push_back({"b2" + s, edge(pt("b2", i), pt("h", sigma_b[i]))});
    }
    CoverMap p(X, Y, std::move(m), Cover(X, std::move(edges)));
    ensure(is_overlay(p, p.structure()), "wedge cover: lifted edges are not an overlay structure");
    return {sigma_a, sigma_b, std::move(p)};
}

/// The non-regular 3-sheeted wedge cover with sigma_a = (1 2), sigma_b = (2 3).
inline WedgeCoverInstance wedge3() { return gen_wedge_cover(parse_cycles("(1 2)", 3), parse_cycles("(2 3)", 3)); }

} // namespace fincov
