#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fincov/errors.hpp"
#include "fincov/point_set.hpp"
#include "fincov/space.hpp"

namespace fincov {

using GroupElement = std::size_t;

/// Finite group given by its multiplication table. Elements are named by
/// strings and indexed in lexicographic order of the names, so that element
/// index and point index coincide on the underlying space.
class FiniteGroup {
public:
    /// `table[a][b]` is the name of a*b, rows and columns in the order of `names`.
    FiniteGroup(std::vector<std::string> names, const std::vector<std::vector<std::string>>& table) {
        require(!names.empty(), "a group needs at least one element");
        require(table.size() == names.size(), "multiplication table has the wrong number of rows");
        space_ = make_space(names);
        const auto n = names.size();
        mul_.assign(n * n, 0);
        for (std::size_t r = 0; r < n; ++r) {
            require(table[r].size() == n, "multiplication table row of the wrong length");
            const auto a = space_->index_of(names[r]);
            for (std::size_t c = 0; c < n; ++c) {
                const auto b = space_->index_of(names[c]);
                auto v = space_->find(table[r][c]);
                require(v.has_value(), "multiplication table entry '" + table[r][c] + "' is not an element");
                mul_[a * n + b] = *v;
            }
        }
        validate();
    }

    std::size_t size() const noexcept { return space_->size(); }
    const SpacePtr& space() const noexcept { return space_; }
    const std::string& name(GroupElement g) const { return space_->name(g); }
    GroupElement index_of(const std::string& name) const { return space_->index_of(name); }
    GroupElement mul(GroupElement a, GroupElement b) const { return mul_[a * size() + b]; }
    GroupElement inv(GroupElement a) const { return inv_[a]; }
    GroupElement identity() const noexcept { return identity_; }

    /// Table of names in element order, the form accepted by the constructor.
    std::vector<std::vector<std::string>> name_table() const {
        std::vector<std::vector<std::string>> t(size());
        for (GroupElement a = 0; a < size(); ++a)
            for (GroupElement b = 0; b < size(); ++b) t[a].push_back(name(mul(a, b)));
        return t;
    }

    std::size_t order(GroupElement g) const {
        std::size_t k = 1;
        for (auto x = g; x != identity_; x = mul(x, g)) ++k;
        return k;
    }

    bool operator==(const FiniteGroup& o) const { return space_->points() == o.space_->points() && mul_ == o.mul_; }

private:
    void validate() {
        const auto n = size();
        std::optional<GroupElement> e;
        for (GroupElement a = 0; a < n && !e; ++a) {
            bool ok = true;
            for (GroupElement b = 0; b < n && ok; ++b) ok = mul(a, b) == b && mul(b, a) == b;
            if (ok) e = a;
        }
        require(e.has_value(), "multiplication table has no identity");
        identity_ = *e;
        inv_.assign(n, n);
        for (GroupElement a = 0; a < n; ++a) {
            for (GroupElement b = 0; b < n; ++b)
                if (mul(a, b) == identity_ && mul(b, a) == identity_) inv_[a] = b;
            require(inv_[a] < n, "element '" + name(a) + "' has no inverse");
        }
        auto assoc = [&](GroupElement a, GroupElement b, GroupElement c) {
            require(mul(mul(a, b), c) == mul(a, mul(b, c)),
                    "multiplication is not associative at (" + name(a) + ", " + name(b) + ", " + name(c) + ")");
        };
        if (n <= 64) {
            for (GroupElement a = 0; a < n; ++a)
                for (GroupElement b = 0; b < n; ++b)
                    for (GroupElement c = 0; c < n; ++c) assoc(a, b, c);
        } else {
            std::mt19937_64 rng(n);
            for (int i = 0; i < 200000; ++i) assoc(rng() % n, rng() % n, rng() % n);
        }
    }

    SpacePtr space_;
    std::vector<GroupElement> mul_;
    std::vector<GroupElement> inv_;
    GroupElement identity_ = 0;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Z/n with elements "0".."n-1" and addition mod n.
inline FiniteGroup cyclic_group(std::size_t n) {
    require(n >= 1, "cyclic group of order 0");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
    std::vector<std::vector<std::string>> t(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) t[a].push_back(std::to_string((a + b) % n));
    return FiniteGroup(names, t);
}

/// Symmetries of the m-gon (order 2m): "r<k>" rotation by k, "s<k>" the
/// reflection r^k s, with s r = r^-1 s.
inline FiniteGroup dihedral_group(std::size_t m) {
    require(m >= 1, "dihedral group of an empty polygon");
    struct E { std::size_t k; bool f; };
    std::vector<E> els;
    std::vector<std::string> names;
    for (std::size_t f = 0; f < 2; ++f)
        for (std::size_t k = 0; k < m; ++k) {
            els.push_back({k, f == 1});
            names.push_back((f ? "s" : "r") + std::to_string(k));
        }
    auto name_of = [&](E e) { return (e.f ? "s" : "r") + std::to_string(e.k); };
    std::vector<std::vector<std::string>> t(els.size());
    for (std::size_t a = 0; a < els.size(); ++a)
        for (std::size_t b = 0; b < els.size(); ++b) {
            const auto& x = els[a];
            const auto& y = els[b];
            const auto k = x.f ? (x.k + m - y.k) % m : (x.k + y.k) % m;
            t[a].push_back(name_of({k, x.f != y.f}));
        }
    return FiniteGroup(names, t);
}

/// Element subsets.
using GroupSet = PointSet;

inline GroupSet group_set(const FiniteGroup& g, const std::vector<std::string>& names) {
    return g.space()->subset(names);
}

inline GroupSet product(const FiniteGroup& g, const GroupSet& a, const GroupSet& b) {
    GroupSet out(g.size());
    for_each_member(a, [&](GroupElement x) { for_each_member(b, [&](GroupElement y) { out.set(g.mul(x, y)); }); });
    return out;
}

inline GroupSet power(const FiniteGroup& g, const GroupSet& a, std::size_t k) {
    require(k >= 1, "set power needs a positive exponent");
    GroupSet out = a;
    for (std::size_t i = 1; i < k; ++i) out = product(g, out, a);
    return out;
}

inline GroupSet inverse(const FiniteGroup& g, const GroupSet& a) {
    GroupSet out(g.size());
    for_each_member(a, [&](GroupElement x) { out.set(g.inv(x)); });
    return out;
}

/// U * x (right translate).
inline GroupSet right_translate(const FiniteGroup& g, const GroupSet& u, GroupElement x) {
    GroupSet out(g.size());
    for_each_member(u, [&](GroupElement a) { out.set(g.mul(a, x)); });
    return out;
}

inline GroupSet singleton(const FiniteGroup& g, GroupElement x) {
    GroupSet s(g.size());
    s.set(x);
    return s;
}

inline GroupSet generated_subgroup(const FiniteGroup& g, const GroupSet& generators) {
    GroupSet h = singleton(g, g.identity());
    std::vector<GroupElement> todo{g.identity()};
    while (!todo.empty()) {
        auto x = todo.back();
        todo.pop_back();
        for_each_member(generators, [&](GroupElement s) {
            auto y = g.mul(x, s);
            if (!h.test(y)) { h.set(y); todo.push_back(y); }
        });
    }
    return h;
}

inline bool is_subgroup(const FiniteGroup& g, const GroupSet& h) {
    if (!h.test(g.identity())) return false;
    bool ok = true;
    for_each_member(h, [&](GroupElement a) {
        for_each_member(h, [&](GroupElement b) { ok = ok && h.test(g.mul(a, g.inv(b))); });
    });
    return ok;
}

inline bool is_normal(const FiniteGroup& g, const GroupSet& h) {
    for (GroupElement x = 0; x < g.size(); ++x) {
        bool ok = true;
        for_each_member(h, [&](GroupElement a) { ok = ok && h.test(g.mul(g.mul(x, a), g.inv(x))); });
        if (!ok) return false;
    }
    return true;
}

/// All subgroups, each obtained by adjoining generators one at a time;
/// sorted by size, then by members.
inline std::vector<GroupSet> subgroups(const FiniteGroup& g) {
    std::set<std::vector<GroupElement>> seen;
    std::vector<GroupSet> todo{singleton(g, g.identity())};
    seen.insert(members(todo.front()));
    std::vector<GroupSet> out;
    while (!todo.empty()) {
        auto h = todo.back();
        todo.pop_back();
        out.push_back(h);
        for (GroupElement x = 0; x < g.size(); ++x) {
            if (h.test(x)) continue;
            GroupSet gens = h;
            gens.set(x);
            auto k = generated_subgroup(g, gens);
            if (seen.insert(members(k)).second) todo.push_back(k);
        }
    }
    std::sort(out.begin(), out.end(), [](const GroupSet& a, const GroupSet& b) {
        if (a.count() != b.count()) return a.count() < b.count();
        return members(a) < members(b);
    });
    return out;
}

inline std::vector<GroupSet> normal_subgroups(const FiniteGroup& g) {
    std::vector<GroupSet> out;
    for (auto& h : subgroups(g))
        if (is_normal(g, h)) out.push_back(h);
    return out;
}

/// Subgroup as a group in its own right, keeping element names.
inline FiniteGroup subgroup_group(const FiniteGroup& g, const GroupSet& h) {
    require(is_subgroup(g, h), "subset is not a subgroup");
    auto els = members(h);
    std::vector<std::string> names;
    for (auto x : els) names.push_back(g.name(x));
    std::vector<std::vector<std::string>> t;
    for (auto a : els) {
        t.emplace_back();
        for (auto b : els) t.back().push_back(g.name(g.mul(a, b)));
    }
    return FiniteGroup(names, t);
}

/// Symmetric subsets U = U^-1 containing the identity.
inline std::vector<GroupSet> symmetric_identity_neighborhoods(const FiniteGroup& g) {
    std::vector<GroupSet> classes;
    std::vector<bool> used(g.size(), false);
    used[g.identity()] = true;
    for (GroupElement x = 0; x < g.size(); ++x) {
        if (used[x]) continue;
        GroupSet c = singleton(g, x);
        c.set(g.inv(x));
        used[x] = used[g.inv(x)] = true;
        classes.push_back(c);
    }
    require(classes.size() < 31, "too many symmetric subsets to enumerate");
    std::vector<GroupSet> out;
    for (unsigned long mask = 0; mask < (1ul << classes.size()); ++mask) {
        GroupSet u = singleton(g, g.identity());
        for (std::size_t i = 0; i < classes.size(); ++i)
            if (mask & (1ul << i)) u |= classes[i];
        out.push_back(u);
    }
    return out;
}

struct QuotientGroup {
    FiniteGroup group;                   ///< cosets named by their smallest element
    std::vector<GroupElement> projection; ///< element of G -> coset in `group`
};

inline QuotientGroup quotient_group(const FiniteGroup& g, const GroupSet& h) {
    require(is_subgroup(g, h), "subset is not a subgroup");
    require(is_normal(g, h), "subgroup is not normal");
    std::vector<GroupElement> rep(g.size(), g.size());
    std::vector<GroupElement> reps;
    for (GroupElement x = 0; x < g.size(); ++x) {
        if (rep[x] != g.size()) continue;
        reps.push_back(x);
        for_each_member(h, [&](GroupElement a) { rep[g.mul(x, a)] = x; });
    }
    std::vector<std::string> names;
    for (auto r : reps) names.push_back(g.name(r));
    std::vector<std::vector<std::string>> t;
    for (auto a : reps) {
        t.emplace_back();
        for (auto b : reps) t.back().push_back(g.name(rep[g.mul(a, b)]));
    }
    FiniteGroup q(names, t);
    std::vector<GroupElement> proj(g.size());
    for (GroupElement x = 0; x < g.size(); ++x) proj[x] = q.index_of(g.name(rep[x]));
    return {std::move(q), std::move(proj)};
}

inline bool is_homomorphism(const FiniteGroup& g, const FiniteGroup& h, const std::vector<GroupElement>& f) {
    if (f.size() != g.size()) return false;
    for (GroupElement a = 0; a < g.size(); ++a)
        for (GroupElement b = 0; b < g.size(); ++b)
            if (f[g.mul(a, b)] != h.mul(f[a], f[b])) return false;
    return true;
}

/// Brute-force isomorphism search: picks a generating sequence of g and
/// tries every order-compatible assignment of images, extending along
/// words in the generators.
inline std::optional<std::vector<GroupElement>> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h) {
    if (g.size() != h.size()) return std::nullopt;
    const auto n = g.size();
    std::vector<GroupElement> gens;
    GroupSet span = singleton(g, g.identity());
    for (GroupElement x = 0; x < n; ++x)
        if (!span.test(x)) {
            gens.push_back(x);
            GroupSet s(n);
            for (auto y : gens) s.set(y);
            span = generated_subgroup(g, s);
        }
    std::vector<GroupElement> images(gens.size());
    auto extend = [&]() -> std::optional<std::vector<GroupElement>> {
        std::vector<GroupElement> f(n, n);
        f[g.identity()] = h.identity();
        std::vector<GroupElement> todo{g.identity()};
        while (!todo.empty()) {
            auto x = todo.back();
            todo.pop_back();
            for (std::size_t i = 0; i < gens.size(); ++i) {
                auto y = g.mul(x, gens[i]);
                auto fy = h.mul(f[x], images[i]);
                if (f[y] == n) { f[y] = fy; todo.push_back(y); }
                else if (f[y] != fy) return std::nullopt;
            }
        }
        std::vector<bool> hit(n, false);
        for (auto v : f) {
            if (v >= n || hit[v]) return std::nullopt;
            hit[v] = true;
        }
        if (!is_homomorphism(g, h, f)) return std::nullopt;
        return f;
    };
    auto rec = [&](auto&& self, std::size_t i) -> std::optional<std::vector<GroupElement>> {
        if (i == gens.size()) return extend();
        for (GroupElement c = 0; c < n; ++c) {
            if (h.order(c) != g.order(gens[i])) continue;
            images[i] = c;
            if (auto f = self(self, i + 1)) return f;
        }
        return std::nullopt;
    };
    return rec(rec, 0);
}

} // namespace fincov
