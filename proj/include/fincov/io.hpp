#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fincov/actions.hpp"
#include "fincov/cover.hpp"
#include "fincov/cover_map.hpp"
#include "fincov/group.hpp"
#include "fincov/nerve.hpp"
#include "fincov/rational.hpp"
#include "fincov/space.hpp"

// JSON instance files. Canonical form: keys sorted, point lists in
// lexicographic order, map pairs sorted by domain point, metric pairs listed
// once per unordered pair (a < b), rationals as "p/q" in lowest terms,
// two-space indentation and a trailing newline.

namespace fincov {

using Json = nlohmann::json;

struct NamedCover {
    std::string space;
    Cover cover;
};

struct NamedMap {
    std::string domain, codomain;
    std::optional<std::string> structure;
    CoverMap map; ///< carries the structure cover when one is named
};

struct NamedAction {
    std::string group, space;
    GroupAction action;
};

class Instance {
public:
    std::map<std::string, SpacePtr> spaces;
    std::map<std::string, NamedCover> covers;
    std::map<std::string, NamedMap> maps;
    std::map<std::string, FiniteGroup> groups;
    std::map<std::string, NamedAction> actions;
    Json checks = Json::array(); ///< manifest of intended checks, kept verbatim

    const SpacePtr& space(const std::string& name) const { return lookup(spaces, name, "space"); }
    const NamedCover& cover(const std::string& name) const { return lookup(covers, name, "cover"); }
    const NamedMap& map(const std::string& name) const { return lookup(maps, name, "map"); }
    const FiniteGroup& group(const std::string& name) const { return lookup(groups, name, "group"); }
    const NamedAction& action(const std::string& name) const { return lookup(actions, name, "action"); }

    void add_space(const std::string& name, SpacePtr s) { insert(spaces, name, std::move(s), "space"); }

    void add_cover(const std::string& name, const std::string& space_name, const SetFamily& family) {
        const auto& s = space(space_name);
        require(family.space()->points() == s->points(), "cover '" + name + "' lives on another space than '" + space_name + "'");
        insert(covers, name, NamedCover{space_name, Cover(s, family.elements())}, "cover");
    }

    void add_map(const std::string& name, const std::string& domain, const std::string& codomain,
                 const std::vector<PointIndex>& mapping, std::optional<std::string> structure = std::nullopt) {
        const auto& x = space(domain);
        const auto& y = space(codomain);
        std::optional<Cover> s;
        if (structure) {
            const auto& c = cover(*structure);
            require(c.space == domain, "structure '" + *structure + "' of map '" + name + "' is not a cover of '" + domain + "'");
            s = c.cover;
        }
        insert(maps, name, NamedMap{domain, codomain, structure, CoverMap(x, y, mapping, s)}, "map");
    }

    void add_group(const std::string& name, FiniteGroup g) { insert(groups, name, std::move(g), "group"); }

    void add_action(const std::string& name, const std::string& group_name, const std::string& space_name,
                    std::vector<PointPermutation> perms) {
        insert(actions, name,
               NamedAction{group_name, space_name, GroupAction(group(group_name), space(space_name), std::move(perms))},
               "action");
    }

    /// The only map, or the named one.
    const NamedMap& pick_map(const std::optional<std::string>& name) const {
        if (name) return map(*name);
        require(maps.size() == 1, "instance has " + std::to_string(maps.size()) + " maps; name one with --map");
        return maps.begin()->second;
    }

    const NamedAction& pick_action(const std::optional<std::string>& name) const {
        if (name) return action(*name);
        require(actions.size() == 1, "instance has " + std::to_string(actions.size()) + " actions; name one with --action");
        return actions.begin()->second;
    }

private:
    template <class M>
    static const typename M::mapped_type& lookup(const M& m, const std::string& name, const char* what) {
        auto it = m.find(name);
        require(it != m.end(), std::string("unknown ") + what + " '" + name + "'");
        return it->second;
    }

    template <class M, class V>
    static void insert(M& m, const std::string& name, V&& v, const char* what) {
        require(!name.empty(), std::string(what) + " with an empty name");
        require(m.find(name) == m.end(), std::string("duplicate ") + what + " '" + name + "'");
        m.emplace(name, std::forward<V>(v));
    }
};

namespace detail {

inline void expect_keys(const Json& j, const std::string& where, std::initializer_list<const char*> required,
                        std::initializer_list<const char*> optional = {}) {
    require(j.is_object(), where + ": expected an object");
    for (const char* k : required) require(j.contains(k), where + ": missing key '" + k + "'");
    for (const auto& [k, v] : j.items()) {
        bool known = false;
        for (const char* r : required) known = known || k == r;
        for (const char* o : optional) known = known || k == o;
        require(known, where + ": unexpected key '" + k + "'");
    }
}

inline std::string as_string(const Json& j, const std::string& where) {
    require(j.is_string(), where + ": expected a string");
    return j.get<std::string>();
}

inline std::vector<std::string> as_strings(const Json& j, const std::string& where) {
    require(j.is_array(), where + ": expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

inline PointIndex point_of(const FiniteSpace& s, const std::string& name, const std::string& where) {
    auto i = s.find(name);
    require(i.has_value(), where + ": unknown point '" + name + "'");
    return *i;
}

/// Runs `f`, prefixing any InputError message with `where`.
template <class F>
auto located(const std::string& where, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const PreconditionError&) {
        throw;
    } catch (const InputError& e) {
        const std::string msg = e.what();
        if (msg.rfind(where, 0) == 0) throw;
        throw InputError(where + ": " + msg);
    }
}

inline SpacePtr parse_space(const Json& j, const std::string& where) {
    expect_keys(j, where, {"points"}, {"metric"});
    auto bare = located(where, [&] { return make_space(as_strings(j["points"], where + ".points")); });
    if (!j.contains("metric")) return bare;
    const auto mw = where + ".metric";
    expect_keys(j["metric"], mw, {"pairs"});
    const auto& pairs = j["metric"]["pairs"];
    require(pairs.is_array(), mw + ".pairs: expected an array");
    const auto n = bare->size();
    DistanceTable d(n);
    std::vector<bool> seen(n * n, false);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto pw = mw + ".pairs[" + std::to_string(i) + "]";
        auto entry = as_strings(pairs[i], pw);
        require(entry.size() == 3, pw + ": expected [point, point, \"p/q\"]");
        const auto a = point_of(*bare, entry[0], pw), b = point_of(*bare, entry[1], pw);
        require(!seen[a * n + b], pw + ": pair listed twice");
        seen[a * n + b] = seen[b * n + a] = true;
        auto value = located(pw, [&] { return parse_rational(entry[2]); });
        require(a != b || value == 0, pw + ": nonzero self-distance");
        d.set(a, b, value);
    }
    for (PointIndex a = 0; a < n; ++a)
        for (PointIndex b = a + 1; b < n; ++b)
            require(seen[a * n + b], mw + ": no distance for '" + bare->name(a) + "', '" + bare->name(b) + "'");
    return located(where, [&] { return std::make_shared<const FiniteSpace>(bare->with_metric(std::move(d))); });
}

inline Json space_to_json(const FiniteSpace& s) {
    Json j;
    j["points"] = s.points();
    if (s.has_metric()) {
        Json pairs = Json::array();
        for (PointIndex a = 0; a < s.size(); ++a)
            for (PointIndex b = a + 1; b < s.size(); ++b)
                pairs.push_back({s.name(a), s.name(b), format_rational(s.distance(a, b))});
        j["metric"]["pairs"] = std::move(pairs);
    }
    return j;
}

inline Json set_to_json(const FiniteSpace& s, const PointSet& set) { return s.names_of(set); }

} // namespace detail

/// Space, cover, map and group objects accept the same names as the
/// instance sections; errors carry the JSON path of the offending entry.
inline Instance parse_instance(const Json& j) {
    using namespace detail;
    expect_keys(j, "instance", {}, {"spaces", "covers", "maps", "groups", "actions", "checks"});
    Instance inst;
    static const Json empty = Json::object();
    auto section = [&](const char* key) -> const Json& {
        if (!j.contains(key)) return empty;
        require(j[key].is_object(), std::string(key) + ": expected an object of named entries");
        return j[key];
    };
    for (const auto& [name, v] : section("spaces").items()) {
        const auto w = "spaces." + name;
        auto s = parse_space(v, w);
        located(w, [&] { inst.add_space(name, s); });
    }
    for (const auto& [name, v] : section("covers").items()) {
        const auto w = "covers." + name;
        expect_keys(v, w, {"space", "sets"});
        const auto space_name = as_string(v["space"], w + ".space");
        located(w, [&] {
            const auto& s = inst.space(space_name);
            require(v["sets"].is_object(), w + ".sets: expected an object of named sets");
            std::vector<CoverElement> els;
            for (const auto& [id, pts] : v["sets"].items()) {
                PointSet set(s->size());
                for (const auto& p : as_strings(pts, w + ".sets." + id)) set.set(point_of(*s, p, w + ".sets." + id));
                els.push_back({id, set});
            }
            inst.add_cover(name, space_name, SetFamily(s, std::move(els)));
        });
    }
    for (const auto& [name, v] : section("maps").items()) {
        const auto w = "maps." + name;
        expect_keys(v, w, {"domain", "codomain", "pairs"}, {"structure"});
        const auto dom = as_string(v["domain"], w + ".domain"), cod = as_string(v["codomain"], w + ".codomain");
        std::optional<std::string> structure;
        if (v.contains("structure")) structure = as_string(v["structure"], w + ".structure");
        located(w, [&] {
            const auto& x = inst.space(dom);
            const auto& y = inst.space(cod);
            require(v["pairs"].is_array(), w + ".pairs: expected an array");
            std::vector<PointIndex> m(x->size(), y->size());
            for (std::size_t i = 0; i < v["pairs"].size(); ++i) {
                const auto pw = w + ".pairs[" + std::to_string(i) + "]";
                auto pr = as_strings(v["pairs"][i], pw);
                require(pr.size() == 2, pw + ": expected [x, y]");
                const auto a = point_of(*x, pr[0], pw);
                require(m[a] == y->size(), pw + ": point '" + pr[0] + "' mapped twice");
                m[a] = point_of(*y, pr[1], pw);
            }
            for (PointIndex a = 0; a < x->size(); ++a)
                require(m[a] < y->size(), w + ": point '" + x->name(a) + "' has no image");
            inst.add_map(name, dom, cod, m, structure);
        });
    }
    for (const auto& [name, v] : section("groups").items()) {
        const auto w = "groups." + name;
        expect_keys(v, w, {"elements", "table"});
        located(w, [&] {
            auto els = as_strings(v["elements"], w + ".elements");
            require(v["table"].is_array(), w + ".table: expected an array of rows");
            std::vector<std::vector<std::string>> table;
            for (std::size_t i = 0; i < v["table"].size(); ++i)
                table.push_back(as_strings(v["table"][i], w + ".table[" + std::to_string(i) + "]"));
            inst.add_group(name, FiniteGroup(els, table));
        });
    }
    for (const auto& [name, v] : section("actions").items()) {
        const auto w = "actions." + name;
        expect_keys(v, w, {"group", "space", "perm"});
        const auto gname = as_string(v["group"], w + ".group"), sname = as_string(v["space"], w + ".space");
        located(w, [&] {
            const auto& g = inst.group(gname);
            const auto& s = inst.space(sname);
            require(v["perm"].is_object(), w + ".perm: expected an object keyed by group element");
            std::vector<PointPermutation> perms(g.size());
            std::vector<bool> given(g.size(), false);
            for (const auto& [e, imgs] : v["perm"].items()) {
                auto gi = g.space()->find(e);
                require(gi.has_value(), w + ".perm: unknown group element '" + e + "'");
                auto names = as_strings(imgs, w + ".perm." + e);
                require(names.size() == s->size(), w + ".perm." + e + ": expected one image per point");
                for (const auto& n : names) perms[*gi].push_back(point_of(*s, n, w + ".perm." + e));
                given[*gi] = true;
            }
            for (GroupElement e = 0; e < g.size(); ++e)
                require(given[e], w + ".perm: no permutation for '" + g.name(e) + "'");
            inst.add_action(name, gname, sname, std::move(perms));
        });
    }
    if (j.contains("checks")) {
        require(j["checks"].is_array(), "checks: expected an array");
        inst.checks = j["checks"];
    }
    return inst;
}

inline Json to_json(const Instance& inst) {
    using namespace detail;
    Json j = Json::object();
    for (const auto& [name, s] : inst.spaces) j["spaces"][name] = space_to_json(*s);
    for (const auto& [name, c] : inst.covers) {
        Json sets = Json::object();
        for (const auto& e : c.cover.elements()) sets[e.id] = set_to_json(*c.cover.space(), e.points);
        j["covers"][name] = {{"space", c.space}, {"sets", std::move(sets)}};
    }
    for (const auto& [name, m] : inst.maps) {
        Json pairs = Json::array();
        const auto& p = m.map;
        for (PointIndex x = 0; x < p.domain()->size(); ++x) pairs.push_back({p.domain()->name(x), p.codomain()->name(p(x))});
        Json o = {{"domain", m.domain}, {"codomain", m.codomain}, {"pairs", std::move(pairs)}};
        if (m.structure) o["structure"] = *m.structure;
        j["maps"][name] = std::move(o);
    }
    for (const auto& [name, g] : inst.groups) j["groups"][name] = {{"elements", g.space()->points()}, {"table", g.name_table()}};
    for (const auto& [name, a] : inst.actions) {
        Json perm = Json::object();
        const auto& s = *a.action.space();
        for (GroupElement e = 0; e < a.action.group().size(); ++e) {
            Json imgs = Json::array();
            for (auto x : a.action.perm(e)) imgs.push_back(s.name(x));
            perm[a.action.group().name(e)] = std::move(imgs);
        }
        j["actions"][name] = {{"group", a.group}, {"space", a.space}, {"perm", std::move(perm)}};
    }
    if (!inst.checks.empty()) j["checks"] = inst.checks;
    return j;
}

/// Canonical text of a JSON document.
inline std::string canonical(const Json& j) { return j.dump(2) + "\n"; }

inline std::string serialize(const Instance& inst) { return canonical(to_json(inst)); }

inline Json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(origin + ": malformed JSON: " + e.what());
    }
}

inline Instance parse_instance_text(const std::string& text, const std::string& origin = "input") {
    return parse_instance(parse_json_text(text, origin));
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Instance load_instance(const std::string& path) { return parse_instance_text(read_file(path), path); }

/// Full simplex list of a nerve, vertices named by cover element ids.
inline Json nerve_to_json(const SimplicialComplex& k) {
    Json simplices = Json::array();
    for (const auto& s : k.simplices()) simplices.push_back(detail::names(k, s));
    Json j = {{"vertices", k.vertices()}, {"simplices", std::move(simplices)}};
    j["dimension_cap"] = k.dimension_cap() ? Json(*k.dimension_cap()) : Json(nullptr);
    return j;
}

inline Json cover_to_json(const SetFamily& c) {
    Json sets = Json::object();
    for (const auto& e : c.elements()) sets[e.id] = c.space()->names_of(e.points);
    return sets;
}

} // namespace fincov
