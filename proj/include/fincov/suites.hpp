#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fincov/actions.hpp"
#include "fincov/chains.hpp"
#include "fincov/generators.hpp"
#include "fincov/io.hpp"
#include "fincov/metric.hpp"
#include "fincov/nerve.hpp"
#include "fincov/overlay.hpp"
#include "fincov/random_instances.hpp"
#include "fincov/topological_groups.hpp"

// Cross-check suites over a corpus of built-in instances, seeded random
// instances and instances loaded from files. Reports contain no timing so
// that equal seeds give byte-identical output.

namespace fincov {

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"prop44", "thm53", "thm71", "thm63", "thm54",
                                                "prop33", "prop35", "thm64", "cor72"};
    return names;
}

struct SuiteOptions {
    std::uint64_t seed = 1;
    std::size_t count = 200;
    std::vector<std::pair<std::string, Instance>> files; ///< (origin, instance)
};

struct SuiteReport {
    Json json;
    std::size_t entries = 0, violations = 0, errors = 0;

    int exit_code() const { return violations ? 1 : errors ? 2 : 0; }
};

/// A map with its structure, plus what the suite expects of it when known.
struct MapEntry {
    std::string name;
    CoverMap map;
    std::optional<bool> expect_regular;
};

struct ActionEntry {
    std::string name;
    GroupAction action;
    SetFamily cover;
};

namespace detail {

struct EntryResult {
    Json fields = Json::object();
    bool ok = true;
};

class SuiteRun {
public:
    SuiteRun(const std::string& suite, const SuiteOptions& o) {
        report_.json = {{"suite", suite}, {"seed", o.seed}, {"count", o.count}, {"entries", Json::array()}};
    }

    void entry(const std::string& name, const std::function<EntryResult()>& body) {
        Json e = {{"name", name}};
        ++report_.entries;
        try {
            auto r = body();
            e.update(r.fields);
            e["ok"] = r.ok;
            if (!r.ok) ++report_.violations;
        } catch (const InvariantViolation& ex) {
            e["ok"] = false;
            e["violation"] = ex.what();
            ++report_.violations;
        } catch (const InputError& ex) {
            e["ok"] = false;
            e["error"] = ex.what();
            ++report_.errors;
        }
        report_.json["entries"].push_back(std::move(e));
    }

    SuiteReport finish() {
        report_.json["summary"] = {
            {"entries", report_.entries}, {"violations", report_.violations}, {"errors", report_.errors}};
        return std::move(report_);
    }

private:
    SuiteReport report_;
};

inline std::string padded(std::size_t i) {
    auto s = std::to_string(i);
    return std::string(s.size() < 4 ? 4 - s.size() : 0, '0') + s;
}

inline bool connected(const SetFamily& s) {
    auto label = chain_components(s);
    for (auto l : label)
        if (l != 0) return false;
    return true;
}

inline std::size_t permutation_group_order(const std::vector<Permutation>& gens) {
    const auto k = gens.front().size();
    Permutation id(k);
    for (std::size_t i = 0; i < k; ++i) id[i] = i;
    std::set<Permutation> seen{id};
    std::vector<Permutation> todo{id};
    while (!todo.empty()) {
        auto p = todo.back();
        todo.pop_back();
        for (const auto& g : gens) {
            Permutation q(k);
            for (std::size_t i = 0; i < k; ++i) q[i] = g[p[i]];
            if (seen.insert(q).second) todo.push_back(q);
        }
    }
    return seen.size();
}

} // namespace detail

/// `count` random covering structures from one mt19937_64 stream seeded with `seed`.
inline std::vector<MapEntry> random_corpus(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 rng(seed);
    std::vector<MapEntry> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back({"random-" + detail::padded(i), random_covering_instance(rng), {}});
    return out;
}

/// cyc(kn) -> cyc(n) with arcs(kn, m) for k <= kmax, 3 <= n <= nmax, 1 <= m <= n.
inline std::vector<MapEntry> cycle_grid(std::size_t kmax = 3, std::size_t nmax = 6) {
    std::vector<MapEntry> out;
    for (std::size_t k = 1; k <= kmax; ++k)
        for (std::size_t n = 3; n <= nmax; ++n)
            for (std::size_t m = 1; m <= n; ++m)
                out.push_back({"cycle-" + std::to_string(k) + "-" + std::to_string(n) + "-" + std::to_string(m),
                               gen_cycle_cover(k, n, m).map, std::optional<bool>(true)});
    return out;
}

struct WedgeCase {
    const char* a;
    const char* b;
    std::size_t k;
};

inline const std::vector<WedgeCase>& wedge_cases() {
    static const std::vector<WedgeCase> cases{
        {"(1 2)", "(2 3)", 3},       {"(1 2 3)", "(1 2 3)", 3}, {"(1 2 3)", "()", 3},
        {"(1 2)", "(1 2 3)", 3},     {"(1 2 3 4)", "()", 4},    {"(1 2)(3 4)", "(1 3)(2 4)", 4},
        {"(1 2)", "(2 3 4)", 4},     {"(1 2 3 4)", "(1 3)", 4}, {"()", "(1 2 3 4 5)", 5},
        {"(1 2 3 4 5)", "(2 5)(3 4)", 5}, {"()", "()", 1}};
    return cases;
}

/// Wedge covers, expected regular exactly when the monodromy group acts
/// regularly (its order equals the number of sheets).
inline std::vector<MapEntry> wedge_corpus() {
    std::vector<MapEntry> out;
    for (const auto& w : wedge_cases()) {
        auto inst = gen_wedge_cover(parse_cycles(w.a, w.k), parse_cycles(w.b, w.k));
        const bool regular = detail::permutation_group_order({inst.sigma_a, inst.sigma_b}) == w.k;
        out.push_back({std::string("wedge-") + format_cycles(inst.sigma_a) + "-" + format_cycles(inst.sigma_b),
                       std::move(inst.map), regular});
    }
    return out;
}

/// Free actions with covers: rotations of cycles and cosets of subgroups.
inline std::vector<ActionEntry> action_corpus() {
    std::vector<ActionEntry> out;
    auto add = [&](std::string name, GroupAction a, SetFamily u) { out.push_back({std::move(name), std::move(a), std::move(u)}); };
    auto c6 = cycle_space(6), c12 = cycle_space(12), c9 = cycle_space(9);
    add("antipode-arcs2", rotation_action(c6, 2, 3), arcs_cover(c6, 2));
    add("antipode-arcs3", rotation_action(c6, 2, 3), arcs_cover(c6, 3));
    add("z3-on-cyc12-arcs2", rotation_action(c12, 3, 4), arcs_cover(c12, 2));
    add("z3-on-cyc12-arcs3", rotation_action(c12, 3, 4), arcs_cover(c12, 3));
    add("z4-on-cyc12-arcs2", rotation_action(c12, 4, 3), arcs_cover(c12, 2));
    add("z3-on-cyc9-arcs2", rotation_action(c9, 3, 3), arcs_cover(c9, 2));
    add("trivial-on-cyc9", trivial_action(c9), arcs_cover(c9, 4));
    auto d3 = dihedral_group(3);
    add("d3-by-reflection", right_multiplication_action(d3, group_set(d3, {"r0", "s0"})),
        right_translates(d3, group_set(d3, {"r0", "s1"})));
    auto d4 = dihedral_group(4);
    add("d4-by-centre", right_multiplication_action(d4, group_set(d4, {"r0", "r2"})),
        right_translates(d4, group_set(d4, {"r0", "s0", "s1"})));
    auto z10 = cyclic_group(10);
    add("z10-by-five", right_multiplication_action(z10, group_set(z10, {"0", "5"})),
        right_translates(z10, group_set(z10, {"9", "0", "1"})));
    return out;
}

/// Orbit projections of the overlay actions in the action corpus, with the
/// saturated cover as structure; expected regular.
inline std::vector<MapEntry> action_quotient_corpus() {
    std::vector<MapEntry> out;
    for (auto& e : action_corpus()) {
        if (!is_overlay_action(e.action, e.cover, ActionOverlayMethod::def31).is_overlay) continue;
        auto v = saturate(e.action, e.cover);
        out.push_back({"quotient-" + e.name, quotient(e.action).projection.with_structure(v), std::optional<bool>(true)});
    }
    return out;
}

inline std::vector<MapEntry> file_map_corpus(const SuiteOptions& o) {
    std::vector<MapEntry> out;
    for (const auto& [origin, inst] : o.files)
        for (const auto& [name, m] : inst.maps)
            if (m.structure) out.push_back({origin + ":" + name, m.map, {}});
    return out;
}

inline std::vector<ActionEntry> file_action_corpus(const SuiteOptions& o) {
    std::vector<ActionEntry> out;
    for (const auto& [origin, inst] : o.files)
        for (const auto& [aname, a] : inst.actions)
            for (const auto& [cname, c] : inst.covers)
                if (c.space == a.space) out.push_back({origin + ":" + aname + "/" + cname, a.action, c.cover});
    return out;
}

namespace detail {

inline std::vector<MapEntry> concat(std::initializer_list<std::vector<MapEntry>> parts) {
    std::vector<MapEntry> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

inline SuiteReport suite_prop44(const SuiteOptions& o) {
    SuiteRun run("prop44", o);
    for (const auto& e : concat({random_corpus(o.seed, o.count), file_map_corpus(o)}))
        run.entry(e.name, [&] {
            EntryResult r;
            const auto& s = e.map.structure();
            if (!is_covering_structure(e.map, s)) {
                r.fields["covering_structure"] = false;
                return r;
            }
            std::optional<bool> first;
            bool witnesses = true;
            for (auto m : {OverlayMethod::definition, OverlayMethod::disjoint_images, OverlayMethod::intersection_slices}) {
                auto v = is_overlay_structure(e.map, s, m);
                r.fields["verdicts"][to_string(m)] = v.is_overlay;
                if (!first) first = v.is_overlay;
                r.ok = r.ok && v.is_overlay == *first;
                if (v.witness) witnesses = witnesses && witness_is_genuine(e.map, s, *v.witness);
            }
            r.fields["witnesses_genuine"] = witnesses;
            r.ok = r.ok && witnesses;
            return r;
        });
    return run.finish();
}

inline SuiteReport suite_thm53(const SuiteOptions& o) {
    SuiteRun run("thm53", o);
    for (const auto& e : concat({random_corpus(o.seed, o.count), cycle_grid(), file_map_corpus(o)}))
        run.entry(e.name, [&] {
            EntryResult r;
            const auto& s = e.map.structure();
            if (!is_covering_structure(e.map, s)) {
                r.fields["covering_structure"] = false;
                return r;
            }
            const bool overlay = is_overlay(e.map, s);
            const bool unique = verify_unique_lifting(e.map, s).unique_lifts;
            r.fields["overlay"] = overlay;
            r.fields["unique_lifting"] = unique;
            r.ok = overlay == unique;
            return r;
        });
    return run.finish();
}

inline SuiteReport suite_thm71(const SuiteOptions& o) {
    SuiteRun run("thm71", o);
    for (const auto& e : concat({random_corpus(o.seed, o.count), cycle_grid(), file_map_corpus(o)}))
        run.entry(e.name, [&] {
            EntryResult r;
            const auto& s = e.map.structure();
            if (!is_covering_structure(e.map, s)) {
                r.fields["covering_structure"] = false;
                return r;
            }
            const bool overlay = is_overlay(e.map, s);
            r.fields["overlay"] = overlay;
            for (std::size_t cap : {2, 3}) {
                auto f = induced_map(e.map, s, cap);
                const bool full = is_simplicial_covering(f, NerveCoveringMode::full).is_covering;
                const bool one = is_simplicial_covering(f, NerveCoveringMode::one_skeleton).is_covering;
                const auto key = "cap" + std::to_string(cap);
                r.fields[key] = {{"full", full}, {"one_skeleton", one}};
                r.ok = r.ok && full == overlay && one == overlay;
            }
            return r;
        });
    return run.finish();
}

inline std::vector<MapEntry> random_connected_overlays(std::uint64_t seed, std::size_t count) {
    std::vector<MapEntry> out;
    for (auto& e : random_corpus(seed, count))
        if (is_overlay(e.map, e.map.structure()) && connected(e.map.structure())) out.push_back(std::move(e));
    return out;
}

inline SuiteReport suite_thm63(const SuiteOptions& o) {
    SuiteRun run("thm63", o);
    std::vector<MapEntry> grid;
    for (auto& e : cycle_grid())
        if (is_overlay(e.map, e.map.structure()) && connected(e.map.structure())) grid.push_back(std::move(e));
    for (const auto& e : concat({grid, wedge_corpus(), action_quotient_corpus(), random_connected_overlays(o.seed, o.count),
                                 file_map_corpus(o)}))
        run.entry(e.name, [&] {
            EntryResult r;
            const auto& s = e.map.structure();
            auto reg = is_regular(e.map, s);
            const auto bound = default_loop_bound(e.map);
            auto loop = find_irregular_loop(e.map, s, bound);
            r.fields["regular"] = reg.regular;
            r.fields["deck_order"] = reg.deck_order;
            r.fields["loop_bound"] = bound;
            r.fields["irregular_loop"] = nullptr;
            if (loop) {
                std::vector<std::string> names;
                for (auto y : loop->loop) names.push_back(e.map.codomain()->name(y));
                r.fields["irregular_loop"] = names;
            }
            r.ok = !(reg.regular && loop);
            if (e.expect_regular) {
                r.fields["expected_regular"] = *e.expect_regular;
                r.ok = r.ok && reg.regular == *e.expect_regular && (reg.regular || loop.has_value());
            }
            return r;
        });
    return run.finish();
}

struct MetricCase {
    std::size_t k, n, m, v;
};

inline const std::vector<MetricCase>& metric_cases() {
    static const std::vector<MetricCase> cases{{2, 9, 5, 3}, {2, 5, 3, 2}, {3, 7, 3, 2}, {3, 9, 4, 2},
                                               {2, 11, 5, 3}, {4, 6, 3, 2}, {2, 7, 3, 2}, {1, 6, 3, 2}};
    return cases;
}

inline EntryResult metric_entry(const CoverMap& p, const SetFamily& s, const MetricTable& d, const SetFamily& v) {
    EntryResult r;
    auto pipe = metrize_overlay(p, s, d, v);
    auto iso = check_local_isometry(pipe.map, pipe.total, pipe.base, 1);
    std::size_t nontrivial = 0;
    for (PointIndex y = 0; y < p.codomain()->size(); ++y) nontrivial += pipe.base.space->open_ball(y, 2).count() > 1;
    r.fields["isometry_on_unit_balls"] = iso.holds;
    r.fields["nontrivial_two_balls"] = nontrivial;
    if (!iso.holds) r.fields["failing_point"] = iso.failing_point.value_or("");
    r.ok = iso.holds;
    return r;
}

inline SuiteReport suite_thm54(const SuiteOptions& o) {
    SuiteRun run("thm54", o);
    const Rational eps(Integer(1), Integer(10));
    for (const auto& c : metric_cases()) {
        const auto name = "cycle-" + std::to_string(c.k) + "-" + std::to_string(c.n) + "-" + std::to_string(c.m) +
                          "-v" + std::to_string(c.v);
        run.entry(name, [&] {
            auto inst = gen_cycle_cover(c.k, c.n, c.m, eps);
            const auto& p = inst.map;
            return metric_entry(p, p.structure(), given_metric(p.codomain()), arcs_cover(p.codomain(), c.v));
        });
    }
    for (const auto& e : random_connected_overlays(o.seed, o.count))
        run.entry(e.name, [&] {
            const auto& p = e.map;
            const auto ny = p.codomain()->size();
            DistanceTable base(ny);
            for (PointIndex a = 0; a < ny; ++a)
                for (PointIndex b = a + 1; b < ny; ++b) base.set(a, b, eps * Rational(static_cast<long long>(1 + (a + b) % 2)));
            auto d = attach_metric(*p.codomain(), base, MetricProvenance::given);
            const Cover u = image_cover(p, p.structure());
            const SetFamily v = first_star_unrefined(u, u) ? SetFamily(singletons_cover(p.codomain())) : SetFamily(u);
            const auto balls = ball_cover(remetrize_base(d, u, v), 2);
            if (!connected(refine_overlay_structure(p, p.structure(), balls))) {
                EntryResult r;
                r.fields["applicable"] = false;
                r.fields["reason"] = "structure over the 2-balls is not chain-connected";
                return r;
            }
            return metric_entry(p, p.structure(), d, v);
        });
    return run.finish();
}

inline Cover random_family(const SpacePtr& space, std::mt19937_64& rng, std::size_t max_size) {
    std::vector<CoverElement> els;
    PointSet covered(space->size());
    while (!covered.all()) {
        PointSet s(space->size());
        const auto size = draw(rng, 1, std::min(max_size, space->size()));
        while (s.count() < size) s.set(draw(rng, 0, space->size() - 1));
        covered |= s;
        els.push_back({"c" + std::to_string(els.size()), s});
    }
    return Cover(space, std::move(els));
}

inline GroupAction random_free_action(std::mt19937_64& rng) {
    if (draw(rng, 0, 1) == 0) {
        const auto n = draw(rng, 3, 12);
        std::vector<std::size_t> ks;
        for (std::size_t k = 1; k < n; ++k)
            if (n % k == 0) ks.push_back(k);
        const auto k = ks[draw(rng, 0, ks.size() - 1)];
        return rotation_action(cycle_space(n), k, n / k);
    }
    static const std::vector<FiniteGroup> groups{cyclic_group(6), cyclic_group(8), dihedral_group(3), dihedral_group(4)};
    const auto& g = groups[draw(rng, 0, groups.size() - 1)];
    auto subs = subgroups(g);
    subs.pop_back();
    return right_multiplication_action(g, subs[draw(rng, 0, subs.size() - 1)]);
}

inline SuiteReport suite_prop33(const SuiteOptions& o) {
    SuiteRun run("prop33", o);
    std::vector<ActionEntry> corpus = action_corpus();
    for (auto& e : file_action_corpus(o)) corpus.push_back(std::move(e));
    std::mt19937_64 rng(o.seed);
    for (std::size_t i = 0; i < o.count; ++i) {
        auto a = random_free_action(rng);
        auto u = random_family(a.space(), rng, draw(rng, 1, 4));
        corpus.push_back({"random-" + padded(i), std::move(a), std::move(u)});
    }
    for (const auto& e : corpus)
        run.entry(e.name, [&] {
            EntryResult r;
            const bool def = is_overlay_action(e.action, e.cover, ActionOverlayMethod::def31).is_overlay;
            const bool pair = is_overlay_action(e.action, e.cover, ActionOverlayMethod::prop33b).is_overlay;
            const auto v = saturate(e.action, e.cover);
            const bool projection = is_overlay(quotient(e.action).projection, v);
            const bool evenly = pairwise_unions_evenly_covered(e.action, v);
            r.fields["def31"] = def;
            r.fields["prop33b"] = pair;
            r.fields["projection_overlay"] = projection;
            r.fields["pairwise_evenly_covered"] = evenly;
            r.ok = def == pair && projection == def && (!evenly || def);
            return r;
        });
    return run.finish();
}

inline std::vector<std::pair<std::string, FiniteGroup>> prop35_groups() {
    std::vector<std::pair<std::string, FiniteGroup>> out;
    for (std::size_t n = 1; n <= 16; ++n) out.push_back({"Z" + std::to_string(n), cyclic_group(n)});
    out.push_back({"D4", dihedral_group(4)});
    return out;
}

inline std::string subgroup_label(const FiniteGroup& g, const GroupSet& h) {
    std::string out = "{";
    for (auto x : members(h)) out += (out.size() > 1 ? "," : "") + g.name(x);
    return out + "}";
}

/// Every subgroup H and every symmetric U containing 1: for normal H the
/// translates {U g} must be an overlay structure whenever U^4 & H = {1};
/// non-normal subgroups are reported as data only.
inline SuiteReport suite_prop35(const SuiteOptions& o) {
    SuiteRun run("prop35", o);
    for (const auto& [gname, g] : prop35_groups()) {
        const auto neighborhoods = symmetric_identity_neighborhoods(g);
        for (const auto& h : subgroups(g))
            run.entry(gname + "/" + subgroup_label(g, h), [&] {
                EntryResult r;
                std::size_t condition = 0, condition_overlays = 0, other_overlays = 0;
                const bool normal = is_normal(g, h);
                for (const auto& u : neighborhoods) {
                    auto rep = coset_overlay_structure(g, h, u);
                    if (rep.fourth_power_condition) {
                        ++condition;
                        condition_overlays += rep.is_overlay;
                    } else {
                        other_overlays += rep.is_overlay;
                    }
                }
                r.fields["normal"] = normal;
                r.fields["neighborhoods"] = neighborhoods.size();
                r.fields["fourth_power_condition"] = condition;
                r.fields["overlays_under_condition"] = condition_overlays;
                r.fields["overlays_without_condition"] = other_overlays;
                r.ok = !normal || condition_overlays == condition;
                return r;
            });
    }
    return run.finish();
}

inline EntryResult lifted_group_entry(const CoverMap& p, const SetFamily& s, const FiniteGroup& y, const GroupSet& u,
                                      PointIndex x0, const FiniteGroup& expected) {
    EntryResult r;
    auto lifted = lift_group_structure(p, s, y, u, x0);
    const bool iso = lifted.group.size() <= 20 && find_isomorphism(lifted.group, expected).has_value();
    const bool hom = is_homomorphism(lifted.group, y, lifted.homomorphism);
    r.fields["order"] = lifted.group.size();
    r.fields["isomorphic_to_expected"] = iso;
    r.fields["homomorphism"] = hom;
    r.fields["kernel_size"] = lifted.kernel.count();
    r.fields["translated_loops_checked"] = lifted.loops_checked;
    r.ok = iso && hom && lifted.kernel == p.fiber(y.identity());
    return r;
}

inline SuiteReport suite_thm64(const SuiteOptions& o) {
    SuiteRun run("thm64", o);
    auto centered = [](const FiniteGroup& z) {
        GroupSet u(z.size());
        for (auto k : {std::size_t{0}, std::size_t{1}, z.size() - 1}) u.set(z.index_of(std::to_string(k % z.size())));
        return u;
    };
    for (auto [total, base] : std::vector<std::pair<std::size_t, std::size_t>>{{10, 5}, {18, 9}, {15, 5}, {12, 6}, {14, 7}, {20, 5}})
        run.entry("cycle-" + std::to_string(total) + "-" + std::to_string(base), [&] {
            auto p = pmod(total, base);
            auto y = cyclic_group(base);
            return lifted_group_entry(p, arcs_cover(p.domain(), 3), y, centered(y), p.domain()->index_of("0"),
                                      cyclic_group(total));
        });
    struct RoundTrip { std::string name; FiniteGroup g; std::vector<std::string> h, u; };
    const std::vector<RoundTrip> trips{{"coset-Z12/{0,6}", cyclic_group(12), {"0", "6"}, {"11", "0", "1"}},
                                       {"coset-Z20/{0,10}", cyclic_group(20), {"0", "10"}, {"19", "0", "1"}},
                                       {"coset-D3/{r0}", dihedral_group(3), {"r0"}, {"r0", "s0", "s1"}},
                                       {"coset-D4/{r0}", dihedral_group(4), {"r0"}, {"r0", "s0", "s1"}}};
    for (const auto& t : trips)
        run.entry(t.name, [&] {
            const auto h = group_set(t.g, t.h), u = group_set(t.g, t.u);
            auto rep = coset_overlay_structure(t.g, h, u);
            ensure(rep.is_overlay, "coset cover of the round trip is not an overlay");
            auto q = quotient_group(t.g, h);
            return lifted_group_entry(rep.quotient_map, rep.cover, q.group, rep.quotient_map.image(u), t.g.identity(), t.g);
        });
    return run.finish();
}

inline SuiteReport suite_cor72(const SuiteOptions& o) {
    SuiteRun run("cor72", o);
    std::vector<MapEntry> corpus;
    for (auto& e : concat({random_corpus(o.seed, o.count), cycle_grid(), wedge_corpus(), action_quotient_corpus(),
                           file_map_corpus(o)}))
        if (is_overlay(e.map, e.map.structure())) corpus.push_back(std::move(e));
    for (const auto& e : corpus)
        run.entry(e.name, [&] {
            EntryResult r;
            auto rep = verify_pullback(e.map, e.map.structure());
            bool counts = true;
            for (const auto& pt : rep.points) counts = counts && pt.solutions == pt.fiber_size && pt.fiber_matches;
            r.fields["holds"] = rep.holds;
            r.fields["partition_exact"] = rep.partition_exact;
            r.fields["commutes"] = rep.commutes;
            r.fields["no_shared_images"] = rep.no_shared_images;
            r.fields["solutions_match_fibers"] = counts;
            r.ok = rep.holds && counts;
            return r;
        });
    return run.finish();
}

} // namespace detail

inline SuiteReport run_suite(const std::string& name, const SuiteOptions& o = {}) {
    if (name == "prop44") return detail::suite_prop44(o);
    if (name == "thm53") return detail::suite_thm53(o);
    if (name == "thm71") return detail::suite_thm71(o);
    if (name == "thm63") return detail::suite_thm63(o);
    if (name == "thm54") return detail::suite_thm54(o);
    if (name == "prop33") return detail::suite_prop33(o);
    if (name == "prop35") return detail::suite_prop35(o);
    if (name == "thm64") return detail::suite_thm64(o);
    if (name == "cor72") return detail::suite_cor72(o);
    throw InputError("unknown suite '" + name + "'");
}

} // namespace fincov
