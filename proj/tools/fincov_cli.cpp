#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fincov/fincov.hpp"

using namespace fincov;

namespace {

enum Exit { pass = 0, violated = 1, input_error = 2 };

std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    if (!cur.empty() || !out.empty()) out.push_back(cur);
    return out;
}

std::vector<std::string> point_names(const FiniteSpace& s, const std::vector<PointIndex>& pts) {
    std::vector<std::string> out;
    for (auto x : pts) out.push_back(s.name(x));
    return out;
}

Json witness_json(const CoverMap& p, const OverlayWitness& w) {
    return std::visit(
        [&](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, StarWitness>)
                return {{"kind", "star_not_slice"}, {"point", v.point}, {"star", p.domain()->names_of(v.star)}};
            else if constexpr (std::is_same_v<T, TripleWitness>)
                return {{"kind", "meets_two_over_one_image"}, {"u", v.u}, {"v", v.v}, {"w", v.w}};
            else
                return {{"kind", "intersection_not_slice"}, {"u", v.u}, {"v", v.v}};
        },
        w);
}

Json metric_json(const MetricTable& d) {
    Json pairs = Json::array();
    const auto& s = *d.space;
    for (PointIndex a = 0; a < s.size(); ++a)
        for (PointIndex b = a + 1; b < s.size(); ++b) pairs.push_back({s.name(a), s.name(b), format_rational(d(a, b))});
    return {{"provenance", to_string(d.provenance)}, {"pairs", std::move(pairs)}};
}

void emit(const Json& j, const std::string& out) {
    const auto text = canonical(j);
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    require(f.good(), "cannot write '" + out + "'");
    f << text;
}

/// A loaded instance plus the map and structure a command works on.
struct Target {
    Instance inst;
    const NamedMap* map = nullptr;
    std::optional<SetFamily> family;

    const SetFamily& structure() const { return *family; }
};

Target load_target(const std::string& file, const std::optional<std::string>& map_name,
                   const std::optional<std::string>& cover_name) {
    Target t{load_instance(file), nullptr, std::nullopt};
    t.map = &t.inst.pick_map(map_name);
    if (cover_name) {
        const auto& c = t.inst.cover(*cover_name);
        require(c.space == t.map->domain, "cover '" + *cover_name + "' is not a cover of '" + t.map->domain + "'");
        t.family = c.cover;
    } else {
        require(t.map->map.has_structure(), "map has no structure; name a cover with --cover");
        t.family = t.map->map.structure();
    }
    return t;
}

struct Common {
    std::string file;
    std::optional<std::string> map, cover;
    std::string out;
};

void add_common(CLI::App* c, Common& o, bool with_cover = true) {
    c->add_option("file", o.file, "instance JSON file")->required();
    c->add_option("--map", o.map, "map to use when the instance has several");
    if (with_cover) c->add_option("--cover", o.cover, "structure cover overriding the map's own");
    c->add_option("-o,--out", o.out, "write JSON here instead of stdout");
}

int cmd_check(const std::string& property, const std::string& method, std::size_t max_len, const Common& o) {
    auto t = load_target(o.file, o.map, o.cover);
    const auto& p = t.map->map;
    Json j = {{"property", property}};
    bool holds = false;
    if (property == "covering") {
        holds = is_covering_structure(p, t.structure());
        j["covering_structure"] = holds;
    } else if (property == "overlay") {
        if (!is_covering_structure(p, t.structure())) {
            j["covering_structure"] = false;
            j["overlay"] = false;
        } else {
            auto v = is_overlay_structure(p, t.structure(), parse_overlay_method(method));
            holds = v.is_overlay;
            j["covering_structure"] = true;
            j["method"] = to_string(v.method);
            j["overlay"] = holds;
            j["witness"] = v.witness ? witness_json(p, *v.witness) : Json(nullptr);
        }
    } else {
        auto r = is_regular(p, t.structure());
        holds = r.regular;
        j["regular"] = r.regular;
        j["deck_order"] = r.deck_order;
        j["fiber_size"] = r.fiber_size;
        const auto bound = max_len ? max_len : default_loop_bound(p);
        auto loop = find_irregular_loop(p, t.structure(), bound);
        j["loop_bound"] = bound;
        if (loop) {
            j["irregular_loop"] = {{"loop", point_names(*p.codomain(), loop->loop)},
                                   {"closed_lift", point_names(*p.domain(), loop->closed_lift)},
                                   {"open_lift", point_names(*p.domain(), loop->open_lift)}};
        } else {
            j["irregular_loop"] = nullptr;
        }
    }
    j["holds"] = holds;
    emit(j, o.out);
    return holds ? pass : violated;
}

int cmd_lift(const std::string& chain, const std::string& start, const Common& o) {
    auto t = load_target(o.file, o.map, o.cover);
    const auto& p = t.map->map;
    if (chain.empty()) {
        auto v = verify_unique_lifting(p, t.structure());
        Json j = {{"unique_lifting", v.unique_lifts}};
        if (v.witness)
            j["witness"] = {{"y0", p.codomain()->name(v.witness->y0)},
                            {"y1", p.codomain()->name(v.witness->y1)},
                            {"x0", p.domain()->name(v.witness->x0)},
                            {"lifts", v.witness->lifts}};
        emit(j, o.out);
        return v.unique_lifts ? pass : violated;
    }
    require(!start.empty(), "--start is required with --chain");
    const Cover u = image_cover(p, t.structure());
    auto c = Chain::from_names(u, split_names(chain));
    auto lifts = lift_chain(p, t.structure(), c, p.domain()->index_of(start));
    Json all = Json::array();
    for (const auto& l : lifts) all.push_back(point_names(*p.domain(), l.points));
    emit({{"chain", c.names()}, {"start", start}, {"lifts", std::move(all)}}, o.out);
    return lifts.size() == 1 ? pass : violated;
}

int cmd_nerve(bool dot, std::optional<std::size_t> cap, bool uncapped, const Common& o) {
    auto inst = load_instance(o.file);
    if (!o.cover)
        require(inst.covers.size() == 1, "instance has " + std::to_string(inst.covers.size()) + " covers; name one with --cover");
    const auto& c = o.cover ? inst.cover(*o.cover).cover : inst.covers.begin()->second.cover;
    auto k = build_nerve(c, uncapped ? std::nullopt : std::optional<std::size_t>(cap.value_or(default_dimension_cap)));
    if (dot) {
        const auto text = to_dot(k);
        if (o.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(o.out, std::ios::binary);
            f << text;
        }
    } else {
        emit(nerve_to_json(k), o.out);
    }
    return pass;
}

int cmd_deck(const Common& o) {
    auto t = load_target(o.file, o.map, o.cover);
    const auto& p = t.map->map;
    auto d = deck_group(p, t.structure());
    const auto& g = d.action.group();
    Json perms = Json::object();
    for (GroupElement e = 0; e < g.size(); ++e) perms[g.name(e)] = point_names(*p.domain(), d.action.perm(e));
    auto r = is_regular(p, t.structure());
    emit({{"base_point", p.domain()->name(d.base_point)},
          {"order", g.size()},
          {"group", {{"elements", g.space()->points()}, {"table", g.name_table()}}},
          {"perm", std::move(perms)},
          {"regular", r.regular}},
         o.out);
    return pass;
}

int cmd_quotient(const std::optional<std::string>& action_name, const Common& o) {
    auto inst = load_instance(o.file);
    const auto& a = inst.pick_action(action_name);
    require(is_free(a.action), "action is not free");
    auto q = quotient(a.action);
    Instance out;
    out.add_space(a.space, a.action.space());
    out.add_space(a.space + "/" + a.group, q.space);
    Json verdicts = nullptr;
    bool holds = true;
    std::optional<std::string> structure;
    if (o.cover) {
        const auto& c = inst.cover(*o.cover);
        require(c.space == a.space, "cover '" + *o.cover + "' is not a cover of '" + a.space + "'");
        const bool def = is_overlay_action(a.action, c.cover, ActionOverlayMethod::def31).is_overlay;
        const bool pair = is_overlay_action(a.action, c.cover, ActionOverlayMethod::prop33b).is_overlay;
        verdicts = {{"def31", def}, {"prop33b", pair}};
        holds = def;
        structure = a.group + "." + *o.cover;
        out.add_cover(*structure, a.space, saturate(a.action, c.cover));
    }
    out.add_map("projection", a.space, a.space + "/" + a.group, q.projection.mapping(), structure);
    emit({{"instance", to_json(out)}, {"overlay_action", verdicts}}, o.out);
    return holds ? pass : violated;
}

int cmd_metric(const std::optional<std::string>& refine, const std::string& radius, const Common& o) {
    auto t = load_target(o.file, o.map, o.cover);
    const auto& p = t.map->map;
    require(p.codomain()->has_metric(), "codomain '" + t.map->codomain + "' has no metric");
    const Cover u = image_cover(p, t.structure());
    auto choose = [&]() -> SetFamily {
        if (!refine) return first_star_unrefined(u, u) ? SetFamily(singletons_cover(p.codomain())) : SetFamily(u);
        const auto& c = t.inst.cover(*refine);
        require(c.space == t.map->codomain, "cover '" + *refine + "' is not a cover of '" + t.map->codomain + "'");
        return c.cover;
    };
    const SetFamily v = choose();
    auto pipe = metrize_overlay(p, t.structure(), given_metric(p.codomain()), v);
    const auto r = parse_rational(radius);
    auto iso = check_local_isometry(pipe.map, pipe.total, pipe.base, r);
    emit({{"base", metric_json(pipe.base)},
          {"total", metric_json(pipe.total)},
          {"structure", cover_to_json(pipe.structure)},
          {"radius", format_rational(r)},
          {"local_isometry", iso.holds},
          {"failing_point", iso.failing_point ? Json(*iso.failing_point) : Json(nullptr)},
          {"reason", iso.reason}},
         o.out);
    return iso.holds ? pass : violated;
}

int cmd_group_lift(const std::optional<std::string>& group_name, const std::string& u_names, const std::string& x0,
                   const Common& o) {
    auto t = load_target(o.file, o.map, o.cover);
    const auto& p = t.map->map;
    const FiniteGroup* y = nullptr;
    if (group_name) {
        y = &t.inst.group(*group_name);
    } else {
        require(t.inst.groups.size() == 1, "instance has " + std::to_string(t.inst.groups.size()) + " groups; name one with --group");
        y = &t.inst.groups.begin()->second;
    }
    auto lifted = lift_group_structure(p, t.structure(), *y, group_set(*y, split_names(u_names)), p.domain()->index_of(x0));
    Json hom = Json::array();
    for (GroupElement e = 0; e < lifted.group.size(); ++e)
        hom.push_back({lifted.group.name(e), y->name(lifted.homomorphism[e])});
    emit({{"group", {{"elements", lifted.group.space()->points()}, {"table", lifted.group.name_table()}}},
          {"homomorphism", std::move(hom)},
          {"kernel", p.domain()->names_of(lifted.kernel)},
          {"translated_loops_checked", lifted.loops_checked}},
         o.out);
    return pass;
}

Instance cycle_instance(std::size_t k, std::size_t n, std::size_t m, const std::optional<std::string>& scale) {
    std::optional<Rational> eps;
    if (scale) eps = parse_rational(*scale);
    auto c = gen_cycle_cover(k, n, m, eps);
    Instance inst;
    inst.add_space("X", c.map.domain());
    inst.add_space("Y", c.map.codomain());
    inst.add_cover("S", "X", c.map.structure());
    inst.add_map("p", "X", "Y", c.map.mapping(), "S");
    inst.checks = Json::array({{{"check", "covering"}, {"map", "p"}, {"expect", c.expect_covering}},
                               {{"check", "overlay"}, {"map", "p"}, {"expect", c.expect_overlay}}});
    return inst;
}

Instance wedge_instance(const std::string& a, const std::string& b, std::size_t k) {
    auto w = gen_wedge_cover(parse_cycles(a, k), parse_cycles(b, k));
    Instance inst;
    inst.add_space("X", w.map.domain());
    inst.add_space("Y", w.map.codomain());
    inst.add_cover("S", "X", w.map.structure());
    inst.add_map("p", "X", "Y", w.map.mapping(), "S");
    inst.checks = Json::array({{{"check", "overlay"}, {"map", "p"}, {"expect", true}},
                               {{"check", "regular"}, {"map", "p"}, {"expect", is_regular(w.map, w.map.structure()).regular}}});
    return inst;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::size_t count, const std::vector<std::string>& corpus,
               const std::string& out) {
    SuiteOptions opts{seed, count, {}};
    for (const auto& f : corpus) opts.files.emplace_back(f, load_instance(f));
    const auto start = std::chrono::steady_clock::now();
    auto report = run_suite(suite, opts);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(report.json, out);
    std::cerr << suite << ": " << report.entries << " entries, " << report.violations << " violations, " << report.errors
              << " errors, " << secs << " s\n";
    return report.exit_code();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Covering maps, overlay structures and group actions on finite spaces"};
    app.require_subcommand(1);
    std::function<int()> run;

    Common check_o;
    std::string property, method = "definition";
    std::size_t max_len = 0;
    auto* check = app.add_subcommand("check", "decide covering, overlay or regularity for a map and structure");
    check->add_option("property", property, "covering|overlay|regular")
        ->required()
        ->check(CLI::IsMember({"covering", "overlay", "regular"}));
    add_common(check, check_o);
    check->add_option("--method", method, "overlay method")->check(CLI::IsMember({"definition", "prop44b", "prop44c"}));
    check->add_option("--max-len", max_len, "irregular loop search bound (default 2|X|)");
    check->callback([&] { run = [&] { return cmd_check(property, method, max_len, check_o); }; });

    Common lift_o;
    std::string chain, start;
    auto* lift = app.add_subcommand("lift", "lift a chain, or check unique lifting of all chains");
    add_common(lift, lift_o);
    lift->add_option("--chain", chain, "comma separated points of Y");
    lift->add_option("--start", start, "starting point in X");
    lift->callback([&] { run = [&] { return cmd_lift(chain, start, lift_o); }; });

    Common nerve_o;
    bool dot = false, as_json = false, uncapped = false;
    std::optional<std::size_t> cap;
    auto* nerve = app.add_subcommand("nerve", "export the nerve of a cover");
    nerve->add_option("file", nerve_o.file, "instance JSON file")->required();
    nerve->add_option("--cover", nerve_o.cover, "cover to use when the instance has several");
    nerve->add_option("-o,--out", nerve_o.out, "write here instead of stdout");
    auto* dot_flag = nerve->add_flag("--dot", dot, "DOT 1-skeleton");
    auto* json_flag = nerve->add_flag("--json", as_json, "full simplex list");
    dot_flag->excludes(json_flag);
    nerve->add_option("--cap", cap, "dimension cap (default 3)");
    nerve->add_flag("--uncapped", uncapped, "no dimension cap");
    nerve->callback([&] {
        if (!dot && !as_json) throw CLI::ValidationError("nerve", "one of --dot or --json is required");
        run = [&] { return cmd_nerve(dot, cap, uncapped, nerve_o); };
    });

    Common deck_o;
    auto* deck = app.add_subcommand("deck", "deck transformation group of an overlay");
    add_common(deck, deck_o);
    deck->callback([&] { run = [&] { return cmd_deck(deck_o); }; });

    Common quot_o;
    std::optional<std::string> action_name;
    auto* quot = app.add_subcommand("quotient", "orbit space of a free action, with overlay verdicts for a cover");
    add_common(quot, quot_o, false);
    quot->add_option("--action", action_name, "action to use when the instance has several");
    quot->add_option("--cover", quot_o.cover, "cover of the acted-on space to saturate and check");
    quot->callback([&] { run = [&] { return cmd_quotient(action_name, quot_o); }; });

    Common metric_o;
    std::optional<std::string> refine;
    std::string radius = "1";
    auto* metric = app.add_subcommand("metric", "remetrize the base, build the chain metric, check local isometry");
    add_common(metric, metric_o);
    metric->add_option("--refine", refine, "star refinement V of p(S), a cover of the codomain");
    metric->add_option("--radius", radius, "isometry radius, rational");
    metric->callback([&] { run = [&] { return cmd_metric(refine, radius, metric_o); }; });

    Common gl_o;
    std::optional<std::string> group_name;
    std::string u_names, x0;
    auto* gl = app.add_subcommand("group-lift", "lift a group structure from the base to the total space");
    add_common(gl, gl_o);
    gl->add_option("--group", group_name, "group on the codomain");
    gl->add_option("--u", u_names, "comma separated identity neighborhood U")->required();
    gl->add_option("--x0", x0, "point of X over the identity")->required();
    gl->callback([&] { run = [&] { return cmd_group_lift(group_name, u_names, x0, gl_o); }; });

    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "generate instances");
    gen->require_subcommand(1);
    gen->add_option("-o,--out", gen_out, "write here instead of stdout");
    std::size_t gk = 2, gn = 3, gm = 3, wk = 3;
    std::optional<std::string> scale;
    auto* cyc = gen->add_subcommand("cycle", "cyc(kn) -> cyc(n) with arcs(kn, m)");
    cyc->add_option("--k", gk)->required();
    cyc->add_option("--n", gn)->required();
    cyc->add_option("--m", gm)->required();
    cyc->add_option("--scale", scale, "attach graph metrics scaled by this rational");
    cyc->callback([&] { run = [&] { emit(to_json(cycle_instance(gk, gn, gm, scale)), gen_out); return int(pass); }; });
    std::string sa, sb;
    auto* wedge = gen->add_subcommand("wedge", "k-sheeted cover of the figure eight");
    wedge->add_option("--a", sa, "sheet permutation of loop a, cycle notation")->required();
    wedge->add_option("--b", sb, "sheet permutation of loop b, cycle notation")->required();
    wedge->add_option("--k", wk, "number of sheets")->required();
    wedge->callback([&] { run = [&] { emit(to_json(wedge_instance(sa, sb, wk)), gen_out); return int(pass); }; });

    std::string suite, verify_out;
    std::uint64_t seed = 1;
    std::size_t count = 200;
    std::vector<std::string> corpus;
    auto* verify = app.add_subcommand("verify", "run a cross-check suite");
    verify->add_option("--suite", suite)->required()->check(CLI::IsMember(suite_names()));
    verify->add_option("--seed", seed);
    verify->add_option("--count", count);
    verify->add_option("--corpus", corpus, "extra instance files")->check(CLI::ExistingFile);
    verify->add_option("-o,--out", verify_out, "write the report here instead of stdout");
    verify->callback([&] { run = [&] { return cmd_verify(suite, seed, count, corpus, verify_out); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? pass : input_error;
    }
    try {
        return run();
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return input_error;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return violated;
    }
}
