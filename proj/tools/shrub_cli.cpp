#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "shrub/analysis.hpp"
#include "shrub/canon.hpp"
#include "shrub/interp.hpp"
#include "shrub/io.hpp"
#include "shrub/verify.hpp"
#include "shrub/witness.hpp"

using namespace shrub;

namespace {

constexpr int kExitFail = 1, kExitUsage = 2, kExitGuard = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const Json& j, const std::string& json_path) {
    if (json_path.empty()) {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(json_path);
    if (!out) throw UsageError("cannot write " + json_path);
    out << j.dump(2) << '\n';
}

std::vector<int> parse_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoi(item));
    return out;
}

struct GenerateArgs {
    std::string family, out, flips, flavor = "none";
    int m = 2, t = 3, r = 1, i = 1;
    bool aa = false, bb = false, ab = false;
};

int cmd_generate(const GenerateArgs& a) {
    Graph g;
    Json side;
    auto pattern = [&](const Pattern& p) {
        g = p.g;
        side["coords"] = to_json(p.coords);
    };
    auto flipped = [&](const FlippedPattern& p) {
        g = p.g;
        side["coords"] = to_json(p.coords);
        side["spec"] = to_json(p.spec);
    };
    const auto& f = a.family;
    if (f == "path") pattern(path(a.t));
    else if (f == "mpt") pattern(m_paths(a.m, a.t));
    else if (f == "flipped-mpt") flipped(flipped_m_paths(a.m, a.t, parse_layer_flips(a.flips)));
    else if (f == "half-graph") pattern(half_graph(a.t));
    else if (f == "flipped-half-graph") flipped(flipped_half_graph(a.t, a.aa, a.bb, a.ab));
    else if (f == "clean-half-graph") pattern(clean_flipped_half_graph(a.t, Flavor::parse(a.flavor)));
    else if (f == "star-crossing") pattern(star_crossing(a.r, a.t));
    else if (f == "clique-crossing") pattern(clique_crossing(a.r, a.t));
    else if (f == "rook") pattern(rook(a.t));
    else if (f == "hstar") pattern(h_star(a.t, Flavor::parse(a.flavor)));
    else if (f == "nibble") {
        auto fp = flipped_m_paths(a.m, a.t, parse_layer_flips(a.flips));
        pattern(nibble(fp.g, fp.coords, a.i));
    } else if (f == "linear-order") {
        // pairs u v with u < v; the sidecar names the relation
        auto s = linear_order(a.t);
        g = Graph(s.n);
        for (int u = 0; u < s.n; ++u)
            for (int v = u + 1; v < s.n; ++v) g.add_edge(u, v);
        side["relation"] = "<";
        side["directed"] = "u < v for every listed pair u v";
    } else {
        throw UsageError("unknown family '" + f + "'");
    }
    side["family"] = f;
    if (a.out.empty()) {
        std::cout << write_graph(g);
        std::cout << side.dump() << '\n';
    } else {
        std::ofstream(a.out + ".graph") << write_graph(g);
        std::ofstream(a.out + ".json") << side.dump(2) << '\n';
    }
    return 0;
}

int report_exit(const std::vector<LemmaReport>& reps) {
    bool aborted = false, failed = false;
    for (auto& r : reps) {
        aborted = aborted || r.aborted;
        failed = failed || r.failed > 0;
    }
    return aborted ? kExitGuard : failed ? kExitFail : 0;
}

void print_line(const LemmaReport& r) {
    std::cerr << r.id << ": " << r.status() << " (" << r.passed << "/" << r.instances << ", " << r.seconds << " s)";
    if (r.aborted) std::cerr << " " << r.error;
    std::cerr << '\n';
}

Interpretation load_interpretation(const std::string& name) {
    if (auto p = builtin_interpretation(name)) return *p;
    std::ifstream in(name);
    if (!in) throw UsageError("'" + name + "' is neither a built-in interpretation nor a readable file");
    Json j = Json::parse(in);
    Interpretation I;
    I.name = j.value("name", name);
    I.dim = j.value("dim", 1);
    I.x = j.at("x").get<std::vector<std::string>>();
    I.y = j.at("y").get<std::vector<std::string>>();
    I.domain = parse_formula(j.value("domain", std::string("true")));
    I.edge = parse_formula(j.at("edge").get<std::string>());
    if ((int)I.x.size() != I.dim || (int)I.y.size() != I.dim) throw UsageError("x and y must have dim entries");
    return I;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shrub: flips, patterns, logics and interpretations on small graphs"};
    app.require_subcommand(1);
    std::string json_path;
    uint64_t seed = kDefaultSeed;

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "emit a family member and its coordinates");
    g->add_option("family", gen.family,
                  "path|mpt|flipped-mpt|half-graph|flipped-half-graph|clean-half-graph|star-crossing|"
                  "clique-crossing|rook|hstar|nibble|linear-order")
        ->required();
    g->add_option("--m", gen.m);
    g->add_option("--t", gen.t);
    g->add_option("--r", gen.r);
    g->add_option("--i", gen.i, "nibble index");
    g->add_option("--flips", gen.flips, "layer flips, e.g. L2:L3,L4:L7");
    g->add_option("--flavor", gen.flavor, "none|AA|BB|AABB");
    g->add_flag("--aa", gen.aa);
    g->add_flag("--bb", gen.bb);
    g->add_flag("--ab", gen.ab);
    g->add_option("--out", gen.out, "write <out>.graph and <out>.json");

    VerifyParams vp;
    std::string lemma;
    auto* v = app.add_subcommand("verify", "run one lemma suite");
    v->add_option("lemma", lemma, "lemma id")->required();
    for (auto* sub : {v}) {
        sub->add_option("--q", vp.q);
        sub->add_option("--m", vp.m);
        sub->add_option("--t", vp.t);
        sub->add_option("--k", vp.k);
        sub->add_option("--r", vp.r);
        sub->add_option("--count", vp.count, "instances per parameter setting");
        sub->add_flag("--exhaustive", vp.exhaustive);
    }
    auto* s = app.add_subcommand("suite", "run every lemma suite");
    for (auto* sub : {v, s}) {
        sub->add_flag("--quick", vp.quick);
        sub->add_option("--seed", seed);
        sub->add_option("--json", json_path);
    }
    auto* l = app.add_subcommand("lemmas", "list lemma ids");

    std::string g1, g2;
    auto* w = app.add_subcommand("witness", "irreducible flip witness between two graphs");
    w->add_option("G", g1)->required();
    w->add_option("H", g2)->required();

    std::string iname;
    long long budget = 1LL << 30;
    auto* in = app.add_subcommand("interpret", "apply an interpretation to a graph");
    in->add_option("interpretation", iname, "built-in name or JSON file")->required();
    in->add_option("graph", g1)->required();
    in->add_option("--budget", budget, "evaluation step budget");

    int sc_cap = kScDepthCap;
    auto* sc = app.add_subcommand("scdepth", "exact SC-depth with a decomposition trace");
    sc->add_option("graph", g1)->required();
    sc->add_option("--cap", sc_cap);

    std::string what, roots, family = "mPt";
    int et = 2, em = 2, er = 1, ek = 2, induced_cap = kInducedCap;
    auto* ex = app.add_subcommand("extract", "certified embeddings");
    ex->add_option("what", what, "flat-or-pattern|crossing-path|find-pattern|cut")->required();
    ex->add_option("graph", g1, "input graph (flat-or-pattern, find-pattern, cut)");
    ex->add_option("--roots", roots, "comma separated vertex list");
    ex->add_option("--t", et);
    ex->add_option("--m", em);
    ex->add_option("--r", er);
    ex->add_option("--k", ek);
    ex->add_option("--kind", family, "star|clique|rook for crossing-path, Ht|mPt for find-pattern");
    ex->add_option("--spec", g2, "flip spec JSON for cut");
    ex->add_option("--cap", induced_cap);

    for (auto* sub : {w, in, sc, ex}) sub->add_option("--json", json_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }
    vp.seed = seed;

    try {
        if (*g) return cmd_generate(gen);
        if (*l) {
            for (auto& id : lemma_ids()) std::cout << id << '\n';
            return 0;
        }
        if (*v) {
            auto r = run_lemma(lemma, vp);
            print_line(r);
            emit(r.to_json(), json_path);
            return report_exit({r});
        }
        if (*s) {
            auto reps = run_suite(vp);
            Json j = Json::array();
            for (auto& r : reps) {
                print_line(r);
                j.push_back(r.to_json());
            }
            emit(Json{{"seed", seed}, {"quick", vp.quick}, {"reports", j}}, json_path);
            return report_exit(reps);
        }
        if (*w) {
            auto a = load_graph_file(g1).g, b = load_graph_file(g2).g;
            emit(to_json(irreducible_witness(a, b)), json_path);
            return 0;
        }
        if (*in) {
            auto I = load_interpretation(iname);
            EvalOptions opt;
            opt.budget = budget;
            auto r = apply_interpretation(I, to_structure(load_graph_file(g1)), opt);
            emit(Json{{"interpretation", I.name}, {"graph", write_graph(r.g)}, {"tuples", r.tuples}}, json_path);
            return 0;
        }
        if (*sc) {
            auto gr = load_graph_file(g1).g;
            auto r = sc_depth(gr, sc_cap);
            emit(Json{{"depth", r.depth}, {"trace", to_json(r.trace)}, {"replay", replay_trace(gr, r.trace)}},
                 json_path);
            return 0;
        }
        if (*ex) {
            if (what == "crossing-path") {
                auto kind = family == "star"     ? CrossingKind::Star
                            : family == "clique" ? CrossingKind::Clique
                            : family == "rook"   ? CrossingKind::Rook
                                                 : throw UsageError("--kind must be star, clique or rook");
                emit(Json{{"path", crossing_path_embedding(kind, er, et)}}, json_path);
                return 0;
            }
            if (g1.empty()) throw UsageError(what + " needs a graph file");
            auto gr = load_graph_file(g1).g;
            if (what == "flat-or-pattern") {
                auto a = parse_list(roots);
                auto c = flat_or_pattern(gr, a, et, em);
                bool ok = validate_certificate(gr, a, c, et, em);
                emit(Json{{"certificate", to_json(c)}, {"valid", ok}}, json_path);
                return ok ? 0 : kExitFail;
            }
            if (what == "find-pattern") {
                auto mt = find_flipped_pattern(gr, family, em, et);
                if (!mt) {
                    emit(Json{{"found", false}}, json_path);
                    return kExitFail;
                }
                emit(Json{{"found", true}, {"embedding", mt->embedding}, {"spec", to_json(mt->member.spec)}},
                     json_path);
                return 0;
            }
            if (what == "cut") {
                std::ifstream sf(g2);
                if (!sf) throw UsageError("cut needs --spec <file>");
                auto spec = flip_spec_from_json(Json::parse(sf), gr.n());
                auto paths = path_to_swimlane_extract(gr, spec, et, ek);
                emit(Json{{"paths", paths}, {"valid", validate_flipped_mpt(gr, paths)}}, json_path);
                return 0;
            }
            throw UsageError("unknown extraction '" + what + "'");
        }
    } catch (const ResourceGuard& e) {
        std::cerr << "resource guard: " << e.what() << '\n';
        return kExitGuard;
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
    return 0;
}
