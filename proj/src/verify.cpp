#include "shrub/verify.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>
#include <sstream>

#include "shrub/canon.hpp"
#include "shrub/interp.hpp"

namespace shrub {

std::string LemmaReport::status() const {
    if (aborted) return "aborted";
    return failed == 0 ? "verified at scale" : "failed";
}

Json LemmaReport::to_json() const {
    Json j;
    j["lemma"] = id;
    j["params"] = params;
    j["instances"] = instances;
    j["passed"] = passed;
    j["failed"] = failed;
    j["status"] = status();
    j["counterexample"] = counterexample;
    if (aborted) j["error"] = error;
    j["seconds"] = seconds;
    return j;
}

std::vector<std::pair<int, int>> random_layer_flips(std::mt19937_64& rng, int t) {
    int pairs = t * (t + 1) / 2;
    std::vector<std::pair<int, int>> out;
    if (pairs <= 63) return layer_pairs_from_mask(t, rng() & ((1ULL << pairs) - 1));
    for (int a = 1; a <= t; ++a)
        for (int b = a; b <= t; ++b)
            if (rng() & 1) out.emplace_back(a, b);
    return out;
}

Graph random_graph(std::mt19937_64& rng, int n, double p) {
    Graph g(n);
    std::bernoulli_distribution coin(p);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    return g;
}

std::vector<std::pair<int, int>> parse_layer_flips(const std::string& text) {
    std::vector<std::pair<int, int>> out;
    std::stringstream ss(text);
    std::string item;
    auto layer = [](const std::string& s) {
        size_t k = s.empty() ? 0 : (s[0] == 'L' || s[0] == 'l' ? 1 : 0);
        try {
            size_t used = 0;
            int v = std::stoi(s.substr(k), &used);
            if (used + k != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw GraphError("bad layer '" + s + "'");
        }
    };
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto colon = item.find(':');
        if (colon == std::string::npos) throw GraphError("flip '" + item + "' must look like L2:L3");
        out.emplace_back(layer(item.substr(0, colon)), layer(item.substr(colon + 1)));
    }
    return out;
}

namespace {

int or_default(int v, int d) { return v >= 0 ? v : d; }

Json flips_json(const std::vector<std::pair<int, int>>& f) {
    Json j = Json::array();
    for (auto [a, b] : f) j.push_back({a, b});
    return j;
}

struct Ctx {
    LemmaReport& rep;
    const VerifyParams& p;
    std::mt19937_64 rng;

    Ctx(LemmaReport& r, const VerifyParams& params) : rep(r), p(params), rng(params.seed) {}

    int count(int full, int quick) const { return p.count >= 0 ? p.count : (p.quick ? quick : full); }

    // Runs one instance; GraphError/FormulaError count as failures, ResourceGuard aborts the lemma.
    template <class F>
    void instance(F&& body, const std::function<Json()>& describe) {
        ++rep.instances;
        std::string err;
        bool ok = false;
        try {
            ok = body();
        } catch (const ResourceGuard&) {
            throw;
        } catch (const std::exception& e) {
            err = e.what();
        }
        if (ok) {
            ++rep.passed;
            return;
        }
        ++rep.failed;
        if (rep.counterexample.is_null()) {
            rep.counterexample = describe();
            if (!err.empty()) rep.counterexample["error"] = err;
        }
    }
};

bool path_with(const Graph& g, int t) { return g.n() == t && is_path_graph(g); }

std::vector<int> range_or(int v, int lo, int hi) {
    std::vector<int> out;
    if (v >= 0) return {v};
    for (int i = lo; i <= hi; ++i) out.push_back(i);
    return out;
}

// ---------------------------------------------------------------- section 4

void p3_cases(Ctx& c) {
    auto p3 = path(3).g;
    for (auto& f : enumerate_flipped_mpt(2, 3))
        c.instance([&] { return contains_induced(f.g, p3).has_value(); },
                   [&] { return Json{{"family", "2P3"}, {"graph", write_graph(f.g)}}; });
    for (auto& f : enumerate_flipped_ht(3))
        c.instance([&] { return contains_induced(f.g, p3).has_value(); },
                   [&] { return Json{{"family", "H3"}, {"graph", write_graph(f.g)}}; });
}

void clean_flipped(Ctx& c) {
    for (int t : range_or(c.p.t, 1, 8))
        for (int mask = 0; mask < 8; ++mask)
            c.instance(
                [&] {
                    auto f = flipped_half_graph(t + 1, mask & 1, mask & 2, mask & 4);
                    auto core = clean_core(f);
                    if (core.coords.t != t || !is_clean_flipped_half_graph(core.g, core.coords)) return false;
                    return t > 5 || contains_induced(f.g, core.g).has_value();
                },
                [&] { return Json{{"t", t}, {"mask", mask}}; });
}

struct PathInstance {
    Graph g;
    int t;
    Json info;
};

std::vector<PathInstance> swimlane_instances(Ctx& c) {
    std::vector<PathInstance> out;
    int n = c.count(200, 20);
    for (int t : range_or(c.p.t, 4, 8))
        for (int k = 0; k < n; ++k) {
            auto flips = random_layer_flips(c.rng, t);
            auto fp = flipped_m_paths(5, t, flips);
            out.push_back({induced_subgraph(fp.g, swimlane_core_subset(fp.coords)).g, t,
                           Json{{"family", "5Pt"}, {"t", t}, {"flips", flips_json(flips)}}});
        }
    return out;
}

std::vector<PathInstance> halfgraph_instances(Ctx& c) {
    std::vector<PathInstance> out;
    for (int t : range_or(c.p.t, 1, 8))
        for (int mask = 0; mask < 8; ++mask) {
            auto core = clean_core(flipped_half_graph(t + 4, mask & 1, mask & 2, mask & 4));
            out.push_back({induced_subgraph(core.g, halfgraph_core_subset(core.coords)).g, t,
                           Json{{"family", "H_{t+4}"}, {"t", t}, {"mask", mask}}});
        }
    return out;
}

void swimlane_interp(Ctx& c) {
    const auto& I = swimlane_interpretation();
    for (auto& inst : swimlane_instances(c))
        c.instance(
            [&] {
                return (int)twin_having(inst.g).size() >= 8 && path_with(apply_interpretation(I, inst.g).g, inst.t);
            },
            [&] { return inst.info; });
}

void hg_interp(Ctx& c) {
    const auto& I = halfgraph_interpretation();
    for (auto& inst : halfgraph_instances(c))
        c.instance(
            [&] { return twin_having(inst.g).size() == 4 && path_with(apply_interpretation(I, inst.g).g, inst.t); },
            [&] { return inst.info; });
}

void combined_interp(Ctx& c) {
    const auto& I = combined_path_interpretation();
    auto all = swimlane_instances(c);
    for (auto& h : halfgraph_instances(c)) all.push_back(h);
    for (auto& inst : all)
        c.instance([&] { return path_with(apply_interpretation(I, inst.g).g, inst.t); }, [&] { return inst.info; });
    for (int n = 1; n <= 3; ++n) {
        int pairs = n * (n - 1) / 2;
        for (int mask = 0; mask < (1 << pairs); ++mask) {
            Graph g(n);
            int k = 0;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v, ++k)
                    if (mask >> k & 1) g.add_edge(u, v);
            c.instance([&] { return apply_interpretation(I, g).g == g; },
                       [&] { return Json{{"graph", write_graph(g)}}; });
        }
    }
}

void three_path(Ctx& c) {
    const auto& T = three_path_transduction();
    int n = c.count(200, 20);
    for (int t : range_or(c.p.t, 3, 8))
        for (int k = 0; k < n; ++k) {
            auto flips = random_layer_flips(c.rng, t);
            c.instance(
                [&] {
                    auto fp = flipped_m_paths(or_default(c.p.m, 3), t, flips);
                    return path_with(apply_transduction(T, fp.g, three_path_coloring(fp.coords)).g, t);
                },
                [&] { return Json{{"t", t}, {"flips", flips_json(flips)}}; });
        }
}

// ---------------------------------------------------------------- witnesses, sc-depth

bool witness_ok(const Graph& g, const Graph& h) {
    auto w = irreducible_witness(g, h);
    auto b = brute_force_witness(g, h);
    const auto& s = w.spec;
    if (s.partition.size() != b.spec.partition.size()) return false;
    if (apply_flip(g, s) != h) return false;
    for (auto& labels : all_witness_partitions(g, h))
        if (!refines(VertexPartition::from_labels(labels), s.partition)) return false;
    for (int a = 0; a < s.partition.size(); ++a) {
        if (s.partition.parts[a].size() == 1 && s.flipped(a, a)) return false;
        for (int q = 0; q < s.partition.size(); ++q) {
            if (a == q) continue;
            int d = w.discerning[a][q];
            if (d < 0 || s.flipped(a, d) == s.flipped(q, d)) return false;
            discerning_part(s, a, q);
        }
    }
    return true;
}

Graph graph_from_mask(int n, unsigned mask) {
    Graph g(n);
    int k = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++k)
            if (mask >> k & 1) g.add_edge(u, v);
    return g;
}

void witness_unique(Ctx& c) {
    if (!c.p.quick)
        for (unsigned gm = 0; gm < 64; ++gm)
            for (unsigned hm = 0; hm < 64; ++hm) {
                auto g = graph_from_mask(4, gm), h = graph_from_mask(4, hm);
                c.instance([&] { return witness_ok(g, h); },
                           [&] { return Json{{"G", write_graph(g)}, {"H", write_graph(h)}}; });
            }
    int n = c.count(500, 50);
    for (int k = 0; k < n; ++k) {
        int size = 5 + (int)(c.rng() % 2);
        auto g = random_graph(c.rng, size), h = random_graph(c.rng, size);
        c.instance([&] { return witness_ok(g, h); },
                   [&] { return Json{{"G", write_graph(g)}, {"H", write_graph(h)}}; });
    }
}

void sc_depth_oracle(Ctx& c) {
    auto fixed = [&](const Graph& g, int want) {
        c.instance([&] { return sc_depth(g).depth == want; },
                   [&] { return Json{{"graph", write_graph(g)}, {"expected", want}}; });
    };
    fixed(Graph(1), 0);
    for (int n = 2; n <= 5; ++n) fixed(Graph(n), 1);
    fixed(path(3).g, 2);
    int n = c.count(300, 30);
    for (int k = 0; k < n; ++k) {
        int size = 1 + (int)(c.rng() % 7);
        auto g = random_graph(c.rng, size);
        std::vector<int> sub, a;
        for (int v = 0; v < size; ++v) {
            if (c.rng() & 1) sub.push_back(v);
            if (c.rng() & 1) a.push_back(v);
        }
        if (sub.empty()) sub.push_back(0);
        c.instance(
            [&] {
                auto r = sc_depth(g);
                if (!replay_trace(g, r.trace)) return false;
                if (sc_depth(induced_subgraph(g, sub).g).depth > r.depth) return false;
                return std::abs(sc_depth(set_complement(g, a)).depth - r.depth) <= 1;
            },
            [&] { return Json{{"graph", write_graph(g)}, {"subset", sub}, {"A", a}}; });
    }
}

// ---------------------------------------------------------------- section 3

// Rooted gadgets around 2m roots, optionally joined root to root by paths of length 2t+2.
struct FlatInstance {
    Graph g;
    std::vector<int> roots;
};

FlatInstance flat_instance(std::mt19937_64& rng, int t, int m) {
    std::vector<std::pair<int, int>> edges;
    std::vector<int> roots;
    int n = 0;
    for (int i = 0; i < 2 * m; ++i) {
        int root = n++;
        roots.push_back(root);
        std::vector<std::pair<int, int>> members{{root, 0}};  // vertex, depth
        int extra = (int)(rng() % (2 * t + 2));
        for (int e = 0; e < extra; ++e) {
            auto [par, d] = members[rng() % members.size()];
            if (d >= t + 1) continue;
            int v = n++;
            edges.emplace_back(par, v);
            members.push_back({v, d + 1});
        }
        if (i > 0 && rng() % 3 == 0) {
            int prev = roots[i - 1];
            for (int s = 0; s < 2 * t + 1; ++s) {
                edges.emplace_back(prev, n);
                prev = n++;
            }
            edges.emplace_back(prev, root);
        }
    }
    return {make_graph(n, edges), roots};
}

void flat_or_pattern_lemma(Ctx& c) {
    int n = c.count(100, 20);
    for (int k = 0; k < n; ++k) {
        int t = or_default(c.p.t, 2 + (int)(c.rng() % 3));
        int m = or_default(c.p.m, 1 + (int)(c.rng() % 3));
        auto inst = flat_instance(c.rng, t, m);
        c.instance(
            [&] {
                auto cert = flat_or_pattern(inst.g, inst.roots, t, m);
                return validate_certificate(inst.g, inst.roots, cert, t, m);
            },
            [&] { return Json{{"graph", write_graph(inst.g)}, {"A", inst.roots}, {"t", t}, {"m", m}}; });
    }
}

PathEmbedding embedding_of(const PatternCoordinates& c) {
    PathEmbedding e(c.m, std::vector<int>(c.t));
    for (int i = 1; i <= c.m; ++i)
        for (int j = 1; j <= c.t; ++j) e[i - 1][j - 1] = c.at(i, j);
    return e;
}

FlipSpec random_spec(std::mt19937_64& rng, int n, int k) {
    std::vector<int> labels(n);
    for (auto& l : labels) l = (int)(rng() % k);
    FlipSpec s(VertexPartition::from_labels(labels));
    for (int a = 0; a < s.partition.size(); ++a)
        for (int b = a; b < s.partition.size(); ++b)
            if (rng() & 1) s.set_flip(a, b);
    return s;
}

void pigeonhole_kflip(Ctx& c) {
    int n = c.count(100, 20);
    for (int it = 0; it < n; ++it) {
        int k = or_default(c.p.k, 2 + (int)(c.rng() % 2));
        int t = or_default(c.p.t, 2 + (int)(c.rng() % 2));
        int m = or_default(c.p.m, 2);
        int s = (m - 1);
        for (int i = 0; i < t; ++i) s *= k;
        ++s;
        auto base = m_paths(s, t);
        auto spec = random_spec(c.rng, base.g.n(), k);
        auto g = apply_flip(base.g, spec);
        c.instance(
            [&] {
                auto out = kflip_pigeonhole_extract(g, embedding_of(base.coords), spec.partition, m);
                if ((int)out.size() != m || !validate_flipped_mpt(g, out)) return false;
                // every chosen path carries the same part sequence
                for (auto& p : out)
                    for (int j = 0; j < t; ++j)
                        if (spec.partition.part_of[p[j]] != spec.partition.part_of[out[0][j]]) return false;
                return true;
            },
            [&] { return Json{{"graph", write_graph(g)}, {"spec", to_json(spec)}, {"m", m}, {"t", t}, {"s", s}}; });
    }
}

void pigeonhole_setcomp(Ctx& c) {
    int n = c.count(100, 20);
    for (int it = 0; it < n; ++it) {
        int t = or_default(c.p.t, 2 + (int)(c.rng() % 2));
        int s = t << t;
        auto flips = random_layer_flips(c.rng, t);
        auto fp = flipped_m_paths(s, t, flips);
        std::vector<int> a;
        for (int v = 0; v < fp.g.n(); ++v)
            if (c.rng() & 1) a.push_back(v);
        auto g = set_complement(fp.g, a);
        c.instance(
            [&] {
                auto out = setcomp_pigeonhole_extract(g, embedding_of(fp.coords), a, t);
                return (int)out.size() == t && validate_flipped_mpt(g, out);
            },
            [&] { return Json{{"t", t}, {"flips", flips_json(flips)}, {"A", a}}; });
    }
}

void pigeonhole_component(Ctx& c) {
    int n = c.count(100, 20);
    for (int it = 0; it < n; ++it) {
        int t = or_default(c.p.t, 2 + (int)(c.rng() % 2));
        int s = t * t + t - 1;
        auto flips = random_layer_flips(c.rng, s);
        auto fp = flipped_m_paths(t, s, flips);
        c.instance(
            [&] {
                auto out = component_pigeonhole_extract(fp.g, embedding_of(fp.coords), t);
                if ((int)out.paths.size() != t || !validate_flipped_mpt(fp.g, out.paths)) return false;
                std::set<int> comp(out.component.begin(), out.component.end());
                for (auto& p : out.paths)
                    for (int v : p)
                        if (!comp.count(v)) return false;
                for (auto& cc : connected_components(fp.g))
                    if (std::set<int>(cc.begin(), cc.end()) == comp) return true;
                return false;
            },
            [&] { return Json{{"t", t}, {"s", s}, {"flips", flips_json(flips)}}; });
    }
}

void pigeonhole_cut(Ctx& c) {
    int n = c.count(100, 20);
    for (int it = 0; it < n; ++it) {
        int t = or_default(c.p.t, 2 + (int)(c.rng() % 2));
        int k = or_default(c.p.k, t == 2 ? 2 + (int)(c.rng() % 2) : 2);
        int tp = t * (t + 1);
        for (int i = 0; i < t; ++i) tp *= k;
        auto spec = random_spec(c.rng, tp, k);
        auto g = apply_flip(path(tp).g, spec);
        c.instance(
            [&] {
                auto out = path_to_swimlane_extract(g, spec, t, k);
                return (int)out.size() == t && validate_flipped_mpt(g, out);
            },
            [&] { return Json{{"t", t}, {"k", k}, {"spec", to_json(spec)}}; });
    }
}

void crossing_path(Ctx& c) {
    int n = c.count(100, 20);
    for (int it = 0; it < n; ++it) {
        auto kind = (CrossingKind)(c.rng() % 3);
        int r = or_default(c.p.r, 1 + (int)(c.rng() % 3));
        int t = or_default(c.p.t, 2 + (int)(c.rng() % (kind == CrossingKind::Rook ? 5 : 4)));
        c.instance(
            [&] {
                Pattern p = kind == CrossingKind::Star     ? star_crossing(r, t)
                            : kind == CrossingKind::Clique ? clique_crossing(r, t)
                                                           : rook(t);
                auto emb = crossing_path_embedding(kind, r, t);
                std::vector<int> order(t);
                std::iota(order.begin(), order.end(), 0);
                return (int)emb.size() == t && is_path_in_order(induced_subgraph(p.g, emb).g, order);
            },
            [&] { return Json{{"kind", (int)kind}, {"r", r}, {"t", t}}; });
    }
}

// ---------------------------------------------------------------- expressiveness

void ef_linear_orders(Ctx& c) {
    for (int q : range_or(c.p.q, 0, 3)) {
        int lo = 1 << q;
        for (int s = lo; s <= lo + 3; ++s)
            for (int t = lo; t <= lo + 3; ++t)
                c.instance([&] { return fo_q_equivalent(linear_order(s), linear_order(t), q); },
                           [&] { return Json{{"q", q}, {"s", s}, {"t", t}}; });
        if (q > 2) continue;
        for (int s = 1; s <= lo + 3; ++s)
            for (int t = s + 1; t <= lo + 3; ++t) {
                auto a = linear_order(s), b = linear_order(t);
                if (fo_q_equivalent(a, b, q)) continue;
                c.instance(
                    [&] {
                        auto phi = find_distinguishing_sentence(a, b, q);
                        return phi && quantifier_rank(*phi) <= q && evaluate(a, *phi) != evaluate(b, *phi);
                    },
                    [&] { return Json{{"q", q}, {"s", s}, {"t", t}, {"check", "distinguishing sentence"}}; });
            }
    }
}

Graph union_of_paths(const std::vector<int>& sizes) {
    Graph g;
    for (int s : sizes) g = disjoint_union(g, path(s).g);
    return g;
}

void phi_even_lemma(Ctx& c) {
    EvalOptions pure;
    pure.native_conn = false;
    for (int t = 1; t <= 12; ++t)
        c.instance(
            [&] {
                bool v = evaluate(path(t).g, phi_even());
                if (t <= 10 && evaluate(path(t).g, phi_even(), {}, pure) != v) return false;
                return v == (t % 2 == 0);
            },
            [&] { return Json{{"formula", "phi_even"}, {"t", t}}; });
    std::vector<std::vector<int>> unions;
    for (int a = 1; a <= 12; ++a) {
        unions.push_back({a});
        for (int b = a; a + b <= 12; ++b) {
            unions.push_back({a, b});
            for (int d = b; a + b + d <= 12; ++d) unions.push_back({a, b, d});
        }
    }
    for (auto& u : unions)
        c.instance(
            [&] {
                auto g = union_of_paths(u);
                bool v = evaluate(g, phi_same_parity());
                if (g.n() <= 10 && !c.p.quick && evaluate(g, phi_same_parity(), {}, pure) != v)
                    return false;
                bool want = true;
                for (int s : u) want = want && (s % 2 == u[0] % 2);
                return v == want;
            },
            [&] { return Json{{"formula", "phi_same_parity"}, {"paths", u}}; });
}

void order_to_path(Ctx& c) {
    for (int t : range_or(c.p.t, 1, 12))
        c.instance(
            [&] {
                auto out = apply_interpretation(order_to_path_interpretation(), linear_order(t)).g;
                std::vector<int> order(t);
                std::iota(order.begin(), order.end(), 0);
                return is_path_in_order(out, order);
            },
            [&] { return Json{{"t", t}}; });
}

void order_to_hstar(Ctx& c) {
    for (int t : range_or(c.p.t, 2, 6))
        for (auto f : Flavor::all())
            c.instance(
                [&] {
                    auto out = apply_interpretation(order_to_hstar_interpretation(f), linear_order(t)).g;
                    if (!isomorphic(out, h_star(t, f).g, 16)) return false;
                    return path_with(apply_interpretation(halfgraph_interpretation(), out).g, t);
                },
                [&] { return Json{{"t", t}, {"flavor", f.name()}}; });
}

void nibble_case(Ctx& c, int q, int m, int t, const std::vector<std::pair<int, int>>& flips, bool need_pointwise,
                 bool need_census, bool need_ef) {
    c.instance(
        [&] {
            auto fp = flipped_m_paths(m, t, flips);
            auto r = verify_nibble_equiv(fp.g, fp.coords, q, need_ef);
            return (!need_pointwise || r.pointwise) && (!need_census || r.census) && (!need_ef || r.ef);
        },
        [&] {
            auto fp = flipped_m_paths(m, t, flips);
            auto r = verify_nibble_equiv(fp.g, fp.coords, q, need_ef);
            return Json{{"q", q}, {"m", m}, {"t", t}, {"flips", flips_json(flips)}, {"report", to_json(r)}};
        });
}

void nibble_equiv(Ctx& c) {
    const auto& p = c.p;
    if (p.q >= 0 || p.m >= 0 || p.t >= 0) {
        int q = or_default(p.q, 1), m = or_default(p.m, 2), t = or_default(p.t, 3);
        if (p.exhaustive) {
            int pairs = t * (t + 1) / 2;
            if (pairs > 20) throw ResourceGuard("exhaustive nibble check limited to t <= 5");
            for (unsigned long long mask = 0; mask < (1ULL << pairs); ++mask)
                nibble_case(c, q, m, t, layer_pairs_from_mask(t, mask), true, true, true);
        } else {
            int n = c.count(20, 5);
            for (int k = 0; k < n; ++k) nibble_case(c, q, m, t, random_layer_flips(c.rng, t), true, true, true);
        }
        return;
    }
    // Default matrix: exhaustive q=1 EF + census, random q=2 EF, and the unflipped q=2 scenario pointwise.
    for (unsigned long long mask = 0; mask < 64; ++mask) nibble_case(c, 1, 2, 3, layer_pairs_from_mask(3, mask), false, true, true);
    int n = c.count(20, 3);
    for (int k = 0; k < n; ++k) nibble_case(c, 2, 9, 9, random_layer_flips(c.rng, 9), false, false, true);
    nibble_case(c, 2, 3, 9, {}, true, true, false);
}

void sep_tpt(Ctx& c) {
    const auto& I = deflip_nibble_interpretation();
    int m = or_default(c.p.m, 9);
    int n = c.count(30, 3);
    for (int t : range_or(c.p.t, 3, 6)) {
        auto plain = m_paths(m, t);
        for (int k = 0; k < n; ++k) {
            auto flips = random_layer_flips(c.rng, t);
            bool rewritten = t == 3 && (k < 3 || !c.p.quick);
            c.instance(
                [&] {
                    auto fp = flipped_m_paths(m, t, flips);
                    for (int i = 1; i <= 2; ++i) {
                        auto nb = nibble(fp.g, fp.coords, i);
                        auto out = apply_interpretation(I, nb.g).g;
                        if (out != nibble(plain.g, plain.coords, i).g) return false;
                        bool direct = evaluate(out, phi_same_parity());
                        if (direct != (i == 1)) return false;
                        if (rewritten && evaluate(nb.g, sep_tpt_sentence()) != direct) return false;
                    }
                    return true;
                },
                [&] { return Json{{"m", m}, {"t", t}, {"flips", flips_json(flips)}}; });
        }
    }
}

ColoredGraph plain(const Graph& g) { return ColoredGraph{g, {}}; }

void hanf_census(Ctx& c) {
    auto p3 = ball_census(plain(path(3).g), 1);
    c.instance(
        [&] {
            std::vector<int> counts;
            for (auto& [k, v] : p3.counts) counts.push_back(v);
            std::sort(counts.begin(), counts.end());
            return counts == std::vector<int>{1, 2};
        },
        [&] { return Json{{"case", "P3 radius 1"}, {"census", to_json(p3)}}; });
    for (int m = 1; m <= 4; ++m)
        for (int t = 1; t <= 6; ++t)
            c.instance(
                [&] {
                    auto one = ball_census(plain(path(t).g), 2), many = ball_census(plain(m_paths(m, t).g), 2);
                    for (auto& [k, v] : one.counts)
                        if (many.counts[k] != m * v) return false;
                    return many.counts.size() == one.counts.size();
                },
                [&] { return Json{{"case", "additivity"}, {"m", m}, {"t", t}}; });
    c.instance(
        [&] {
            auto g1 = plain(disjoint_union(path(4).g, path(6).g)), g2 = plain(m_paths(2, 5).g);
            return hanf_implies_equiv(g1, g2, 1) == HanfVerdict::EquivalentByHanf;
        },
        [&] { return Json{{"case", "P4+P6 vs 2P5, q=1"}}; });
    c.instance(
        [&] { return hanf_implies_equiv(plain(path(3).g), plain(path(4).g), 2) == HanfVerdict::Inconclusive; },
        [&] { return Json{{"case", "P3 vs P4, q=2"}}; });
    int n = c.count(50, 10);
    for (int k = 0; k < n; ++k) {
        int size = 3 + (int)(c.rng() % 8);
        auto g = random_graph(c.rng, size, 0.3);
        std::vector<int> perm(size);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), c.rng);
        c.instance(
            [&] {
                Graph h(size);
                for (auto [u, v] : g.edges()) h.add_edge(perm[u], perm[v]);
                return ball_census(plain(g), 1) == ball_census(plain(h), 1);
            },
            [&] { return Json{{"case", "relabelling"}, {"graph", write_graph(g)}, {"perm", perm}}; });
    }
}

void rewrite_correctness(Ctx& c) {
    struct Combo {
        Logic logic;
        int dim;
    };
    std::vector<Combo> combos{{Logic::FO, 1}, {Logic::FO, 2}, {Logic::MSO, 1}, {Logic::CMSO, 1}};
    int n = c.count(100, 15);
    for (auto combo : combos)
        for (int k = 0; k < n; ++k) {
            RandomFormulaOptions fo;
            fo.logic = combo.logic;
            fo.depth = 4;
            fo.max_quantifiers = 3;
            Interpretation I;
            I.name = "random";
            I.dim = combo.dim;
            for (int i = 1; i <= combo.dim; ++i) {
                I.x.push_back(combo.dim == 1 ? "x" : "x" + std::to_string(i));
                I.y.push_back(combo.dim == 1 ? "y" : "y" + std::to_string(i));
            }
            RandomFormulaOptions dopt = fo;
            dopt.logic = Logic::FO;
            dopt.depth = 2;
            dopt.max_quantifiers = 1;
            I.domain = c.rng() % 4 == 0 ? f_true() : random_formula(c.rng, I.x, dopt);
            std::vector<std::string> xy = I.x;
            xy.insert(xy.end(), I.y.begin(), I.y.end());
            I.edge = random_formula(c.rng, xy, dopt);
            int nfree = (int)(c.rng() % 3);
            std::vector<std::string> fv;
            for (int i = 0; i < nfree; ++i) fv.push_back(i == 0 ? "p" : "q");
            auto phi = random_formula(c.rng, fv, fo);
            int size = combo.dim == 1 ? 2 + (int)(c.rng() % 5) : 2 + (int)(c.rng() % 3);
            auto g = random_graph(c.rng, size);
            c.instance(
                [&] {
                    auto out = apply_interpretation(I, g);
                    auto rw = rewrite_through(I, phi);
                    int N = out.g.n();
                    long long total = 1;
                    for (int i = 0; i < nfree; ++i) total *= N;
                    for (long long code = 0; code < total; ++code) {
                        Assignment a, b;
                        long long rest = code;
                        for (auto& v : fv) {
                            int e = (int)(rest % N);
                            rest /= N;
                            a.elem[v] = e;
                            auto names = tuple_vars(I, v);
                            for (int d = 0; d < I.dim; ++d) b.elem[names[d]] = out.tuples[e][d];
                        }
                        if (evaluate(out.g, phi, a) != evaluate(g, rw, b)) return false;
                    }
                    return true;
                },
                [&] {
                    return Json{{"logic", logic_name(combo.logic)}, {"dim", combo.dim},
                                {"domain", to_string(I.domain)},    {"edge", to_string(I.edge)},
                                {"phi", to_string(phi)},            {"graph", write_graph(g)}};
                });
        }
}

using Runner = void (*)(Ctx&);

const std::vector<std::pair<std::string, Runner>>& runners() {
    static const std::vector<std::pair<std::string, Runner>> r{
        {"p3-cases", p3_cases},
        {"clean-flipped", clean_flipped},
        {"swimlane-interp", swimlane_interp},
        {"hg-interp", hg_interp},
        {"combined-interp", combined_interp},
        {"3pt-transduction", three_path},
        {"witness-unique", witness_unique},
        {"sc-depth-oracle", sc_depth_oracle},
        {"flat-or-pattern", flat_or_pattern_lemma},
        {"pigeonhole-kflip", pigeonhole_kflip},
        {"pigeonhole-setcomp", pigeonhole_setcomp},
        {"pigeonhole-component", pigeonhole_component},
        {"pigeonhole-cut", pigeonhole_cut},
        {"crossing-path", crossing_path},
        {"ef-linear-orders", ef_linear_orders},
        {"phi-even", phi_even_lemma},
        {"order-to-path", order_to_path},
        {"order-to-hstar", order_to_hstar},
        {"nibble-equiv", nibble_equiv},
        {"sep-tpt", sep_tpt},
        {"hanf-census", hanf_census},
        {"rewrite-correctness", rewrite_correctness},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& lemma_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (auto& [id, _] : runners()) out.push_back(id);
        return out;
    }();
    return ids;
}

LemmaReport run_lemma(const std::string& id, const VerifyParams& p) {
    Runner run = nullptr;
    for (auto& [name, r] : runners())
        if (name == id) run = r;
    if (!run) throw std::invalid_argument("unknown lemma id '" + id + "'");
    LemmaReport rep;
    rep.id = id;
    rep.params = {{"seed", p.seed}, {"quick", p.quick}, {"exhaustive", p.exhaustive}};
    for (auto [key, v] : {std::pair{"q", p.q}, {"m", p.m}, {"t", p.t}, {"k", p.k}, {"r", p.r}, {"count", p.count}})
        if (v >= 0) rep.params[key] = v;
    auto start = std::chrono::steady_clock::now();
    Ctx c(rep, p);
    try {
        run(c);
    } catch (const ResourceGuard& e) {
        rep.aborted = true;
        rep.error = e.what();
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::vector<LemmaReport> run_suite(const VerifyParams& p) {
    std::vector<LemmaReport> out;
    for (auto& id : lemma_ids()) out.push_back(run_lemma(id, p));
    return out;
}

}  // namespace shrub
