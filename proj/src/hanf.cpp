#include "shrub/hanf.hpp"

#include <algorithm>
#include <thread>

#include "shrub/logic.hpp"

namespace shrub {

Structure marked_ball(const ColoredGraph& g, int v, int r) {
    if (v < 0 || v >= g.g.n()) throw GraphError("marked_ball: vertex out of range");
    auto d = distances(g.g, v);
    std::vector<int> vs{v};
    for (int u = 0; u < g.g.n(); ++u)
        if (u != v && d[u] <= r) vs.push_back(u);
    Structure s = induced_subgraph(to_structure(g), vs);
    s.sig.constant = true;
    s.constant = 0;
    return s;
}

std::string ball_type(const ColoredGraph& g, int v, int r, int cap) {
    try {
        return to_hex(canonical_form(marked_ball(g, v, r), cap));
    } catch (const CanonOverflow& e) {
        throw CanonOverflow("ball of vertex " + std::to_string(v) + " at radius " + std::to_string(r) +
                            " is too large: " + e.what());
    }
}

BallCensus ball_census(const ColoredGraph& g, int r, int cap) {
    int n = g.g.n();
    std::vector<std::string> types(n);
    int workers = std::max(1, std::min<int>(n / 16, (int)std::thread::hardware_concurrency()));
    std::vector<std::exception_ptr> errs(workers);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (int v = w; v < n; v += workers) types[v] = ball_type(g, v, r, cap);
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    BallCensus c;
    c.radius = r;
    for (auto& t : types) ++c.counts[t];
    return c;
}

int hanf_radius(int q) {
    if (q < 0) throw GraphError("quantifier rank must be non-negative");
    if (q == 0) return -1;
    int r = 1;
    for (int i = 1; i < q; ++i) r *= 3;
    return r;
}

std::string verdict_name(HanfVerdict v) {
    return v == HanfVerdict::EquivalentByHanf ? "equivalent-by-hanf" : "inconclusive";
}

HanfVerdict hanf_implies_equiv(const ColoredGraph& g1, const ColoredGraph& g2, int q, int cap) {
    int r = hanf_radius(q);
    if (r < 0) return g1.g.n() == g2.g.n() ? HanfVerdict::EquivalentByHanf : HanfVerdict::Inconclusive;
    return ball_census(g1, r, cap) == ball_census(g2, r, cap) ? HanfVerdict::EquivalentByHanf
                                                                : HanfVerdict::Inconclusive;
}

ColoredNibble layer_color_and_deflip(const Graph& g, const PatternCoordinates& c, int i) {
    if (c.kind != PatternKind::MPt || (int)c.coord.size() != g.n())
        throw GraphError("layer_color_and_deflip needs mPt coordinates for every vertex");
    std::vector<std::vector<int>> emb(c.m, std::vector<int>(c.t));
    for (int p = 1; p <= c.m; ++p)
        for (int j = 1; j <= c.t; ++j) emb[p - 1][j - 1] = c.at(p, j);
    auto spec = match_flipped_mpt(g, emb);
    if (!spec) throw GraphError("precondition: graph is not a layer flip of mP_t");
    // match_flipped_mpt speaks about layer indices; lift to vertices.
    std::vector<int> label(g.n());
    for (int v = 0; v < g.n(); ++v) label[v] = c.coord[v][1] - 1;
    FlipSpec vs(VertexPartition::from_labels(label));
    for (int a = 0; a < c.t; ++a)
        for (int b = a; b < c.t; ++b)
            if (spec->flipped(spec->partition.part_of[a], spec->partition.part_of[b]))
                vs.set_flip(vs.partition.part_of[c.at(1, a + 1)], vs.partition.part_of[c.at(1, b + 1)]);
    Graph plain = apply_flip(g, vs);
    auto nb = nibble(plain, c, i);
    ColoredNibble out;
    out.g.g = nb.g;
    out.g.colors.assign(c.t, Bits(nb.g.n()));
    for (int v = 0; v < nb.g.n(); ++v) out.g.colors[nb.coords.coord[v][1] - 1].set(v);
    out.coords = nb.coords;
    return out;
}

std::map<std::pair<int, int>, std::pair<int, int>> nibble_bijection(int m, int t, int q) {
    long long need = 1;
    for (int i = 0; i < q; ++i) need *= 3;
    if (q < 1 || m < 2 || t < need) throw GraphError("nibble_bijection needs q >= 1, m >= 2, t >= 3^q");
    std::map<std::pair<int, int>, std::pair<int, int>> f;
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= t; ++j) {
            if (i == 1 && (j == 1 || j == t)) continue;
            bool right = 2LL * j >= need;
            if (i == 1 && right) f[{i, j}] = {2, j};
            else if (i == 2 && right) f[{i, j}] = {1, j};
            else f[{i, j}] = {i, j};
        }
    return f;
}

NibbleReport verify_nibble_equiv(const Graph& g, const PatternCoordinates& c, int q, bool run_ef) {
    long long need = 1;
    for (int i = 0; i < q; ++i) need *= 3;
    if (c.m < 2 || c.t < need || c.t < 3) throw GraphError("verify_nibble_equiv needs m >= 2, t >= max(3, 3^q)");
    NibbleReport rep;
    rep.q = q;
    rep.m = c.m;
    rep.t = c.t;
    rep.radius = hanf_radius(q);
    auto g1 = layer_color_and_deflip(g, c, 1);
    auto g2 = layer_color_and_deflip(g, c, 2);
    if (rep.radius < 0) {
        rep.pointwise = rep.census = g1.g.g.n() == g2.g.g.n();
    } else {
        auto f = nibble_bijection(c.m, c.t, q);
        rep.census1 = ball_census(g1.g, rep.radius);
        rep.census2 = ball_census(g2.g, rep.radius);
        rep.census = rep.census1 == rep.census2;
        rep.pointwise = true;
        for (int v = 0; v < g1.g.g.n() && rep.pointwise; ++v) {
            auto co = g1.coords.coord[v];
            auto img = f.at({co[0], co[1]});
            int w = g2.coords.at(img.first, img.second);
            if (ball_type(g1.g, v, rep.radius) != ball_type(g2.g, w, rep.radius)) {
                rep.pointwise = false;
                rep.first_mismatch = v;
            }
        }
        if (rep.pointwise && !rep.census) throw std::logic_error("pointwise ball equality without census equality");
    }
    if (run_ef) {
        auto n1 = nibble(g, c, 1), n2 = nibble(g, c, 2);
        rep.ef = fo_q_equivalent(to_structure(n1.g), to_structure(n2.g), q);
    } else {
        rep.ef = true;
    }
    return rep;
}

}  // namespace shrub
