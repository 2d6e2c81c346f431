#include "shrub/patterns.hpp"

#include <set>

#include "shrub/canon.hpp"

namespace shrub {

std::string kind_name(PatternKind k) {
    switch (k) {
        case PatternKind::MPt: return "mPt";
        case PatternKind::HalfGraph: return "halfgraph";
        case PatternKind::Crossing: return "crossing";
        case PatternKind::Rook: return "rook";
        case PatternKind::HStar: return "hstar";
        case PatternKind::LinearOrder: return "linear-order";
    }
    return "?";
}

int PatternCoordinates::at(int a, int b, int c) const {
    auto it = index.find({a, b, c});
    if (it == index.end())
        throw GraphError("no vertex at coordinate (" + std::to_string(a) + "," + std::to_string(b) + "," +
                         std::to_string(c) + ")");
    return it->second;
}

void PatternCoordinates::add(int v, Coord c) {
    if ((int)coord.size() <= v) coord.resize(v + 1);
    coord[v] = c;
    index[c] = v;
}

std::string PatternCoordinates::label(int v) const {
    auto [a, b, c] = coord[v];
    switch (kind) {
        case PatternKind::MPt:
        case PatternKind::Rook:
            return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
        case PatternKind::HalfGraph:
        case PatternKind::HStar:
            return (a == 0 ? "a" : "b") + std::to_string(b);
        case PatternKind::Crossing:
            if (a == 0) return "a" + std::to_string(b);
            if (a == r + 1) return "b" + std::to_string(c);
            return "pi(" + std::to_string(b) + "," + std::to_string(c) + ")[" + std::to_string(a) + "]";
        case PatternKind::LinearOrder:
            return std::to_string(a);
    }
    return "?";
}

PatternCoordinates PatternCoordinates::restrict_to(const std::vector<int>& vs) const {
    PatternCoordinates out;
    out.kind = kind;
    out.m = m;
    out.t = t;
    out.r = r;
    std::vector<int> pos(coord.size(), -1);
    for (int i = 0; i < (int)vs.size(); ++i) {
        out.add(i, coord[vs[i]]);
        pos[vs[i]] = i;
    }
    for (auto& L : layers) {
        std::vector<int> l2;
        for (int v : L)
            if (pos[v] >= 0) l2.push_back(pos[v]);
        if (!l2.empty()) out.layers.push_back(l2);
    }
    return out;
}

std::string Flavor::name() const {
    if (aa && bb) return "AABB";
    if (aa) return "AA";
    if (bb) return "BB";
    return "none";
}

Flavor Flavor::parse(const std::string& s) {
    if (s.empty() || s == "none" || s == "0") return {};
    if (s == "AA") return {true, false};
    if (s == "BB") return {false, true};
    if (s == "AABB" || s == "AA,BB" || s == "BBAA") return {true, true};
    throw GraphError("unknown flavor '" + s + "'");
}

std::vector<Flavor> Flavor::all() { return {{false, false}, {true, false}, {false, true}, {true, true}}; }

Pattern m_paths(int m, int t) {
    if (m < 1 || t < 1) throw GraphError("m_paths needs m >= 1 and t >= 1");
    Pattern p{Graph(m * t), {}};
    p.coords.kind = PatternKind::MPt;
    p.coords.m = m;
    p.coords.t = t;
    p.coords.layers.assign(t, {});
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= t; ++j) {
            int v = (i - 1) * t + (j - 1);
            p.coords.add(v, {i, j, 0});
            p.coords.layers[j - 1].push_back(v);
            if (j > 1) p.g.add_edge(v - 1, v);
        }
    return p;
}

Pattern path(int t) { return m_paths(1, t); }

FlipSpec layer_spec(const PatternCoordinates& c, const std::vector<std::pair<int, int>>& flips) {
    FlipSpec spec(VertexPartition::from_parts((int)c.coord.size(), c.layers));
    // from_parts orders parts by minimum vertex; map declared layers to part ids
    std::vector<int> id(c.layers.size());
    for (size_t l = 0; l < c.layers.size(); ++l) id[l] = spec.partition.part_of[c.layers[l][0]];
    for (auto [a, b] : flips) {
        if (a < 0 || b < 0 || a >= (int)c.layers.size() || b >= (int)c.layers.size())
            throw GraphError("layer index out of range");
        spec.set_flip(id[a], id[b]);
    }
    return spec;
}

FlippedPattern flipped_m_paths(int m, int t, const std::vector<std::pair<int, int>>& flips) {
    auto p = m_paths(m, t);
    std::vector<std::pair<int, int>> z;
    for (auto [a, b] : flips) {
        if (a < 1 || b < 1 || a > t || b > t) throw GraphError("layer index out of range");
        z.emplace_back(a - 1, b - 1);
    }
    auto spec = layer_spec(p.coords, z);
    return {apply_flip(p.g, spec), p.coords, spec};
}

Pattern half_graph(int t) {
    if (t < 1) throw GraphError("half_graph needs t >= 1");
    Pattern p{Graph(2 * t), {}};
    p.coords.kind = PatternKind::HalfGraph;
    p.coords.t = t;
    p.coords.layers.assign(2, {});
    for (int i = 1; i <= t; ++i) {
        p.coords.add(i - 1, {0, i, 0});
        p.coords.add(t + i - 1, {1, i, 0});
        p.coords.layers[0].push_back(i - 1);
        p.coords.layers[1].push_back(t + i - 1);
    }
    for (int i = 1; i <= t; ++i)
        for (int j = i; j <= t; ++j) p.g.add_edge(i - 1, t + j - 1);
    return p;
}

FlippedPattern flipped_half_graph(int t, bool aa, bool bb, bool ab) {
    auto p = half_graph(t);
    std::vector<std::pair<int, int>> f;
    if (aa) f.emplace_back(0, 0);
    if (bb) f.emplace_back(1, 1);
    if (ab) f.emplace_back(0, 1);
    auto spec = layer_spec(p.coords, f);
    return {apply_flip(p.g, spec), p.coords, spec};
}

Pattern clean_flipped_half_graph(int t, Flavor f) {
    auto h = flipped_half_graph(t, f.aa, f.bb, false);
    return {h.g, h.coords};
}

Pattern clean_core(const FlippedPattern& h) {
    int t = h.coords.t - 1;
    if (t < 1) throw GraphError("clean_core needs a flipped H_{t+1} with t >= 1");
    bool ab = h.spec.flips[0][1];
    std::vector<int> vs;
    if (!ab) {
        for (int i = 1; i <= t; ++i) vs.push_back(h.coords.at(0, i));
        for (int j = 1; j <= t; ++j) vs.push_back(h.coords.at(1, j));
    } else {
        // a''_i = a_{t+2-i}, b''_j = b_{t+1-j}
        for (int i = 1; i <= t; ++i) vs.push_back(h.coords.at(0, t + 2 - i));
        for (int j = 1; j <= t; ++j) vs.push_back(h.coords.at(1, t + 1 - j));
    }
    Pattern out{induced_subgraph(h.g, vs).g, {}};
    out.coords.kind = PatternKind::HalfGraph;
    out.coords.t = t;
    out.coords.layers.assign(2, {});
    for (int i = 1; i <= t; ++i) {
        out.coords.add(i - 1, {0, i, 0});
        out.coords.add(t + i - 1, {1, i, 0});
        out.coords.layers[0].push_back(i - 1);
        out.coords.layers[1].push_back(t + i - 1);
    }
    return out;
}

bool is_clean_flipped_half_graph(const Graph& g, const PatternCoordinates& c, Flavor* flavor) {
    int t = c.t;
    if (g.n() != 2 * t) return false;
    for (auto f : Flavor::all()) {
        auto ref = clean_flipped_half_graph(t, f);
        bool ok = true;
        for (int u = 0; u < 2 * t && ok; ++u)
            for (int v = u + 1; v < 2 * t && ok; ++v) {
                auto cu = ref.coords.coord[u], cv = ref.coords.coord[v];
                if (ref.g.adj(u, v) != g.adj(c.at(cu[0], cu[1]), c.at(cv[0], cv[1]))) ok = false;
            }
        if (ok) {
            if (flavor) *flavor = f;
            return true;
        }
    }
    return false;
}

static Pattern crossing(int r, int t, bool clique) {
    if (r < 1 || t < 1) throw GraphError("crossing needs r >= 1 and t >= 1");
    int n = 2 * t + r * t * t;
    Pattern p{Graph(n), {}};
    auto& c = p.coords;
    c.kind = PatternKind::Crossing;
    c.r = r;
    c.t = t;
    c.layers.assign(r + 2, {});
    auto pid = [&](int l, int i, int j) { return t + (l - 1) * t * t + (i - 1) * t + (j - 1); };
    for (int i = 1; i <= t; ++i) {
        c.add(i - 1, {0, i, 0});
        c.layers[0].push_back(i - 1);
    }
    for (int l = 1; l <= r; ++l)
        for (int i = 1; i <= t; ++i)
            for (int j = 1; j <= t; ++j) {
                c.add(pid(l, i, j), {l, i, j});
                c.layers[l].push_back(pid(l, i, j));
            }
    for (int j = 1; j <= t; ++j) {
        int v = t + r * t * t + j - 1;
        c.add(v, {r + 1, 0, j});
        c.layers[r + 1].push_back(v);
    }
    for (int i = 1; i <= t; ++i)
        for (int j = 1; j <= t; ++j) {
            p.g.add_edge(c.at(0, i), pid(1, i, j));
            for (int l = 1; l < r; ++l) p.g.add_edge(pid(l, i, j), pid(l + 1, i, j));
            p.g.add_edge(pid(r, i, j), c.at(r + 1, 0, j));
        }
    if (clique) {
        for (int i = 1; i <= t; ++i)
            for (int j = 1; j <= t; ++j)
                for (int j2 = j + 1; j2 <= t; ++j2) p.g.add_edge(pid(1, i, j), pid(1, i, j2));
        for (int j = 1; j <= t; ++j)
            for (int i = 1; i <= t; ++i)
                for (int i2 = i + 1; i2 <= t; ++i2) p.g.add_edge(pid(r, i, j), pid(r, i2, j));
    }
    return p;
}

Pattern star_crossing(int r, int t) { return crossing(r, t, false); }
Pattern clique_crossing(int r, int t) { return crossing(r, t, true); }

Pattern rook(int t) {
    if (t < 1) throw GraphError("rook needs t >= 1");
    Pattern p{Graph(t * t), {}};
    p.coords.kind = PatternKind::Rook;
    p.coords.t = t;
    for (int i = 1; i <= t; ++i)
        for (int j = 1; j <= t; ++j) p.coords.add((i - 1) * t + j - 1, {i, j, 0});
    for (int u = 0; u < t * t; ++u)
        for (int v = u + 1; v < t * t; ++v) {
            auto a = p.coords.coord[u], b = p.coords.coord[v];
            if (a[0] == b[0] || a[1] == b[1]) p.g.add_edge(u, v);
        }
    return p;
}

Pattern h_star(int t, Flavor f) {
    if (t < 1) throw GraphError("h_star needs t >= 1");
    auto h = clean_flipped_half_graph(t + 3, f);
    std::vector<int> vs;
    for (int i = 3; i <= t + 2; ++i) vs.push_back(h.coords.at(0, i));
    for (int j = 1; j <= t + 3; ++j) vs.push_back(h.coords.at(1, j));
    Pattern out{induced_subgraph(h.g, vs).g, h.coords.restrict_to(vs)};
    out.coords.kind = PatternKind::HStar;
    out.coords.t = t;
    return out;
}

Pattern nibble(const Graph& g, const PatternCoordinates& c, int i) {
    if (c.kind != PatternKind::MPt) throw GraphError("nibble needs mPt coordinates");
    if (c.m < 2 || c.t < 3) throw GraphError("nibble needs m >= 2 and t >= 3");
    if (i != 1 && i != 2) throw GraphError("nibble index must be 1 or 2");
    int x = c.at(1, 1), y = c.at(i, c.t);
    std::vector<int> vs;
    for (int v = 0; v < g.n(); ++v)
        if (v != x && v != y) vs.push_back(v);
    return {induced_subgraph(g, vs).g, c.restrict_to(vs)};
}

Structure linear_order(int t) {
    if (t < 1) throw GraphError("linear_order needs t >= 1");
    Structure s;
    s.sig.binary = {"<"};
    s.n = t;
    std::vector<Bits> rows(t, Bits(t));
    for (int u = 0; u < t; ++u)
        for (int v = u + 1; v < t; ++v) rows[u].set(v);
    s.rel.push_back(rows);
    return s;
}

std::vector<std::pair<int, int>> layer_pairs_from_mask(int t, unsigned long long mask) {
    std::vector<std::pair<int, int>> out;
    int k = 0;
    for (int a = 1; a <= t; ++a)
        for (int b = a; b <= t; ++b, ++k)
            if ((mask >> k) & 1ULL) out.emplace_back(a, b);
    return out;
}

std::vector<FamilyMember> enumerate_flipped_mpt(int m, int t, bool dedupe, int pair_cap) {
    int pairs = t * (t + 1) / 2;
    if (pairs > pair_cap)
        throw ResourceGuard("flipped mPt family with " + std::to_string(pairs) + " layer pairs exceeds cap " +
                            std::to_string(pair_cap));
    std::vector<FamilyMember> out;
    std::set<std::string> seen;
    for (unsigned long long mask = 0; mask < (1ULL << pairs); ++mask) {
        auto f = flipped_m_paths(m, t, layer_pairs_from_mask(t, mask));
        if (dedupe && !seen.insert(canonical_form(f.g)).second) continue;
        out.push_back({f.g, f.spec});
    }
    return out;
}

std::vector<FamilyMember> enumerate_flipped_ht(int t, bool dedupe) {
    std::vector<FamilyMember> out;
    std::set<std::string> seen;
    for (int mask = 0; mask < 8; ++mask) {
        auto f = flipped_half_graph(t, mask & 1, mask & 2, mask & 4);
        if (dedupe && !seen.insert(canonical_form(f.g)).second) continue;
        out.push_back({f.g, f.spec});
    }
    return out;
}

std::optional<FlipSpec> match_flipped_mpt(const Graph& g, const std::vector<std::vector<int>>& emb) {
    int m = (int)emb.size();
    if (m == 0) return std::nullopt;
    int t = (int)emb[0].size();
    std::vector<int> vs;
    for (auto& row : emb) {
        if ((int)row.size() != t) return std::nullopt;
        vs.insert(vs.end(), row.begin(), row.end());
    }
    Graph h;
    try {
        h = induced_subgraph(g, vs).g;
    } catch (const GraphError&) {
        return std::nullopt;
    }
    auto base = m_paths(m, t);
    FlipSpec spec = layer_spec(base.coords, {});
    for (int a = 0; a < t; ++a)
        for (int b = a; b < t; ++b) {
            int val = -1;
            for (int i = 0; i < m; ++i)
                for (int k = 0; k < m; ++k) {
                    int u = i * t + a, v = k * t + b;
                    if (u == v) continue;
                    int d = h.adj(u, v) != base.g.adj(u, v);
                    if (val == -1) val = d;
                    else if (val != d) return std::nullopt;
                }
            if (val == 1) spec.set_flip(spec.partition.part_of[a], spec.partition.part_of[b]);
        }
    return spec;
}

}  // namespace shrub
