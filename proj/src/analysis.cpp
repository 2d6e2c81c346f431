#include "shrub/analysis.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>

#include "shrub/canon.hpp"
#include "shrub/witness.hpp"

namespace shrub {

Graph set_complement(const Graph& g, const std::vector<int>& a) {
    Graph h = g;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] < 0 || a[i] >= g.n()) throw GraphError("set_complement: vertex out of range");
        for (size_t j = i + 1; j < a.size(); ++j)
            if (a[i] != a[j]) h.toggle(a[i], a[j]);
    }
    return h;
}

// ---------------------------------------------------------------- SC-depth

namespace {

std::mutex sc_mutex;
std::map<std::pair<std::string, int>, bool> sc_memo;

struct ScSolver {
    int cap;

    std::string key(const Graph& g) { return canonical_form(g, std::max(cap, kCanonCap)); }

    // Components of (g xor A) for the complemented set given by mask.
    static std::vector<std::vector<int>> split(const Graph& g, unsigned mask, Graph& h) {
        std::vector<int> a;
        for (int v = 0; v < g.n(); ++v)
            if (mask >> v & 1) a.push_back(v);
        h = set_complement(g, a);
        return connected_components(h);
    }

    bool le(const Graph& g, int d) {
        if (g.n() <= 1) return true;
        if (d <= 0) return false;
        auto k = std::make_pair(key(g), d);
        {
            std::lock_guard<std::mutex> lock(sc_mutex);
            auto it = sc_memo.find(k);
            if (it != sc_memo.end()) return it->second;
        }
        bool res = find(g, d).has_value();
        std::lock_guard<std::mutex> lock(sc_mutex);
        sc_memo[k] = res;
        return res;
    }

    std::optional<unsigned> find(const Graph& g, int d) {
        for (unsigned mask = 0; mask < (1u << g.n()); ++mask) {
            Graph h;
            auto comps = split(g, mask, h);
            bool ok = true;
            for (auto& c : comps)
                if (!le(induced_subgraph(h, c).g, d - 1)) {
                    ok = false;
                    break;
                }
            if (ok) return mask;
        }
        return std::nullopt;
    }

    int depth(const Graph& g) {
        for (int d = 0;; ++d)
            if (le(g, d)) return d;
    }

    ScTrace build(const Graph& g, const std::vector<int>& ids) {
        ScTrace t;
        t.vertices = ids;
        if (g.n() <= 1) return t;
        t.depth = depth(g);
        unsigned mask = *find(g, t.depth);
        for (int v = 0; v < g.n(); ++v)
            if (mask >> v & 1) t.complemented.push_back(ids[v]);
        Graph h;
        for (auto& c : split(g, mask, h)) {
            std::vector<int> sub;
            for (int v : c) sub.push_back(ids[v]);
            t.parts.push_back(build(induced_subgraph(h, c).g, sub));
        }
        return t;
    }
};

}  // namespace

ScDepthResult sc_depth(const Graph& g, int cap) {
    if (g.n() > cap) throw ResourceGuard("sc_depth limited to " + std::to_string(cap) + " vertices");
    if (g.n() == 0) throw GraphError("sc_depth of the empty graph");
    ScSolver s{cap};
    std::vector<int> ids(g.n());
    for (int v = 0; v < g.n(); ++v) ids[v] = v;
    ScDepthResult r;
    r.trace = s.build(g, ids);
    r.depth = r.trace.depth;
    return r;
}

namespace {

// h lives on the ids of the input graph; only t.vertices matter.
bool replay_rec(const Graph& h, const ScTrace& t) {
    if (t.vertices.empty()) return false;
    if (t.vertices.size() == 1) return t.depth == 0 && t.parts.empty() && t.complemented.empty();
    if (t.parts.empty()) return false;
    std::set<int> inside(t.vertices.begin(), t.vertices.end());
    if (inside.size() != t.vertices.size()) return false;
    for (int v : t.complemented)
        if (!inside.count(v)) return false;
    Graph flipped = set_complement(h, t.complemented);
    std::map<int, int> comp_of;
    int maxd = -1;
    for (size_t c = 0; c < t.parts.size(); ++c) {
        maxd = std::max(maxd, t.parts[c].depth);
        for (int v : t.parts[c].vertices)
            if (!inside.count(v) || !comp_of.emplace(v, (int)c).second) return false;
    }
    if (comp_of.size() != inside.size() || t.depth != maxd + 1) return false;
    for (int u : t.vertices)
        for (int v : t.vertices)
            if (u < v && flipped.adj(u, v) && comp_of[u] != comp_of[v]) return false;
    for (auto& p : t.parts) {
        if (!is_connected(induced_subgraph(flipped, p.vertices).g)) return false;
        if (!replay_rec(flipped, p)) return false;
    }
    return true;
}

}  // namespace

bool replay_trace(const Graph& g, const ScTrace& t) {
    if ((int)t.vertices.size() != g.n()) return false;
    return replay_rec(g, t);
}

// ---------------------------------------------------------------- flat or pattern

Certificate flat_or_pattern(const Graph& g, const std::vector<int>& a, int t, int m) {
    if (t < 1 || m < 1) throw GraphError("flat_or_pattern needs t, m >= 1");
    if ((int)a.size() < 2 * m) throw GraphError("flat_or_pattern needs |A| >= 2m");
    std::vector<std::vector<int>> dist;
    for (int v : a) dist.push_back(distances(g, v));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = i + 1; j < a.size(); ++j)
            if (dist[i][a[j]] <= 2 * t)
                throw GraphError("A is not distance-2t independent: " + std::to_string(a[i]) + ", " +
                                 std::to_string(a[j]));
    std::vector<int> empty, full;
    for (size_t i = 0; i < a.size(); ++i) {
        bool any = false;
        for (int v = 0; v < g.n(); ++v) any = any || dist[i][v] == t - 1;
        (any ? full : empty).push_back((int)i);
        if ((int)full.size() == m || (int)empty.size() == m) break;
    }
    Certificate c;
    if ((int)empty.size() == m) {
        for (int i : empty) c.independent.push_back(a[i]);
        return c;
    }
    c.kind = Certificate::Kind::InducedPattern;
    for (int i : full) {
        int x = 0;
        while (dist[i][x] != t - 1) ++x;
        // walk back from x along decreasing distance, choosing the least neighbour
        std::vector<int> path{x};
        while (path.back() != a[i]) {
            int cur = path.back(), nxt = -1;
            g.row(cur).for_each([&](int w) {
                if (nxt < 0 && dist[i][w] == dist[i][cur] - 1) nxt = w;
            });
            path.push_back(nxt);
        }
        std::reverse(path.begin(), path.end());
        c.paths.push_back(path);
    }
    return c;
}

static bool is_induced_mpt(const Graph& g, const PathEmbedding& emb) {
    std::set<int> seen;
    for (auto& p : emb)
        for (int v : p)
            if (v < 0 || v >= g.n() || !seen.insert(v).second) return false;
    for (size_t i = 0; i < emb.size(); ++i)
        for (size_t j = 0; j < emb[i].size(); ++j)
            for (size_t k = 0; k < emb.size(); ++k)
                for (size_t l = 0; l < emb[k].size(); ++l) {
                    if (i == k && j == l) continue;
                    bool want = i == k && (j + 1 == l || l + 1 == j);
                    if (g.adj(emb[i][j], emb[k][l]) != want) return false;
                }
    return true;
}

bool validate_certificate(const Graph& g, const std::vector<int>& a, const Certificate& c, int t, int m) {
    if (c.kind == Certificate::Kind::InfIndependent) {
        if ((int)c.independent.size() != m) return false;
        for (int v : c.independent)
            if (std::find(a.begin(), a.end(), v) == a.end()) return false;
        return is_distance_r_independent(g, c.independent, kInf);
    }
    if ((int)c.paths.size() != m) return false;
    std::set<int> starts;
    for (auto& p : c.paths) {
        if ((int)p.size() != t) return false;
        if (std::find(a.begin(), a.end(), p[0]) == a.end() || !starts.insert(p[0]).second) return false;
    }
    return is_induced_mpt(g, c.paths);
}

bool validate_flipped_mpt(const Graph& g, const PathEmbedding& emb) {
    std::set<int> seen;
    for (auto& p : emb)
        for (int v : p)
            if (v < 0 || v >= g.n() || !seen.insert(v).second) return false;
    return match_flipped_mpt(g, emb).has_value();
}

// ---------------------------------------------------------------- pigeonholes

namespace {

// Checks that g restricted to the path vertices is a p-flip of the disjoint union of the paths.
void require_flip_of_paths(const Graph& g, const PathEmbedding& paths, const VertexPartition& p) {
    std::vector<int> vs;
    for (auto& row : paths) vs.insert(vs.end(), row.begin(), row.end());
    auto sub = induced_subgraph(g, vs);
    Graph base(sub.g.n());
    int off = 0;
    for (auto& row : paths) {
        for (size_t j = 0; j + 1 < row.size(); ++j) base.add_edge(off + (int)j, off + (int)j + 1);
        off += (int)row.size();
    }
    std::vector<int> labels;
    for (int v : vs) labels.push_back(p.part_of[v]);
    if (!spec_for_partition(xor_graph(base, sub.g), VertexPartition::from_labels(labels)))
        throw GraphError("precondition: graph is not a flip of the paths with the given partition");
}

PathEmbedding pick_same_colored(const PathEmbedding& paths, const std::function<int(int)>& color, int m) {
    std::map<std::vector<int>, std::vector<int>> groups;
    for (size_t i = 0; i < paths.size(); ++i) {
        std::vector<int> key;
        for (int v : paths[i]) key.push_back(color(v));
        auto& grp = groups[key];
        grp.push_back((int)i);
        if ((int)grp.size() == m) {
            PathEmbedding out;
            for (int k : grp) out.push_back(paths[k]);
            return out;
        }
    }
    throw GraphError("precondition: no colour class with " + std::to_string(m) + " paths");
}

}  // namespace

PathEmbedding kflip_pigeonhole_extract(const Graph& g, const PathEmbedding& paths, const VertexPartition& p, int m) {
    require_flip_of_paths(g, paths, p);
    auto out = pick_same_colored(paths, [&](int v) { return p.part_of[v]; }, m);
    if (!validate_flipped_mpt(g, out)) throw GraphError("kflip extraction failed validation");
    return out;
}

PathEmbedding setcomp_pigeonhole_extract(const Graph& g, const PathEmbedding& paths, const std::vector<int>& a,
                                         int t) {
    Bits in_a(g.n());
    for (int v : a) in_a.set(v);
    auto out = pick_same_colored(paths, [&](int v) { return in_a.test(v) ? 1 : 0; }, t);
    if (!validate_flipped_mpt(g, out)) throw GraphError("set-complementation extraction failed validation");
    return out;
}

ComponentExtract component_pigeonhole_extract(const Graph& g, const PathEmbedding& paths, int t) {
    int s = t * t + t - 1;
    if ((int)paths.size() != t) throw GraphError("component extraction needs t paths");
    for (auto& p : paths)
        if ((int)p.size() != s) throw GraphError("component extraction needs paths with t^2 + t - 1 vertices");
    ComponentExtract out;
    auto comps = connected_components(g);
    if (comps.size() == 1) {
        out.component = comps[0];
        for (auto& p : paths) out.paths.emplace_back(p.begin(), p.begin() + t);
    } else {
        // Only adjacent-layer flips keep the graph disconnected; then some component is an induced path.
        for (auto& c : comps) {
            auto sub = induced_subgraph(g, c);
            if ((int)c.size() < s || !is_path_graph(sub.g)) continue;
            int start = 0;
            while (sub.g.degree(start) > 1) ++start;
            std::vector<int> order{start};
            while ((int)order.size() < sub.g.n()) {
                int cur = order.back(), prev = order.size() > 1 ? order[order.size() - 2] : -1, nxt = -1;
                sub.g.row(cur).for_each([&](int w) {
                    if (w != prev) nxt = w;
                });
                order.push_back(nxt);
            }
            out.component = c;
            for (int j = 0; j < t; ++j) {
                std::vector<int> piece;
                for (int k = 1; k <= t; ++k) piece.push_back(sub.map[order[j * (t + 1) + k - 1]]);
                out.paths.push_back(piece);
            }
            break;
        }
        if (out.paths.empty()) throw GraphError("component extraction: no component contains a flipped tP_t");
    }
    if (!validate_flipped_mpt(g, out.paths)) throw GraphError("component extraction failed validation");
    return out;
}

PathEmbedding path_to_swimlane_extract(const Graph& g, const FlipSpec& spec, int t, int k) {
    long long kt = 1;
    for (int i = 0; i < t; ++i) kt *= k;
    long long tp = (long long)t * kt * (t + 1);
    if (g.n() != tp) throw GraphError("path_to_swimlane needs t' = t * k^t * (t+1) vertices");
    if (spec.partition.size() > k) throw GraphError("precondition: flip has more than k parts");
    Graph base = path((int)tp).g;
    if (apply_flip(base, spec) != g) throw GraphError("precondition: graph is not the given flip of P_t'");
    PathEmbedding pieces;
    for (long long j = 0; j < t * kt; ++j) {
        std::vector<int> piece;
        for (int i = 0; i < t; ++i) piece.push_back((int)(j * (t + 1) + i));
        pieces.push_back(piece);
    }
    return kflip_pigeonhole_extract(g, pieces, spec.partition, t);
}

std::vector<int> crossing_path_embedding(CrossingKind kind, int r, int t) {
    if (t < 1 || r < 1) throw GraphError("crossing path needs r, t >= 1");
    std::vector<int> out;
    if (kind == CrossingKind::Rook) {
        auto p = rook(t);
        // (1,1) (2,1) (2,2) (3,2) (3,3) ...
        int i = 1, j = 1;
        while ((int)out.size() < t) {
            out.push_back(p.coords.at(i, j));
            if (i == j) ++i;
            else ++j;
        }
        return out;
    }
    auto p = kind == CrossingKind::Star ? star_crossing(r, t) : clique_crossing(r, t);
    auto& c = p.coords;
    auto push_path = [&](int i, int j, bool forward) {
        for (int l = 1; l <= r; ++l) out.push_back(c.at(forward ? l : r + 1 - l, i, j));
    };
    if (kind == CrossingKind::Star) {
        // a_1 pi_11 b_1 pi_21^rev a_2 pi_22 b_2 ...
        for (int i = 1; (int)out.size() < t; ++i) {
            out.push_back(c.at(0, i, 0));
            push_path(i, i, true);
            out.push_back(c.at(r + 1, 0, i));
            if (i < t) push_path(i + 1, i, false);
        }
    } else {
        // pi_11 pi_21^rev pi_22 pi_32^rev ...
        int i = 1, j = 1;
        bool forward = true;
        while ((int)out.size() < t) {
            push_path(i, j, forward);
            if (i == j) ++i;
            else ++j;
            forward = !forward;
        }
    }
    out.resize(t);
    return out;
}

// ---------------------------------------------------------------- induced subgraphs

std::optional<std::vector<int>> contains_induced(const Graph& g, const Graph& h, int cap) {
    if (h.n() > cap) throw ResourceGuard("induced subgraph search limited to " + std::to_string(cap) + " vertices");
    if (h.n() > g.n()) return std::nullopt;
    // order pattern vertices so each one (after the first of its component) has an earlier neighbour
    std::vector<int> order;
    std::vector<char> placed(h.n(), 0);
    for (int s = 0; s < h.n(); ++s) {
        if (placed[s]) continue;
        std::vector<int> q{s};
        placed[s] = 1;
        for (size_t k = 0; k < q.size(); ++k) {
            order.push_back(q[k]);
            h.row(q[k]).for_each([&](int w) {
                if (!placed[w]) {
                    placed[w] = 1;
                    q.push_back(w);
                }
            });
        }
    }
    std::vector<int> map(h.n(), -1);
    std::vector<char> used(g.n(), 0);
    std::function<bool(size_t)> rec = [&](size_t k) {
        if (k == order.size()) return true;
        int hv = order[k];
        for (int gv = 0; gv < g.n(); ++gv) {
            if (used[gv]) continue;
            bool ok = true;
            for (size_t p = 0; p < k && ok; ++p) {
                int hu = order[p];
                if (h.adj(hu, hv) != g.adj(map[hu], gv)) ok = false;
            }
            if (!ok) continue;
            map[hv] = gv;
            used[gv] = 1;
            if (rec(k + 1)) return true;
            used[gv] = 0;
            map[hv] = -1;
        }
        return false;
    };
    if (rec(0)) return map;
    return std::nullopt;
}

std::optional<PatternMatch> find_flipped_pattern(const Graph& g, const std::string& family, int m, int t) {
    std::vector<FamilyMember> members;
    if (family == "Ht") members = enumerate_flipped_ht(t, true);
    else if (family == "mPt") members = enumerate_flipped_mpt(m, t, true);
    else throw GraphError("unknown family " + family);
    for (auto& mem : members) {
        auto e = contains_induced(g, mem.g);
        if (e) return PatternMatch{mem, *e};
    }
    return std::nullopt;
}

}  // namespace shrub
