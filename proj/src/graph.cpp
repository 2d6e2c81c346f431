#include "shrub/graph.hpp"

#include <algorithm>
#include <deque>
#include <cstdlib>
#include <numeric>

namespace shrub {

Graph::Graph(int n) : n_(n), rows_(n, Bits(n)) {}

static void check_pair(int n, int u, int v) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw GraphError("vertex out of range");
    if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
}

void Graph::add_edge(int u, int v) {
    check_pair(n_, u, v);
    rows_[u].set(v);
    rows_[v].set(u);
}
void Graph::remove_edge(int u, int v) {
    check_pair(n_, u, v);
    rows_[u].reset(v);
    rows_[v].reset(u);
}
void Graph::toggle(int u, int v) {
    check_pair(n_, u, v);
    rows_[u].flip(v);
    rows_[v].flip(u);
}

int Graph::edge_count() const {
    int s = 0;
    for (auto& r : rows_) s += r.count();
    return s / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
        rows_[u].for_each([&](int v) {
            if (u < v) out.emplace_back(u, v);
        });
    return out;
}

int Structure::rel_index(const std::string& name) const {
    for (size_t i = 0; i < sig.binary.size(); ++i)
        if (sig.binary[i] == name) return (int)i;
    return -1;
}

VertexPartition VertexPartition::from_parts(int n, std::vector<std::vector<int>> parts) {
    VertexPartition p;
    p.part_of.assign(n, -1);
    for (auto& q : parts) {
        if (q.empty()) throw GraphError("partition has an empty part");
        std::sort(q.begin(), q.end());
    }
    std::sort(parts.begin(), parts.end(), [](auto& a, auto& b) { return a[0] < b[0]; });
    for (int i = 0; i < (int)parts.size(); ++i)
        for (int v : parts[i]) {
            if (v < 0 || v >= n) throw GraphError("partition vertex " + std::to_string(v) + " out of range");
            if (p.part_of[v] != -1) throw GraphError("partition parts overlap at vertex " + std::to_string(v));
            p.part_of[v] = i;
        }
    for (int v = 0; v < n; ++v)
        if (p.part_of[v] == -1) throw GraphError("partition does not cover vertex " + std::to_string(v));
    p.parts = std::move(parts);
    return p;
}

VertexPartition VertexPartition::from_labels(const std::vector<int>& label) {
    std::map<int, std::vector<int>> by;
    for (int v = 0; v < (int)label.size(); ++v) by[label[v]].push_back(v);
    std::vector<std::vector<int>> parts;
    for (auto& [k, vs] : by) parts.push_back(vs);
    return from_parts((int)label.size(), std::move(parts));
}

FlipSpec::FlipSpec(VertexPartition p) : partition(std::move(p)) {
    int k = partition.size();
    flips.assign(k, std::vector<char>(k, 0));
}

std::vector<std::pair<int, int>> FlipSpec::flip_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < partition.size(); ++a)
        for (int b = a; b < partition.size(); ++b)
            if (flips[a][b]) out.emplace_back(a, b);
    return out;
}

void FlipSpec::normalize() {
    for (int a = 0; a < partition.size(); ++a)
        if (partition.parts[a].size() == 1) flips[a][a] = 0;
}

Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0) throw GraphError("negative vertex count");
    Graph g(n);
    for (size_t i = 0; i < edges.size(); ++i) {
        auto [u, v] = edges[i];
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw GraphError("edge " + std::to_string(i) + " has a vertex out of range");
        if (u == v) throw GraphError("edge " + std::to_string(i) + " is a self-loop");
        g.add_edge(u, v);
    }
    return g;
}

Graph complement(const Graph& g) {
    Graph h(g.n());
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v)
            if (!g.adj(u, v)) h.add_edge(u, v);
    return h;
}

Graph apply_flip(const Graph& g, const FlipSpec& spec) {
    const auto& p = spec.partition;
    if ((int)p.part_of.size() != g.n()) throw GraphError("flip partition does not cover the vertex set");
    Graph h = g;
    // Toggle whole blocks: for each vertex, xor with the union of flipped parts.
    std::vector<Bits> part_bits(p.size(), Bits(g.n()));
    for (int i = 0; i < p.size(); ++i)
        for (int v : p.parts[i]) part_bits[i].set(v);
    for (int u = 0; u < g.n(); ++u) {
        int a = p.part_of[u];
        for (int b = 0; b < p.size(); ++b) {
            if (!spec.flips[a][b]) continue;
            part_bits[b].for_each([&](int v) {
                if (u < v) h.toggle(u, v);
            });
        }
    }
    return h;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    Graph g(a.n() + b.n());
    for (auto [u, v] : a.edges()) g.add_edge(u, v);
    for (auto [u, v] : b.edges()) g.add_edge(a.n() + u, a.n() + v);
    return g;
}

static void check_subset(int n, const std::vector<int>& vs) {
    std::vector<char> seen(n, 0);
    for (int v : vs) {
        if (v < 0 || v >= n) throw GraphError("vertex " + std::to_string(v) + " not in the universe");
        if (seen[v]) throw GraphError("vertex " + std::to_string(v) + " listed twice");
        seen[v] = 1;
    }
}

Induced induced_subgraph(const Graph& g, const std::vector<int>& vs) {
    check_subset(g.n(), vs);
    Induced r{Graph((int)vs.size()), vs};
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = i + 1; j < vs.size(); ++j)
            if (g.adj(vs[i], vs[j])) r.g.add_edge((int)i, (int)j);
    return r;
}

ColoredGraph induced_subgraph(const ColoredGraph& g, const std::vector<int>& vs) {
    ColoredGraph r{induced_subgraph(g.g, vs).g, {}};
    for (auto& c : g.colors) {
        Bits b((int)vs.size());
        for (size_t i = 0; i < vs.size(); ++i)
            if (c.test(vs[i])) b.set((int)i);
        r.colors.push_back(b);
    }
    return r;
}

Structure induced_subgraph(const Structure& s, const std::vector<int>& vs) {
    check_subset(s.n, vs);
    int m = (int)vs.size();
    Structure r;
    r.sig = s.sig;
    r.n = m;
    for (auto& R : s.rel) {
        std::vector<Bits> rows(m, Bits(m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (R[vs[i]].test(vs[j])) rows[i].set(j);
        r.rel.push_back(rows);
    }
    for (auto& c : s.colors) {
        Bits b(m);
        for (int i = 0; i < m; ++i)
            if (c.test(vs[i])) b.set(i);
        r.colors.push_back(b);
    }
    if (s.constant >= 0) {
        auto it = std::find(vs.begin(), vs.end(), s.constant);
        if (it == vs.end()) throw GraphError("induced substructure drops the constant");
        r.constant = (int)(it - vs.begin());
    }
    return r;
}

FlipSpec restrict_spec(const FlipSpec& spec, const std::vector<int>& vs) {
    std::map<int, std::vector<int>> by;
    for (size_t i = 0; i < vs.size(); ++i) by[spec.partition.part_of[vs[i]]].push_back((int)i);
    std::vector<std::vector<int>> parts;
    std::vector<int> old;
    for (auto& [k, q] : by) {
        parts.push_back(q);
        old.push_back(k);
    }
    // from_parts sorts by minimum vertex; recover the old ids in that order
    auto p = VertexPartition::from_parts((int)vs.size(), parts);
    FlipSpec r(p);
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b) {
            int oa = spec.partition.part_of[vs[p.parts[a][0]]];
            int ob = spec.partition.part_of[vs[p.parts[b][0]]];
            r.flips[a][b] = spec.flips[oa][ob];
        }
    return r;
}

std::vector<int> distances(const Graph& g, int v) {
    if (v < 0 || v >= g.n()) throw GraphError("vertex out of range");
    std::vector<int> d(g.n(), kInf);
    std::deque<int> q{v};
    d[v] = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        g.row(u).for_each([&](int w) {
            if (d[w] == kInf) {
                d[w] = d[u] + 1;
                q.push_back(w);
            }
        });
    }
    return d;
}

bool is_distance_r_independent(const Graph& g, const std::vector<int>& a, int r) {
    for (size_t i = 0; i < a.size(); ++i) {
        auto d = distances(g, a[i]);
        for (size_t j = i + 1; j < a.size(); ++j) {
            if (a[i] == a[j]) continue;
            if (r == kInf ? d[a[j]] != kInf : d[a[j]] <= r) return false;
        }
    }
    return true;
}

bool are_twins(const Graph& g, int u, int v) {
    if (u == v) throw GraphError("twin test needs distinct vertices");
    Bits a = g.row(u), b = g.row(v);
    a.reset(v);
    b.reset(u);
    return a == b;
}

std::vector<int> twin_having(const Graph& g) {
    std::vector<int> out;
    for (int u = 0; u < g.n(); ++u)
        for (int v = 0; v < g.n(); ++v)
            if (u != v && are_twins(g, u, v)) {
                out.push_back(u);
                break;
            }
    return out;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
    std::vector<int> comp(g.n(), -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < g.n(); ++s) {
        if (comp[s] != -1) continue;
        std::vector<int> c{s};
        comp[s] = (int)out.size();
        for (size_t i = 0; i < c.size(); ++i)
            g.row(c[i]).for_each([&](int w) {
                if (comp[w] == -1) {
                    comp[w] = comp[s];
                    c.push_back(w);
                }
            });
        std::sort(c.begin(), c.end());
        out.push_back(c);
    }
    return out;
}

bool is_connected(const Graph& g) { return g.n() <= 1 || connected_components(g).size() == 1; }

bool is_path_in_order(const Graph& g, const std::vector<int>& order) {
    if ((int)order.size() != g.n()) return false;
    std::vector<int> pos(g.n(), -1);
    for (int i = 0; i < (int)order.size(); ++i) {
        if (order[i] < 0 || order[i] >= g.n() || pos[order[i]] != -1) return false;
        pos[order[i]] = i;
    }
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v)
            if (g.adj(u, v) != (std::abs(pos[u] - pos[v]) == 1)) return false;
    return true;
}

bool is_path_graph(const Graph& g) {
    if (g.n() == 0) return false;
    if (!is_connected(g) || g.edge_count() != g.n() - 1) return false;
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) > 2) return false;
    return true;
}

Structure to_structure(const Graph& g) {
    Structure s;
    s.sig.binary = {"E"};
    s.n = g.n();
    std::vector<Bits> rows;
    for (int v = 0; v < g.n(); ++v) rows.push_back(g.row(v));
    s.rel.push_back(rows);
    return s;
}

Structure to_structure(const ColoredGraph& g) {
    Structure s = to_structure(g.g);
    s.sig.colors = g.k();
    s.colors = g.colors;
    return s;
}

Graph to_graph(const Structure& s, const std::string& rel) {
    int r = s.rel_index(rel);
    if (r < 0) throw GraphError("structure has no relation " + rel);
    Graph g(s.n);
    for (int u = 0; u < s.n; ++u)
        for (int v = 0; v < s.n; ++v)
            if (u != v && (s.holds(r, u, v) || s.holds(r, v, u))) g.add_edge(u, v);
    return g;
}

}  // namespace shrub
