#include "shrub/witness.hpp"

#include <functional>
#include <numeric>
#include <optional>

namespace shrub {

Graph xor_graph(const Graph& g, const Graph& h) {
    if (g.n() != h.n()) throw GraphError("xor_graph: vertex counts differ");
    Graph d(g.n());
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v)
            if (g.adj(u, v) != h.adj(u, v)) d.add_edge(u, v);
    return d;
}

std::optional<FlipSpec> spec_for_partition(const Graph& d, const VertexPartition& p) {
    FlipSpec spec(p);
    for (int a = 0; a < p.size(); ++a)
        for (int b = a; b < p.size(); ++b) {
            int val = -1;
            for (int u : p.parts[a])
                for (int v : p.parts[b]) {
                    if (u == v) continue;
                    int x = d.adj(u, v);
                    if (val == -1) val = x;
                    else if (val != x) return std::nullopt;
                }
            if (val == 1) spec.set_flip(a, b);
        }
    return spec;
}

int discerning_part(const FlipSpec& spec, int q1, int q2) {
    for (int q = 0; q < spec.partition.size(); ++q)
        if (spec.flips[q1][q] != spec.flips[q2][q]) return q;
    throw GraphError("not irreducible: parts " + std::to_string(q1) + " and " + std::to_string(q2) +
                     " have identical flip rows");
}

static std::vector<std::vector<int>> discerning_table(const FlipSpec& spec) {
    int k = spec.partition.size();
    std::vector<std::vector<int>> t(k, std::vector<int>(k, -1));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            if (a != b) t[a][b] = discerning_part(spec, a, b);
    return t;
}

WitnessReport irreducible_witness(const Graph& g, const Graph& h) {
    Graph d = xor_graph(g, h);
    int n = d.n();
    // Vertices that are twins in D share a part; the twin relation is transitive.
    std::vector<int> label(n);
    std::iota(label.begin(), label.end(), 0);
    for (int u = 0; u < n; ++u) {
        if (label[u] != u) continue;
        for (int v = u + 1; v < n; ++v)
            if (label[v] == v && are_twins(d, u, v)) label[v] = u;
    }
    auto p = VertexPartition::from_labels(label);
    auto spec = spec_for_partition(d, p);
    while (!spec) {
        // Fallback: split the first part that breaks block constancy into singletons.
        bool split = false;
        for (int a = 0; a < p.size() && !split; ++a) {
            if (p.parts[a].size() == 1) continue;
            std::vector<int> trial = label;
            for (int v : p.parts[a]) trial[v] = n + v;
            auto q = VertexPartition::from_labels(trial);
            if (spec_for_partition(d, q)) {
                label = trial;
                split = true;
            }
        }
        if (!split) {
            std::iota(label.begin(), label.end(), 0);
        }
        p = VertexPartition::from_labels(label);
        spec = spec_for_partition(d, p);
    }
    spec->normalize();
    return {*spec, discerning_table(*spec)};
}

static void each_partition(int n, const std::function<void(const std::vector<int>&, int)>& f) {
    std::vector<int> a(n, 0);
    std::function<void(int, int)> rec = [&](int i, int k) {
        if (i == n) {
            f(a, k);
            return;
        }
        for (int c = 0; c <= k; ++c) {
            a[i] = c;
            rec(i + 1, c == k ? k + 1 : k);
        }
    };
    if (n == 0) {
        f(a, 0);
        return;
    }
    a[0] = 0;
    rec(1, 1);
}

std::vector<std::vector<int>> all_witness_partitions(const Graph& g, const Graph& h) {
    if (g.n() > kBruteWitnessCap) throw ResourceGuard("brute-force witness limited to 7 vertices");
    Graph d = xor_graph(g, h);
    std::vector<std::vector<int>> out;
    each_partition(g.n(), [&](const std::vector<int>& lab, int) {
        if (spec_for_partition(d, VertexPartition::from_labels(lab))) out.push_back(lab);
    });
    return out;
}

WitnessReport brute_force_witness(const Graph& g, const Graph& h) {
    if (g.n() > kBruteWitnessCap) throw ResourceGuard("brute-force witness limited to 7 vertices");
    Graph d = xor_graph(g, h);
    std::optional<FlipSpec> best;
    each_partition(g.n(), [&](const std::vector<int>& lab, int k) {
        if (best && best->partition.size() <= k) return;
        auto s = spec_for_partition(d, VertexPartition::from_labels(lab));
        if (s) best = s;
    });
    best->normalize();
    WitnessReport r{*best, {}};
    int k = best->partition.size();
    r.discerning.assign(k, std::vector<int>(k, -1));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            if (a != b) {
                for (int q = 0; q < k; ++q)
                    if (best->flips[a][q] != best->flips[b][q]) {
                        r.discerning[a][b] = q;
                        break;
                    }
            }
    return r;
}

bool refines(const VertexPartition& fine, const VertexPartition& coarse) {
    for (auto& q : fine.parts)
        for (int v : q)
            if (coarse.part_of[v] != coarse.part_of[q[0]]) return false;
    return true;
}

}  // namespace shrub
