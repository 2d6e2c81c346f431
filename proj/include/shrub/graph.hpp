#pragma once

#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "shrub/bits.hpp"

namespace shrub {

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown whenever a configured size or step cap is exceeded.
struct ResourceGuard : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr int kInf = std::numeric_limits<int>::max();

class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    int n() const { return n_; }
    bool adj(int u, int v) const { return rows_[u].test(v); }
    const Bits& row(int v) const { return rows_[v]; }
    void add_edge(int u, int v);
    void remove_edge(int u, int v);
    void toggle(int u, int v);
    void set_edge(int u, int v, bool b) { b ? add_edge(u, v) : remove_edge(u, v); }

    int degree(int v) const { return rows_[v].count(); }
    int edge_count() const;
    std::vector<std::pair<int, int>> edges() const;

    bool operator==(const Graph& o) const { return n_ == o.n_ && rows_ == o.rows_; }
    bool operator!=(const Graph& o) const { return !(*this == o); }

private:
    int n_ = 0;
    std::vector<Bits> rows_;
};

struct ColoredGraph {
    Graph g;
    std::vector<Bits> colors;  // colors[k-1] holds color k

    int k() const { return (int)colors.size(); }
    bool has_color(int v, int c) const { return colors[c - 1].test(v); }
};

// Binary relations are named; unary symbols are the colors C_1..C_k.
struct Signature {
    std::vector<std::string> binary;
    int colors = 0;
    bool constant = false;

    bool operator==(const Signature& o) const {
        return binary == o.binary && colors == o.colors && constant == o.constant;
    }
};

struct Structure {
    Signature sig;
    int n = 0;
    std::vector<std::vector<Bits>> rel;  // rel[r][u].test(v) iff R_r(u,v)
    std::vector<Bits> colors;
    int constant = -1;

    int rel_index(const std::string& name) const;
    bool holds(int r, int u, int v) const { return rel[r][u].test(v); }
};

struct VertexPartition {
    std::vector<std::vector<int>> parts;
    std::vector<int> part_of;

    int size() const { return (int)parts.size(); }
    static VertexPartition from_parts(int n, std::vector<std::vector<int>> parts);
    static VertexPartition from_labels(const std::vector<int>& label);
};

struct FlipSpec {
    VertexPartition partition;
    std::vector<std::vector<char>> flips;  // symmetric part x part

    FlipSpec() = default;
    explicit FlipSpec(VertexPartition p);
    bool flipped(int a, int b) const { return flips[a][b]; }
    void set_flip(int a, int b, bool v = true) { flips[a][b] = flips[b][a] = v; }
    std::vector<std::pair<int, int>> flip_pairs() const;
    void normalize();  // drop self-flips of singleton parts
};

Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges);
Graph complement(const Graph& g);
Graph apply_flip(const Graph& g, const FlipSpec& spec);
Graph disjoint_union(const Graph& a, const Graph& b);

// Induced subgraph on `vs` (kept in the given order); map[i] = original id of vertex i.
struct Induced {
    Graph g;
    std::vector<int> map;
};
Induced induced_subgraph(const Graph& g, const std::vector<int>& vs);
ColoredGraph induced_subgraph(const ColoredGraph& g, const std::vector<int>& vs);
Structure induced_subgraph(const Structure& s, const std::vector<int>& vs);
FlipSpec restrict_spec(const FlipSpec& spec, const std::vector<int>& vs);

std::vector<int> distances(const Graph& g, int v);
bool is_distance_r_independent(const Graph& g, const std::vector<int>& a, int r);
bool are_twins(const Graph& g, int u, int v);
std::vector<int> twin_having(const Graph& g);
std::vector<std::vector<int>> connected_components(const Graph& g);
bool is_connected(const Graph& g);
// Induced path whose vertex order is 0..n-1 along the path, up to reversal.
bool is_path_in_order(const Graph& g, const std::vector<int>& order);
bool is_path_graph(const Graph& g);

Structure to_structure(const Graph& g);
Structure to_structure(const ColoredGraph& g);
Graph to_graph(const Structure& s, const std::string& rel = "E");

}  // namespace shrub
