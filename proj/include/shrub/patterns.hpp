#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shrub/graph.hpp"

namespace shrub {

enum class PatternKind { MPt, HalfGraph, Crossing, Rook, HStar, LinearOrder };

std::string kind_name(PatternKind k);

// Coordinates are 1-indexed.
//   MPt:        (i, j)        path i, position j
//   HalfGraph:  (side, i)     side 0 = a_i, side 1 = b_i
//   HStar:      (side, i)     same naming as the clean flipped H_{t+3} it is cut from
//   Crossing:   (layer, i, j) layer 0 = a_i, layer r+1 = b_j, 1..r = vertex `layer` of pi_{i,j}
//   Rook:       (i, j)
//   LinearOrder:(i)
using Coord = std::array<int, 3>;

struct PatternCoordinates {
    PatternKind kind = PatternKind::MPt;
    int m = 0, t = 0, r = 0;
    std::vector<Coord> coord;        // vertex -> coordinate
    std::map<Coord, int> index;      // coordinate -> vertex
    std::vector<std::vector<int>> layers;

    int at(int a, int b, int c = 0) const;
    bool has(int a, int b, int c = 0) const { return index.count({a, b, c}) > 0; }
    std::string label(int v) const;
    void add(int v, Coord c);
    PatternCoordinates restrict_to(const std::vector<int>& vs) const;
};

struct Pattern {
    Graph g;
    PatternCoordinates coords;
};

struct FlippedPattern {
    Graph g;
    PatternCoordinates coords;
    FlipSpec spec;
};

// Flavor of a clean flipped half-graph: which of (A,A), (B,B) are flipped.
struct Flavor {
    bool aa = false, bb = false;
    std::string name() const;
    static Flavor parse(const std::string& s);  // "", "none", "AA", "BB", "AABB"
    static std::vector<Flavor> all();
};

Pattern path(int t);
Pattern m_paths(int m, int t);
// flips are pairs of 1-indexed layers
FlippedPattern flipped_m_paths(int m, int t, const std::vector<std::pair<int, int>>& flips);
FlipSpec layer_spec(const PatternCoordinates& c, const std::vector<std::pair<int, int>>& flips);

Pattern half_graph(int t);
// part 0 = A, part 1 = B
FlippedPattern flipped_half_graph(int t, bool aa, bool bb, bool ab);
Pattern clean_flipped_half_graph(int t, Flavor f);
// Clean flipped H_t inside a flipped H_{t+1}; coordinates relabelled to the clean H_t.
Pattern clean_core(const FlippedPattern& h);
bool is_clean_flipped_half_graph(const Graph& g, const PatternCoordinates& c, Flavor* flavor = nullptr);

Pattern star_crossing(int r, int t);
Pattern clique_crossing(int r, int t);
Pattern rook(int t);

Pattern h_star(int t, Flavor f);

Pattern nibble(const Graph& g, const PatternCoordinates& c, int i);
Structure linear_order(int t);

struct FamilyMember {
    Graph g;
    FlipSpec spec;
};
constexpr int kFamilyPairCap = 21;
std::vector<FamilyMember> enumerate_flipped_mpt(int m, int t, bool dedupe = false, int pair_cap = kFamilyPairCap);
std::vector<FamilyMember> enumerate_flipped_ht(int t, bool dedupe = false);

// Layer-flip relation (1-indexed layer pairs) from bit mask over the t(t+1)/2 unordered pairs.
std::vector<std::pair<int, int>> layer_pairs_from_mask(int t, unsigned long long mask);

// If the subgraph of g induced by emb (emb[i][j] = vertex for path i+1, position j+1) is a
// layer flip of mP_t, return the layer flip relation.
std::optional<FlipSpec> match_flipped_mpt(const Graph& g, const std::vector<std::vector<int>>& emb);

}  // namespace shrub
