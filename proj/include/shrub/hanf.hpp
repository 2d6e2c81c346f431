#pragma once

#include <map>
#include <string>
#include <vector>

#include "shrub/canon.hpp"
#include "shrub/graph.hpp"
#include "shrub/patterns.hpp"

namespace shrub {

// Induced substructure on N_r[v] with v as the constant.
Structure marked_ball(const ColoredGraph& g, int v, int r);

struct BallCensus {
    int radius = 0;
    std::string source;
    std::map<std::string, int> counts;  // hex canonical form -> number of centres
    bool operator==(const BallCensus& o) const { return counts == o.counts; }
};

// Throws CanonOverflow naming the vertex whose ball is too large.
BallCensus ball_census(const ColoredGraph& g, int r, int cap = kCanonCap);
std::string ball_type(const ColoredGraph& g, int v, int r, int cap = kCanonCap);

// 3^(q-1); q = 0 maps to -1 (compare sizes only).
int hanf_radius(int q);

enum class HanfVerdict { EquivalentByHanf, Inconclusive };
std::string verdict_name(HanfVerdict v);
HanfVerdict hanf_implies_equiv(const ColoredGraph& g1, const ColoredGraph& g2, int q, int cap = kCanonCap);

// G_i+: nibble_i of the de-flipped mP_t with layer j coloured j. Vertex ids follow nibble(g, c, i).
struct ColoredNibble {
    ColoredGraph g;
    PatternCoordinates coords;
};
ColoredNibble layer_color_and_deflip(const Graph& g, const PatternCoordinates& c, int i);

// f in path coordinates, keyed by (path, position).
std::map<std::pair<int, int>, std::pair<int, int>> nibble_bijection(int m, int t, int q);

struct NibbleReport {
    int q = 0, m = 0, t = 0, radius = 0;
    bool pointwise = false;  // marked balls of v and f(v) have the same type
    bool census = false;
    bool ef = false;
    int first_mismatch = -1;  // vertex of G_1+ whose ball type differs from f's image
    BallCensus census1, census2;
    bool pass() const { return pointwise && census && ef; }
};
NibbleReport verify_nibble_equiv(const Graph& g, const PatternCoordinates& c, int q, bool run_ef = true);

}  // namespace shrub
