#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shrub/graph.hpp"
#include "shrub/patterns.hpp"

namespace shrub {

Graph set_complement(const Graph& g, const std::vector<int>& a);

// One level of an SC-depth decomposition: the vertices (ids of the input graph), the
// complemented set, and the components of G[vertices] xor A.
struct ScTrace {
    std::vector<int> vertices;
    std::vector<int> complemented;
    std::vector<ScTrace> parts;
    int depth = 0;
};

struct ScDepthResult {
    int depth = 0;
    ScTrace trace;
};

constexpr int kScDepthCap = 11;
ScDepthResult sc_depth(const Graph& g, int cap = kScDepthCap);
// Checks that the trace rebuilds g and that its depth bookkeeping is consistent.
bool replay_trace(const Graph& g, const ScTrace& t);

// Paths of an embedding: emb[i][j] is vertex j+1 of path i+1.
using PathEmbedding = std::vector<std::vector<int>>;

struct Certificate {
    enum class Kind { InfIndependent, InducedPattern } kind = Kind::InfIndependent;
    std::vector<int> independent;
    PathEmbedding paths;
};

// A must be distance-2t independent with |A| >= 2m.
Certificate flat_or_pattern(const Graph& g, const std::vector<int>& a, int t, int m);
bool validate_certificate(const Graph& g, const std::vector<int>& a, const Certificate& c, int t, int m);

// True iff the subgraph induced by emb is a layer flip of mP_t.
bool validate_flipped_mpt(const Graph& g, const PathEmbedding& emb);

// g restricted to the path vertices must be a flip of the disjoint paths with partition p.
PathEmbedding kflip_pigeonhole_extract(const Graph& g, const PathEmbedding& paths, const VertexPartition& p, int m);
// g = set-complementation (by a) of a flipped sP_t laid out by `paths`; returns t paths.
PathEmbedding setcomp_pigeonhole_extract(const Graph& g, const PathEmbedding& paths, const std::vector<int>& a,
                                         int t);

struct ComponentExtract {
    std::vector<int> component;
    PathEmbedding paths;
};
// g = flipped tP_s with s = t^2 + t - 1 laid out by `paths`.
ComponentExtract component_pigeonhole_extract(const Graph& g, const PathEmbedding& paths, int t);

// g = flip of the path 0 - 1 - ... - (t'-1) with t' = t * k^t * (t+1), by `spec` with <= k parts.
PathEmbedding path_to_swimlane_extract(const Graph& g, const FlipSpec& spec, int t, int k);

enum class CrossingKind { Star, Clique, Rook };
// Vertices inducing P_t in star_crossing(r,t), clique_crossing(r,t) or rook(t).
std::vector<int> crossing_path_embedding(CrossingKind kind, int r, int t);

constexpr int kInducedCap = 16;
std::optional<std::vector<int>> contains_induced(const Graph& g, const Graph& h, int cap = kInducedCap);

struct PatternMatch {
    FamilyMember member;
    std::vector<int> embedding;
};
// family: "Ht" (uses t) or "mPt" (uses m, t)
std::optional<PatternMatch> find_flipped_pattern(const Graph& g, const std::string& family, int m, int t);

}  // namespace shrub
