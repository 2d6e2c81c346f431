#pragma once

#include <optional>
#include <vector>

#include "shrub/graph.hpp"

namespace shrub {

struct WitnessReport {
    FlipSpec spec;
    // discerning[a][b] = some part whose flip row differs between a and b (-1 on the diagonal)
    std::vector<std::vector<int>> discerning;
};

Graph xor_graph(const Graph& g, const Graph& h);

// Unique irreducible flip witness with H = G xor (P, F).
WitnessReport irreducible_witness(const Graph& g, const Graph& h);

// Throws GraphError("not irreducible") when rows of q1 and q2 agree.
int discerning_part(const FlipSpec& spec, int q1, int q2);

constexpr int kBruteWitnessCap = 7;

// Exhaustive minimum-part witness, normalized; n <= 7.
WitnessReport brute_force_witness(const Graph& g, const Graph& h);

// Every partition P (as a label vector, restricted growth form) for which some F gives H = G xor (P,F).
std::vector<std::vector<int>> all_witness_partitions(const Graph& g, const Graph& h);

// True iff every part of `fine` lies inside a part of `coarse`.
bool refines(const VertexPartition& fine, const VertexPartition& coarse);

// F read off the symmetric difference D for partition p, or nullopt if D is not block constant.
std::optional<FlipSpec> spec_for_partition(const Graph& d, const VertexPartition& p);

}  // namespace shrub
