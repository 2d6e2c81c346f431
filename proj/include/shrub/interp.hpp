#pragma once

#include <functional>
#include <string>
#include <vector>

#include "shrub/logic.hpp"
#include "shrub/patterns.hpp"

namespace shrub {

// Graph-valued interpretation. The edge formula is read with free variables x ++ y and the
// output edge relation is phi(x,y) or phi(y,x), restricted to distinct tuples.
struct Interpretation {
    std::string name;
    int dim = 1;
    std::vector<std::string> x, y;
    Formula domain;
    Formula edge;

    Logic logic() const;
};

struct Transduction {
    int k = 0;
    Interpretation interp;
};

struct InterpretResult {
    Graph g;
    std::vector<std::vector<int>> tuples;  // output vertex -> input tuple
};

InterpretResult apply_interpretation(const Interpretation& I, const Structure& s, EvalOptions opt = {});
InterpretResult apply_interpretation(const Interpretation& I, const Graph& g, EvalOptions opt = {});

// phi_I with I(S) |= phi(a) iff S |= phi_I(a). A free variable v of phi becomes v (dim 1)
// or v.1 .. v.d.
Formula rewrite_through(const Interpretation& I, const Formula& phi);
std::vector<std::string> tuple_vars(const Interpretation& I, const std::string& v);

// Colours are one bitset per colour; a vertex may carry several.
InterpretResult apply_transduction(const Transduction& T, const Graph& g, const std::vector<Bits>& coloring,
                                   EvalOptions opt = {});
constexpr int kTransductionCap = 20;  // n * k
// Calls f for every colouring until it returns false.
void enumerate_transduction(const Transduction& T, const Graph& g,
                            const std::function<bool(const std::vector<Bits>&, const InterpretResult&)>& f);

// Built-ins. Each returns the same object on every call.
const Interpretation& identity_interpretation();
const Interpretation& complement_interpretation();
const Interpretation& order_to_path_interpretation();
const Interpretation& swimlane_interpretation();
const Interpretation& halfgraph_interpretation();
const Interpretation& combined_path_interpretation();
const Transduction& three_path_transduction();
const Interpretation& order_to_hstar_interpretation(Flavor f);
const Interpretation& deflip_nibble_interpretation();
const Interpretation* builtin_interpretation(const std::string& name);
std::vector<std::string> builtin_interpretation_names();

// Sentence separating the nibbles of a flipped mP_t (m >= 9).
Formula sep_tpt_sentence();

// Vertex set X u S of a flipped 5P_t, t >= 4.
std::vector<int> swimlane_core_subset(const PatternCoordinates& c);
// {a_3..a_{t+2}} u {b_1..b_{t+3}} of a clean flipped H_{t+3}.
std::vector<int> halfgraph_core_subset(const PatternCoordinates& c);
// Colours C_1, C_2, C_3 marking paths 1..3 of a flipped mP_t, m >= 3.
std::vector<Bits> three_path_coloring(const PatternCoordinates& c);

}  // namespace shrub
