#pragma once

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "shrub/graph.hpp"

namespace shrub {

enum class Op {
    True, False,
    Rel,      // name(vars[0], vars[1])
    Eq,       // vars[0] = vars[1]
    Color,    // C_a(vars[0])
    In,       // name(vars[0]), name a set variable
    Card,     // |name| = a mod b
    Not, And, Or, Implies, Iff, Xor,
    Exists, Forall,        // name bound
    ExistsSet, ForallSet,  // name bound
    Conn,     // vars = {x, y, u, v}: y reachable from x along kids[0](u, v)
};

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
    Op op;
    std::string name;
    std::vector<std::string> vars;
    int a = 0, b = 0;
    std::vector<Formula> kids;
};

enum class Logic { FO, MSO, CMSO };
std::string logic_name(Logic l);

struct FormulaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Builders.
Formula f_true();
Formula f_false();
Formula rel(const std::string& r, const std::string& x, const std::string& y);
Formula edge(const std::string& x, const std::string& y);
Formula eq(const std::string& x, const std::string& y);
Formula color(int k, const std::string& x);
Formula in(const std::string& set, const std::string& x);
Formula card(int r, int k, const std::string& set);
Formula neg(Formula f);
Formula conj(std::vector<Formula> fs);
Formula disj(std::vector<Formula> fs);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula fxor(Formula a, Formula b);
Formula exists(const std::string& v, Formula f);
Formula forall(const std::string& v, Formula f);
Formula exists_set(const std::string& v, Formula f);
Formula forall_set(const std::string& v, Formula f);
Formula conn(const std::string& x, const std::string& y, const std::string& u, const std::string& v, Formula body);

// Prefix syntax, see README.
Formula parse_formula(const std::string& text, const Signature* sig = nullptr);
std::string to_string(const Formula& f);

int quantifier_rank(const Formula& f);
Logic logic_of(const Formula& f);
std::set<std::string> free_element_vars(const Formula& f);
std::set<std::string> free_set_vars(const Formula& f);

// Capture-avoiding renaming of free element variables; bound variables get fresh names.
Formula substitute(const Formula& f, const std::map<std::string, std::string>& m);
// Replace every connectivity node by its set-quantifier definition.
Formula expand_conn(const Formula& f);
std::string fresh_name(const std::string& base);

struct EvalOptions {
    long long budget = 1LL << 30;
    bool native_conn = true;   // BFS for connectivity nodes
    bool guarded_sets = true;  // enumerate only subsets allowed by a leading guard conjunct
    bool memo = true;
};

struct Assignment {
    std::map<std::string, int> elem;
    std::map<std::string, Bits> sets;
};

// Compiled evaluator for one formula on one structure; reusable across assignments.
class Evaluator {
public:
    Evaluator(const Structure& s, const Formula& f, std::vector<std::string> elem_params = {},
              std::vector<std::string> set_params = {}, EvalOptions opt = {});
    ~Evaluator();
    Evaluator(const Evaluator&) = delete;
    Evaluator& operator=(const Evaluator&) = delete;

    bool operator()(const std::vector<int>& elems = {}, const std::vector<Bits>& sets = {});
    long long steps() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

bool evaluate(const Structure& s, const Formula& f, const Assignment& a = {}, EvalOptions opt = {});
bool evaluate(const Graph& g, const Formula& f, const Assignment& a = {}, EvalOptions opt = {});

constexpr int kEfCap = 200;
// Duplicator wins the q-round EF game on (s1, s2).
bool fo_q_equivalent(const Structure& s1, const Structure& s2, int q, int cap = kEfCap);

// a_1..a_l with s |= phi(a_i, a_j) iff i <= j; phi has free variables x and y.
std::optional<std::vector<int>> order_property_witness(const Structure& s, const Formula& phi, int l,
                                                       const std::string& x = "x", const std::string& y = "y",
                                                       int cap = kEfCap);

// Named formulas.
Formula twins_formula(const std::string& x, const std::string& y);
Formula phi_even();
Formula phi_even_at(const std::string& x);  // phi_even relativised to the component of x
Formula phi_same_parity();

// Bounded enumeration of sentences of rank <= q (boolean combinations of width 2 at each level).
std::optional<Formula> find_distinguishing_sentence(const Structure& s1, const Structure& s2, int q);

struct RandomFormulaOptions {
    Logic logic = Logic::FO;
    int depth = 3;
    int max_quantifiers = 3;
    std::vector<std::string> relations{"E"};
    int colors = 0;
};
Formula random_formula(std::mt19937_64& rng, const std::vector<std::string>& free_vars,
                       const RandomFormulaOptions& opt);

}  // namespace shrub
