#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "shrub/canon.hpp"
#include "shrub/interp.hpp"
#include "shrub/verify.hpp"

using namespace shrub;

TEST_CASE("identity and complement") {
    auto g = path(5).g;
    CHECK(apply_interpretation(identity_interpretation(), g).g == g);
    CHECK(apply_interpretation(complement_interpretation(), g).g == complement(g));
}

TEST_CASE("order to path") {
    for (int t = 1; t <= 8; ++t)
        CHECK(oracle::is_path(apply_interpretation(order_to_path_interpretation(), linear_order(t)).g, t));
}

TEST_CASE("P3 passthrough of the combined interpretation") {
    auto g = path(3).g;
    CHECK(apply_interpretation(combined_path_interpretation(), g).g == g);
}

TEST_CASE("swimlane core on the unflipped 5P_t") {
    auto p = m_paths(5, 6);
    auto core = oracle::induced(p.g, swimlane_core_subset(p.coords));
    CHECK(oracle::twin_having_count(core) >= 8);
    CHECK(oracle::is_path(apply_interpretation(swimlane_interpretation(), core).g, 6));
}

TEST_CASE("half-graph core of every flavour") {
    for (auto f : Flavor::all()) {
        auto h = clean_flipped_half_graph(7, f);
        auto core = oracle::induced(h.g, halfgraph_core_subset(h.coords));
        CHECK(oracle::twin_having_count(core) == 4);
        CHECK(oracle::is_path(apply_interpretation(halfgraph_interpretation(), core).g, 4));
    }
}

TEST_CASE("three path transduction on an unflipped 3P_5") {
    auto p = m_paths(3, 5);
    auto out = apply_transduction(three_path_transduction(), p.g, three_path_coloring(p.coords));
    CHECK(oracle::is_path(out.g, 5));
}

TEST_CASE("rewriting through the complement") {
    auto phi = parse_formula("(exists z (and (E p z) (E z q)))");
    auto rw = rewrite_through(complement_interpretation(), phi);
    auto g = path(5).g;
    auto cg = complement(g);
    for (int p = 0; p < 5; ++p)
        for (int q = 0; q < 5; ++q) {
            Assignment a{{{"p", p}, {"q", q}}, {}};
            CHECK(evaluate(cg, phi, a) == evaluate(g, rw, a));
        }
}

TEST_CASE("rewriting a two-dimensional interpretation") {
    Interpretation I{"pairs", 2, {"x1", "x2"}, {"y1", "y2"}, parse_formula("(not (= x1 x2))"),
                     parse_formula("(or (= x1 y1) (= x2 y2))")};
    auto phi = parse_formula("(forall z (exists w (and (not (= z w)) (E z w))))");
    auto rw = rewrite_through(I, phi);
    std::mt19937_64 rng(2);
    for (int it = 0; it < 10; ++it) {
        auto g = random_graph(rng, 2 + (int)(rng() % 3));
        auto out = apply_interpretation(I, g);
        CHECK(evaluate(out.g, phi) == evaluate(g, rw));
    }
    CHECK(tuple_vars(I, "p") == std::vector<std::string>{"p.1", "p.2"});
}

TEST_CASE("MSO rewriting needs dimension one") {
    Interpretation I{"pairs", 2, {"x1", "x2"}, {"y1", "y2"}, f_true(), parse_formula("(= x1 y1)")};
    CHECK_THROWS_AS(rewrite_through(I, parse_formula("(existsSet X (card 0 2 X))")), FormulaError);
}

TEST_CASE("deflip on an unflipped 9P_3 nibble is the identity") {
    auto p = m_paths(9, 3);
    for (int i = 1; i <= 2; ++i) {
        auto nb = nibble(p.g, p.coords, i);
        CHECK(apply_interpretation(deflip_nibble_interpretation(), nb.g).g == nb.g);
    }
}

TEST_CASE("hstar interpretation") {
    for (auto f : Flavor::all()) {
        auto out = apply_interpretation(order_to_hstar_interpretation(f), linear_order(3)).g;
        CHECK(oracle::isomorphic(out, h_star(3, f).g));
    }
}

TEST_CASE("builtins by name") {
    for (auto& n : builtin_interpretation_names()) CHECK(builtin_interpretation(n) != nullptr);
    CHECK(builtin_interpretation("nope") == nullptr);
}
