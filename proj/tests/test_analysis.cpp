#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "shrub/analysis.hpp"
#include "shrub/verify.hpp"

using namespace shrub;

TEST_CASE("SC-depth of small graphs") {
    CHECK(sc_depth(Graph(1)).depth == 0);
    CHECK(sc_depth(Graph(4)).depth == 1);
    CHECK(sc_depth(path(3).g).depth == 2);
    CHECK(sc_depth(complement(Graph(4))).depth == 1);
    CHECK_THROWS_AS(sc_depth(Graph(12)), ResourceGuard);
}

TEST_CASE("SC-depth agrees with the oracle") {
    std::mt19937_64 rng(9);
    oracle::ScOracle o;
    for (int it = 0; it < 60; ++it) {
        auto g = random_graph(rng, 1 + (int)(rng() % 6));
        auto r = sc_depth(g);
        CHECK(r.depth == o.depth(g));
        CHECK(replay_trace(g, r.trace));
    }
}

TEST_CASE("replay rejects a tampered trace") {
    auto g = path(4).g;
    auto r = sc_depth(g);
    auto bad = r.trace;
    bad.depth += 1;
    CHECK(!replay_trace(g, bad));
}

TEST_CASE("contains_induced agrees with exhaustive search") {
    std::mt19937_64 rng(4);
    for (int it = 0; it < 100; ++it) {
        auto g = random_graph(rng, 3 + (int)(rng() % 5));
        auto h = random_graph(rng, 1 + (int)(rng() % 4));
        auto e = contains_induced(g, h);
        CHECK(e.has_value() == oracle::contains_induced(g, h));
        if (e) CHECK(oracle::induced(g, *e) == h);
    }
}

TEST_CASE("flat or pattern on disjoint stars") {
    // four roots, each the centre of a star: X(a) at distance 1 is nonempty for t = 2
    Graph g(12);
    for (int i = 0; i < 4; ++i)
        for (int k = 1; k <= 2; ++k) g.add_edge(3 * i, 3 * i + k);
    std::vector<int> a{0, 3, 6, 9};
    auto c = flat_or_pattern(g, a, 2, 2);
    CHECK(c.kind == Certificate::Kind::InducedPattern);
    CHECK(validate_certificate(g, a, c, 2, 2));
    CHECK(oracle::induced_paths(g, c.paths));
    auto iso = flat_or_pattern(Graph(4), {0, 1, 2, 3}, 2, 2);
    CHECK(iso.kind == Certificate::Kind::InfIndependent);
    CHECK_THROWS_AS(flat_or_pattern(path(4).g, {0, 1, 2, 3}, 2, 2), GraphError);
}

TEST_CASE("crossing embeddings induce paths") {
    for (int r = 1; r <= 3; ++r)
        for (int t = 2; t <= 5; ++t) {
            for (auto kind : {CrossingKind::Star, CrossingKind::Clique}) {
                auto p = kind == CrossingKind::Star ? star_crossing(r, t) : clique_crossing(r, t);
                CHECK(oracle::induced_paths(p.g, {crossing_path_embedding(kind, r, t)}));
            }
            CHECK(oracle::induced_paths(rook(t).g, {crossing_path_embedding(CrossingKind::Rook, r, t)}));
        }
}

TEST_CASE("find flipped pattern") {
    auto fp = flipped_m_paths(2, 3, {{1, 2}});
    auto m = find_flipped_pattern(fp.g, "mPt", 2, 3);
    REQUIRE(m.has_value());
    CHECK(oracle::induced(fp.g, m->embedding) == m->member.g);
    CHECK(!find_flipped_pattern(Graph(3), "Ht", 0, 2).has_value());
}

TEST_CASE("pigeonhole preconditions") {
    auto fp = flipped_m_paths(2, 5, {});
    PathEmbedding emb{{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}};
    CHECK_THROWS_AS(component_pigeonhole_extract(fp.g, emb, 3), GraphError);
    CHECK_THROWS_AS(path_to_swimlane_extract(path(10).g, FlipSpec(VertexPartition::from_labels(std::vector<int>(10, 0))), 2, 2),
                    GraphError);
}
