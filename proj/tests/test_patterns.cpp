#include <doctest.h>

#include "oracles.hpp"
#include "shrub/patterns.hpp"

using namespace shrub;

TEST_CASE("flipped mP_t matches the definition") {
    auto fp = flipped_m_paths(3, 8, {{2, 3}, {4, 7}, {7, 7}});
    auto& c = fp.coords;
    CHECK(fp.g.n() == 24);
    for (int u = 0; u < 24; ++u)
        for (int v = u + 1; v < 24; ++v) {
            auto a = c.coord[u], b = c.coord[v];
            bool base = a[0] == b[0] && std::abs(a[1] - b[1]) == 1;
            std::pair<int, int> l = std::minmax(a[1], b[1]);
            bool flip = l == std::pair{2, 3} || l == std::pair{4, 7} || l == std::pair{7, 7};
            CHECK(fp.g.adj(u, v) == (base != flip));
        }
}

TEST_CASE("half-graph adjacency") {
    auto h = half_graph(4);
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) CHECK(h.g.adj(h.coords.at(0, i), h.coords.at(1, j)) == (i <= j));
    CHECK(h.g.edge_count() == 10);
}

TEST_CASE("family sizes") {
    CHECK(enumerate_flipped_mpt(2, 3).size() == 64);
    CHECK(enumerate_flipped_ht(3).size() == 8);
    CHECK(enumerate_flipped_mpt(2, 3, true).size() < 64);
}

TEST_CASE("clean core of every flipped H_{t+1}") {
    for (int t = 1; t <= 6; ++t)
        for (int mask = 0; mask < 8; ++mask) {
            auto core = clean_core(flipped_half_graph(t + 1, mask & 1, mask & 2, mask & 4));
            Flavor f;
            CHECK(is_clean_flipped_half_graph(core.g, core.coords, &f));
            CHECK(core.g.n() == 2 * t);
        }
}

TEST_CASE("crossings and rook") {
    auto s = star_crossing(2, 3);
    CHECK(s.g.n() == 3 + 2 * 9 + 3);
    auto r = rook(3);
    CHECK(r.g.degree(0) == 4);
    auto cc = clique_crossing(1, 3);
    CHECK(cc.g.n() == 15);
}

TEST_CASE("nibbles") {
    auto p = m_paths(3, 3);
    auto n1 = nibble(p.g, p.coords, 1), n2 = nibble(p.g, p.coords, 2);
    CHECK(n1.g.n() == 7);
    CHECK(n1.g.edge_count() == 4);
    CHECK(n2.g.edge_count() == 4);
    CHECK(connected_components(n1.g).size() == 3);
    CHECK_THROWS_AS(nibble(p.g, p.coords, 3), GraphError);
}

TEST_CASE("h-star is the documented subset") {
    for (auto f : Flavor::all()) {
        auto h = h_star(3, f);
        CHECK(h.g.n() == 9);
        CHECK(oracle::twin_having_count(h.g) == 4);
    }
}

TEST_CASE("match_flipped_mpt") {
    auto fp = flipped_m_paths(2, 4, {{1, 3}, {2, 2}});
    std::vector<std::vector<int>> emb(2, std::vector<int>(4));
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 4; ++j) emb[i - 1][j - 1] = fp.coords.at(i, j);
    CHECK(match_flipped_mpt(fp.g, emb).has_value());
    std::swap(emb[0][0], emb[0][2]);
    CHECK(oracle::layer_flipped_paths(fp.g, emb) == match_flipped_mpt(fp.g, emb).has_value());
}
