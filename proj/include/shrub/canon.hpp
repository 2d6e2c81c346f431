#pragma once

#include <string>

#include "shrub/graph.hpp"

namespace shrub {

struct CanonOverflow : ResourceGuard {
    using ResourceGuard::ResourceGuard;
};

constexpr int kCanonCap = 10;

// Byte string equal for two structures iff they are isomorphic (colors and constant respected).
// Colour refinement first; the exhaustive search over refined cells is allowed only when the
// universe, or the union of non-singleton cells after refinement, has at most `cap` vertices.
std::string canonical_form(const Structure& s, int cap = kCanonCap);
std::string canonical_form(const Graph& g, int cap = kCanonCap);

bool isomorphic(const Graph& a, const Graph& b, int cap = kCanonCap);
std::string to_hex(const std::string& bytes);

}  // namespace shrub
