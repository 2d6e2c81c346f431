#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "shrub/io.hpp"

namespace shrub {

constexpr uint64_t kDefaultSeed = 20240611;

// Unset values (-1) fall back to each lemma's default.
struct VerifyParams {
    int q = -1, m = -1, t = -1, k = -1, r = -1;
    int count = -1;
    uint64_t seed = kDefaultSeed;
    bool exhaustive = false;
    bool quick = false;
};

struct LemmaReport {
    std::string id;
    Json params = Json::object();
    long long instances = 0, passed = 0, failed = 0;
    Json counterexample;  // null when nothing failed
    std::string error;    // resource-guard or precondition abort
    bool aborted = false;
    double seconds = 0;

    bool ok() const { return failed == 0 && !aborted; }
    std::string status() const;
    Json to_json() const;
};

const std::vector<std::string>& lemma_ids();
LemmaReport run_lemma(const std::string& id, const VerifyParams& p);
std::vector<LemmaReport> run_suite(const VerifyParams& p);

// Seeded helpers shared with the CLI.
std::vector<std::pair<int, int>> random_layer_flips(std::mt19937_64& rng, int t);
Graph random_graph(std::mt19937_64& rng, int n, double p = 0.5);
std::vector<std::pair<int, int>> parse_layer_flips(const std::string& text);  // "L2:L3,L4:L7"

}  // namespace shrub
