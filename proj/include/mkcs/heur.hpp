#pragma once

#include <vector>

#include "mkcs/graph.hpp"

namespace mkcs::heur {

/// Partial k-coloring: color[i] in {0..k}, 0 = uncolored. Proper means no
/// edge joins two equal nonzero colors.
struct ColorAssignment {
    std::vector<int> color;
    int k = 0;
    int value() const;
    bool proper(const Graph& g) const;
};

/// Greedy maximal stable set: repeatedly take a minimum-residual-degree
/// vertex (ties by largest support = sum of neighbors' residual degrees,
/// then lowest index) and delete its closed neighborhood.
std::vector<int> min_degree_stable_set(const Graph& g);

/// Stable-set heuristic on K_k square-product g, mapped back to colors.
ColorAssignment product_heuristic_lb(const Graph& g, int k, long long vertex_cap = 2000000);

struct TabuParams {
    int max_iterations = 20000;
    int tenure = 8;
    unsigned rng_seed = 0;  // seed != 0 shuffles the greedy scan inside equal-degree runs
    int stall_limit = 2000;
};

/// Greedy ascending-degree initialization followed by tabu search that
/// uncolors the colored vertex with the most uncolored neighbors and tries
/// to color everything else; best proper assignment found is returned.
ColorAssignment tabu_lb(const Graph& g, int k, const TabuParams& params = {});

struct ExactCaps {
    int max_n = 20;
    int max_k = 4;
};

struct ExactResult {
    int value = 0;
    ColorAssignment witness;
};

/// Exact alpha_k by branch-and-prune over vertex subsets with incremental
/// k-colorability checks (colors introduced in increasing order).
ExactResult exact_alpha_k(const Graph& g, int k, const ExactCaps& caps = {});

}  // namespace mkcs::heur
