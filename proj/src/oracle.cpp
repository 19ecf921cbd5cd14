#include "smst/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "smst/cascade.hpp"
#include "smst/disjoint_set.hpp"

namespace smst {

namespace {

// Indices ordered by (weight, stream position); the stream position breaks
// ties so both algorithms see the exact same processing order.
std::vector<int> sorted_order(const std::vector<WeightedEdge>& edges) {
    std::vector<int> order(edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (edges[a].w != edges[b].w) return edges[a].w < edges[b].w;
        return a < b;
    });
    return order;
}

}  // namespace

SuccessiveMstResult oracle_successive_msts(const std::vector<WeightedEdge>& edges, int n,
                                           int k_max) {
    if (n < 2) throw std::invalid_argument("oracle_successive_msts: n must be >= 2");
    if (k_max < 1) throw std::invalid_argument("oracle_successive_msts: k_max must be >= 1");

    std::vector<int> remaining = sorted_order(edges);
    SuccessiveMstResult result;
    for (int level = 0; level < k_max; ++level) {
        DisjointSetForest forest(n);
        std::vector<int> tree;
        std::vector<int> rest;
        rest.reserve(remaining.size());
        for (int idx : remaining) {
            const auto& e = edges[idx];
            if (forest.unite(e.u, e.v)) {
                tree.push_back(idx);
            } else {
                rest.push_back(idx);
            }
        }
        result.spanning.push_back(static_cast<int>(tree.size()) == n - 1);
        result.trees.push_back(std::move(tree));
        remaining = std::move(rest);
    }
    return result;
}

SuccessiveMstResult cascade_successive_msts(const std::vector<WeightedEdge>& edges, int n,
                                            int k_max) {
    const std::vector<int> order = sorted_order(edges);
    CascadeState state(n, k_max);
    SuccessiveMstResult result;
    result.trees.resize(k_max);
    double t = 0.0;
    for (int idx : order) {
        const auto& e = edges[idx];
        t = std::max(t, e.w);  // any nondecreasing clock works for set recovery
        const int level = state.insert(e.u, e.v, t);
        if (level >= 0) result.trees[level].push_back(idx);
    }
    for (int k = 0; k < k_max; ++k) {
        result.spanning.push_back(static_cast<int>(result.trees[k].size()) == n - 1);
    }
    return result;
}

}  // namespace smst
