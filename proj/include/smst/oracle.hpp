#pragma once

#include <vector>

namespace smst {

// One parallel edge of a weighted multigraph; its position in the input
// sequence is its identity, so repeated (u,v) pairs stay distinguishable.
struct WeightedEdge {
    int u;
    int v;
    double w;
};

struct SuccessiveMstResult {
    // Per level, the input indices of the accepted edges, in acceptance order.
    std::vector<std::vector<int>> trees;
    // Whether that level reached n-1 edges (a full spanning tree).
    std::vector<bool> spanning;
};

// Reference algorithm: sort, run plain Kruskal for T_1, delete its edges,
// repeat k_max times. Levels where the residual graph is disconnected return
// the maximal forest found, flagged spanning=false.
SuccessiveMstResult oracle_successive_msts(const std::vector<WeightedEdge>& edges, int n,
                                           int k_max);

// The same edge sets computed by streaming the edges through a CascadeState
// in weight order. oracle_successive_msts is the ground truth it is tested
// against.
SuccessiveMstResult cascade_successive_msts(const std::vector<WeightedEdge>& edges, int n,
                                            int k_max);

}  // namespace smst
