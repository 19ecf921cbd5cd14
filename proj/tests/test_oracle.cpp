#include <doctest.h>

#include <algorithm>
#include <vector>

#include "smst/oracle.hpp"
#include "smst/rng.hpp"

using namespace smst;

namespace {

std::vector<int> sorted_copy(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("triangle: T1 takes the two cheap edges, T2 is only a partial forest") {
    const std::vector<WeightedEdge> edges{{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 3.0}};
    const auto res = oracle_successive_msts(edges, 3, 2);
    REQUIRE(res.trees.size() == 2);
    CHECK(sorted_copy(res.trees[0]) == std::vector<int>{0, 1});
    CHECK(res.spanning[0]);
    CHECK(res.trees[1] == std::vector<int>{2});
    CHECK_FALSE(res.spanning[1]);
}

TEST_CASE("K4 with distinct weights: level 1 is plain Kruskal") {
    // Edges of K4; weights chosen so the MST is {01, 12, 23}.
    const std::vector<WeightedEdge> edges{
        {0, 1, 0.1}, {0, 2, 0.9}, {0, 3, 0.8}, {1, 2, 0.2}, {1, 3, 0.7}, {2, 3, 0.3}};
    const auto res = oracle_successive_msts(edges, 4, 1);
    CHECK(sorted_copy(res.trees[0]) == std::vector<int>{0, 3, 5});
    CHECK(res.spanning[0]);
}

TEST_CASE("cascade replay equals repeated Kruskal-with-deletion on random multigraphs") {
    Rng rng(777);
    int checked = 0;
    for (int instance = 0; instance < 200; ++instance) {
        const int n = 2 + static_cast<int>(rng.uniform_below(49));
        const int k_max = 1 + static_cast<int>(rng.uniform_below(5));
        // Enough edges that early levels usually span; multi-edges arise
        // naturally from repeated uniform pairs.
        const int m = static_cast<int>(rng.uniform_below(4 * k_max * n + 8)) + 1;
        std::vector<WeightedEdge> edges;
        edges.reserve(m);
        for (int i = 0; i < m; ++i) {
            const int u = static_cast<int>(rng.uniform_below(n));
            int v = u;
            while (v == u) v = static_cast<int>(rng.uniform_below(n));
            edges.push_back({u, v, rng.next_double()});
        }
        const auto expected = oracle_successive_msts(edges, n, k_max);
        const auto actual = cascade_successive_msts(edges, n, k_max);
        REQUIRE(expected.trees.size() == actual.trees.size());
        for (int k = 0; k < k_max; ++k) {
            REQUIRE(sorted_copy(expected.trees[k]) == sorted_copy(actual.trees[k]));
            REQUIRE(expected.spanning[k] == actual.spanning[k]);
        }
        ++checked;
    }
    CHECK(checked == 200);
}

TEST_CASE("tie weights are broken by stream position in both algorithms") {
    // All weights equal: order of arrival decides everything.
    std::vector<WeightedEdge> edges;
    Rng rng(31);
    const int n = 12;
    for (int i = 0; i < 200; ++i) {
        const int u = static_cast<int>(rng.uniform_below(n));
        int v = u;
        while (v == u) v = static_cast<int>(rng.uniform_below(n));
        edges.push_back({u, v, 0.25});
    }
    const auto expected = oracle_successive_msts(edges, n, 3);
    const auto actual = cascade_successive_msts(edges, n, 3);
    for (int k = 0; k < 3; ++k) CHECK(sorted_copy(expected.trees[k]) == sorted_copy(actual.trees[k]));
}
