#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace smst {

// Union-find with union by size and full path compression.
// Tracks component count and the largest component size, which the cascade
// samples constantly; both are O(1) reads.
class DisjointSetForest {
public:
    explicit DisjointSetForest(int n)
        : parent_(n), size_(n, 1), num_components_(n), max_component_(n > 0 ? 1 : 0) {
        if (n < 1) throw std::invalid_argument("DisjointSetForest: n must be >= 1");
        for (int v = 0; v < n; ++v) parent_[v] = v;
    }

    int n() const { return static_cast<int>(parent_.size()); }

    int find(int v) {
        check(v);
        int root = v;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[v] != root) {
            int next = parent_[v];
            parent_[v] = root;
            v = next;
        }
        return root;
    }

    // False (and no change) when u and v are already in one component.
    bool unite(int u, int v) {
        int ru = find(u);
        int rv = find(v);
        if (ru == rv) return false;
        if (size_[ru] < size_[rv]) std::swap(ru, rv);
        parent_[rv] = ru;
        size_[ru] += size_[rv];
        if (size_[ru] > max_component_) max_component_ = size_[ru];
        --num_components_;
        return true;
    }

    bool same_component(int u, int v) { return find(u) == find(v); }

    int component_size(int v) { return size_[find(v)]; }

    int num_components() const { return num_components_; }
    int max_component() const { return max_component_; }

    bool is_root(int v) const { return parent_[v] == v; }
    int root_size(int v) const { return size_[v]; }

private:
    void check(int v) const {
        if (v < 0 || v >= n()) throw std::out_of_range("DisjointSetForest: vertex out of range");
    }

    std::vector<std::int32_t> parent_;
    std::vector<std::int32_t> size_;
    int num_components_;
    int max_component_;
};

struct Susceptibility {
    double chi;      // (1/n) sum of squared component sizes
    double chi_hat;  // same with the largest component removed
};

// O(n) scan over roots.
inline Susceptibility compute_susceptibility(const DisjointSetForest& f) {
    const int n = f.n();
    double sum_sq = 0.0;
    for (int v = 0; v < n; ++v) {
        if (f.is_root(v)) {
            const double s = static_cast<double>(f.root_size(v));
            sum_sq += s * s;
        }
    }
    const double mx = static_cast<double>(f.max_component());
    return {sum_sq / n, (sum_sq - mx * mx) / n};
}

}  // namespace smst
