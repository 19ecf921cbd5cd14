#pragma once

#include <vector>

#include "smst/grid_function.hpp"

namespace smst {

enum class GIntegrator { Euler, RK4 };

struct GSystemOptions {
    double dt = 1e-5;
    double horizon = 250.0;    // hard cap; flagged when hit first
    double tail_eps = 1e-7;    // stop once 1 - g_K drops below this
    double store_dt = 1e-3;    // sampling interval of the returned curves
    GIntegrator integrator = GIntegrator::Euler;
};

struct GSystem {
    int k_max = 1;
    GSystemOptions opts;
    std::vector<GridFunction> g;    // g[k-1] holds g_k
    std::vector<double> gamma_bar;  // per k, accumulated at the fine step
    double end_time = 0.0;
    bool tail_met = false;  // false when the horizon cut the run short
};

// Coupled occupancy system g_k' = (g_{k-1}^2 - g_k^2)/2 with g_0 == 1 and
// g_k(0) = 0, integrated at the fine step; gamma_bar accumulates
// (1/2) sum t (1 - g_k(t)^2) dt alongside the solve.
GSystem solve_g_system(int k_max, const GSystemOptions& opts = {});

// (1/2) * integral of t (1 - g(t)^2) dt over the curve's grid, trapezoidal.
double gamma_bar(const GridFunction& g);

struct ClosedBounds {
    int k = 1;
    int ell = 1;
    double gamma_lower = 0.0;       // 2k + 1 - ell - k/ell
    double gamma_upper = 0.0;       // 2k - 1 + ell + (k-1)/ell
    double gamma_lower_sqrt = 0.0;  // 2k - 2 sqrt(k)
    double gamma_upper_sqrt = 0.0;  // 2k + 2 sqrt(k)
    double Gamma_lower = 0.0;       // k^2
    double Gamma_upper = 0.0;       // k^2 + k
};

// ell defaults to ceil(sqrt(k)); must satisfy 1 <= ell <= k.
ClosedBounds closed_bounds(int k);
ClosedBounds closed_bounds(int k, int ell);

}  // namespace smst
