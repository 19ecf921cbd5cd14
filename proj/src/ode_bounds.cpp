#include "smst/ode_bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace smst {

namespace {

// dg_k = (g_{k-1}^2 - g_k^2)/2 with the g_0 == 1 boundary.
void derivs(const std::vector<double>& g, std::vector<double>& dg) {
    double prev = 1.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        dg[k] = 0.5 * (prev * prev - g[k] * g[k]);
        prev = g[k];
    }
}

}  // namespace

GSystem solve_g_system(int k_max, const GSystemOptions& opts) {
    if (k_max < 1) throw std::invalid_argument("solve_g_system: k_max must be >= 1");
    if (opts.dt <= 0.0) throw std::invalid_argument("solve_g_system: dt must be positive");

    GSystem sys;
    sys.k_max = k_max;
    sys.opts = opts;
    sys.gamma_bar.assign(k_max, 0.0);
    sys.g.assign(k_max, GridFunction{0.0, opts.store_dt, {}});

    std::vector<double> g(k_max, 0.0);
    std::vector<double> dg(k_max), k1(k_max), k2(k_max), k3(k_max), k4(k_max), tmp(k_max);

    const auto store_every = static_cast<std::int64_t>(std::llround(opts.store_dt / opts.dt));
    const auto max_steps = static_cast<std::int64_t>(std::ceil(opts.horizon / opts.dt));

    for (int k = 0; k < k_max; ++k) sys.g[k].values.push_back(0.0);

    double t = 0.0;
    std::int64_t step = 0;
    while (step < max_steps) {
        // Left-endpoint accumulation of (1/2) t (1 - g^2) dt, matching the
        // discrete sum the solver grid defines.
        for (int k = 0; k < k_max; ++k)
            sys.gamma_bar[k] += 0.5 * t * (1.0 - g[k] * g[k]) * opts.dt;

        if (opts.integrator == GIntegrator::Euler) {
            derivs(g, dg);
            for (int k = 0; k < k_max; ++k) g[k] += opts.dt * dg[k];
        } else {
            derivs(g, k1);
            for (int k = 0; k < k_max; ++k) tmp[k] = g[k] + 0.5 * opts.dt * k1[k];
            derivs(tmp, k2);
            for (int k = 0; k < k_max; ++k) tmp[k] = g[k] + 0.5 * opts.dt * k2[k];
            derivs(tmp, k3);
            for (int k = 0; k < k_max; ++k) tmp[k] = g[k] + opts.dt * k3[k];
            derivs(tmp, k4);
            for (int k = 0; k < k_max; ++k)
                g[k] += opts.dt / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
        }
        ++step;
        t = opts.dt * static_cast<double>(step);

        if (step % store_every == 0) {
            for (int k = 0; k < k_max; ++k) sys.g[k].values.push_back(g[k]);
        }
        if (1.0 - g[k_max - 1] < opts.tail_eps) {
            sys.tail_met = true;
            break;
        }
    }
    sys.end_time = t;
    return sys;
}

double gamma_bar(const GridFunction& g) {
    if (g.values.size() < 2) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < g.values.size(); ++i) {
        const double t = g.t_at(i);
        const double integrand = 0.5 * t * (1.0 - g.values[i] * g.values[i]);
        sum += (i == 0 || i + 1 == g.values.size()) ? 0.5 * integrand : integrand;
    }
    return sum * g.dt;
}

ClosedBounds closed_bounds(int k) {
    return closed_bounds(k, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(k)))));
}

ClosedBounds closed_bounds(int k, int ell) {
    if (k < 1) throw std::invalid_argument("closed_bounds: k must be >= 1");
    if (ell < 1 || ell > k) throw std::invalid_argument("closed_bounds: need 1 <= ell <= k");
    ClosedBounds b;
    b.k = k;
    b.ell = ell;
    const double kd = k, ld = ell;
    b.gamma_lower = 2.0 * kd + 1.0 - ld - kd / ld;
    b.gamma_upper = 2.0 * kd - 1.0 + ld + (kd - 1.0) / ld;
    b.gamma_lower_sqrt = 2.0 * kd - 2.0 * std::sqrt(kd);
    b.gamma_upper_sqrt = 2.0 * kd + 2.0 * std::sqrt(kd);
    b.Gamma_lower = kd * kd;
    b.Gamma_upper = kd * kd + kd;
    return b;
}

}  // namespace smst
