#include "smst/rho_numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace smst {

namespace {

std::size_t grid_points(double window, double dt) {
    return static_cast<std::size_t>(std::llround(window / dt)) + 1;
}

double solve_rho1_at(double t) {
    if (t <= 1.0) return 0.0;
    // Root of h(r) = 1 - exp(-t r) - r in (0, 1); h > 0 left of the root.
    double lo = 1e-16, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double h = 1.0 - std::exp(-t * mid) - mid;
        (h > 0.0 ? lo : hi) = mid;
        if (hi - lo < 1e-12) break;
    }
    return 0.5 * (lo + hi);
}

// The measure behind a distribution grid: an atom of mass values[0] at the
// grid origin plus one increment per cell, placed per the weighting rule.
struct CellMeasure {
    double atom_mass;
    double atom_pos;
    std::vector<double> mass;  // per cell j: values[j+1] - values[j]
    std::vector<double> pos;   // placement of that mass
    // Number of cells whose mass sits at or below grid point i.
    std::size_t cells_below(std::size_t i, CellWeighting w) const {
        if (w == CellWeighting::LeftEndpoint) return std::min(i + 1, mass.size());
        return std::min(i, mass.size());
    }
};

CellMeasure make_measure(const GridFunction& mu, CellWeighting w) {
    CellMeasure m;
    m.atom_mass = mu.values.empty() ? 0.0 : mu.values.front();
    m.atom_pos = mu.t0;
    const std::size_t cells = mu.values.size() >= 2 ? mu.values.size() - 1 : 0;
    m.mass.resize(cells);
    m.pos.resize(cells);
    for (std::size_t j = 0; j < cells; ++j) {
        m.mass[j] = mu.values[j + 1] - mu.values[j];
        switch (w) {
            case CellWeighting::Midpoint: m.pos[j] = mu.t_at(j) + 0.5 * mu.dt; break;
            case CellWeighting::LeftEndpoint: m.pos[j] = mu.t_at(j); break;
            case CellWeighting::RightEndpoint: m.pos[j] = mu.t_at(j + 1); break;
        }
    }
    return m;
}

// f sampled at the cell's mass position, consistent with the placement rule.
inline double cell_value(const std::vector<double>& f, std::size_t j, CellWeighting w) {
    switch (w) {
        case CellWeighting::Midpoint: return 0.5 * (f[j] + f[j + 1]);
        case CellWeighting::LeftEndpoint: return f[j];
        default: return f[j + 1];
    }
}

}  // namespace

GridFunction rho1_closed_form(double t0, double dt, double window) {
    GridFunction g;
    g.t0 = t0;
    g.dt = dt;
    g.values.resize(grid_points(window, dt));
    for (std::size_t i = 0; i < g.values.size(); ++i) g.values[i] = solve_rho1_at(g.t_at(i));
    return g;
}

GridFunction rho0_step(double dt, double window) {
    GridFunction g;
    g.t0 = 0.0;
    g.dt = dt;
    g.values.assign(grid_points(window, dt), 1.0);
    return g;
}

namespace {

// Hilbert-Schmidt norm of the discrete kernel (t - max(x,y))_+ over the cell
// measure; it dominates the operator norm, so hs <= 1 certifies that the
// largest fixed point is identically zero. For an atom-only measure it equals
// the operator norm exactly.
double kernel_hs_norm(double t, const CellMeasure& m) {
    double below = m.atom_mass;  // mass strictly below the current position
    const double atom_kernel = std::max(t - m.atom_pos, 0.0);
    double hs = atom_kernel * atom_kernel * m.atom_mass * m.atom_mass;
    for (std::size_t j = 0; j < m.mass.size(); ++j) {
        const double kernel = std::max(t - m.pos[j], 0.0);
        if (kernel == 0.0) break;
        hs += kernel * kernel * m.mass[j] * (2.0 * below + m.mass[j]);
        below += m.mass[j];
    }
    return std::sqrt(hs);
}

}  // namespace

GridFunction survival_fixed_point(double t, const GridFunction& mu, const GridFunction& init,
                                  const FixedPointOptions& opts) {
    if (init.values.size() != mu.values.size())
        throw std::invalid_argument("survival_fixed_point: init grid does not match mu");

    const CellMeasure measure = make_measure(mu, opts.weighting);
    const std::size_t m = mu.values.size();
    const std::size_t cells = measure.mass.size();

    GridFunction f = init;
    f.t0 = mu.t0;
    f.dt = mu.dt;

    if (kernel_hs_norm(t, measure) <= 1.0) {
        // Subcritical: skip the (critically slow) iteration toward zero.
        f.values.assign(m, 0.0);
        return f;
    }

    std::vector<double> weighted(cells);       // mass_j * f at the mass position
    std::vector<double> suffix(cells + 1);     // sum_{j>=c} weighted_j * (t - pos_j)_+
    std::vector<double> prefix(cells + 1);     // sum_{j<c} weighted_j
    std::vector<double> next(m);

    double residual = 0.0;
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        for (std::size_t j = 0; j < cells; ++j)
            weighted[j] = measure.mass[j] * cell_value(f.values, j, opts.weighting);
        prefix[0] = 0.0;
        for (std::size_t j = 0; j < cells; ++j) prefix[j + 1] = prefix[j] + weighted[j];
        suffix[cells] = 0.0;
        for (std::size_t j = cells; j-- > 0;) {
            const double kernel = std::max(t - measure.pos[j], 0.0);
            suffix[j] = suffix[j + 1] + weighted[j] * kernel;
        }
        const double atom_term = measure.atom_mass * f.values[0];

        residual = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double x = mu.t_at(i);
            const std::size_t c = measure.cells_below(i, opts.weighting);
            const double tf = std::max(t - x, 0.0) * (atom_term + prefix[c]) + suffix[c];
            next[i] = -std::expm1(-tf);
            residual = std::max(residual, std::abs(next[i] - f.values[i]));
        }
        f.values.swap(next);
        if (residual <= opts.tol) return f;
    }
    throw ConvergenceError("survival_fixed_point: no convergence after max_iter sweeps",
                           residual, opts.max_iter);
}

RhoCurve next_rho(const GridFunction& mu, double shift, const FixedPointOptions& opts) {
    const CellMeasure measure = make_measure(mu, opts.weighting);
    const std::size_t cells = measure.mass.size();

    GridFunction out;
    out.t0 = mu.t0 + shift;
    out.dt = mu.dt;
    out.values.assign(mu.values.size(), 0.0);

    GridFunction profile = mu;  // reused as the warm start, f == 1 at the top
    profile.values.assign(mu.values.size(), 1.0);

    for (std::size_t i = out.values.size(); i-- > 0;) {
        const double t = out.t_at(i);
        profile = survival_fixed_point(t, mu, profile, opts);
        double integral = measure.atom_mass * profile.values[0];
        for (std::size_t j = 0; j < cells; ++j)
            integral += measure.mass[j] * cell_value(profile.values, j, opts.weighting);
        out.values[i] = integral;
    }
    return {out, out.first_time_above(1e-6)};
}

IntegralResult gamma_from_rho(const GridFunction& rho_prev, const GridFunction& rho_k) {
    IntegralResult res;
    const double h = rho_k.dt;
    const auto steps = static_cast<std::size_t>(std::llround(rho_k.t_end() / h));
    double sum = 0.0;
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = h * static_cast<double>(i);
        const double prev = rho_prev(t);
        const double cur = rho_k(t);
        const double integrand = 0.5 * (prev * prev - cur * cur) * t;
        sum += (i == 0 || i == steps) ? 0.5 * integrand : integrand;
    }
    res.value = sum * h;

    const double gap = 1.0 - rho_k.back();
    const double gap_prev = 1.0 - rho_prev.back();
    if (gap > 1e-4 || gap_prev > 1e-4) {
        res.truncated = true;
    }
    const double window = rho_k.t_end() - rho_k.t0;
    res.tail_residual = (1.0 - rho_k.back() * rho_k.back()) * rho_k.t_end() * window;
    return res;
}

double mass_integral(const GridFunction& rho_k) {
    const double h = rho_k.dt;
    const auto steps = static_cast<std::size_t>(std::llround(rho_k.t_end() / h));
    double sum = 0.0;
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = h * static_cast<double>(i);
        const double r = rho_k(t);
        const double integrand = 0.5 * (1.0 - r * r);
        sum += (i == 0 || i == steps) ? 0.5 * integrand : integrand;
    }
    return sum * h;
}

GridFunction edge_count_curve(const GridFunction& rho_prev) {
    GridFunction out;
    out.t0 = 0.0;
    out.dt = rho_prev.dt;
    const auto steps = static_cast<std::size_t>(std::llround(rho_prev.t_end() / out.dt));
    out.values.resize(steps + 1);
    double acc = 0.0;
    double prev_sq = rho_prev(0.0) * rho_prev(0.0);
    out.values[0] = 0.0;
    for (std::size_t i = 1; i <= steps; ++i) {
        const double r = rho_prev(out.dt * static_cast<double>(i));
        const double sq = r * r;
        acc += 0.25 * (prev_sq + sq) * out.dt;  // trapezoid cell of rho^2 / 2
        out.values[i] = acc;
        prev_sq = sq;
    }
    return out;
}

GridFunction align_translate(const GridFunction& rho_k) {
    const double target = 1.0 - std::exp(-1.0);
    const auto& v = rho_k.values;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] >= target && v[i - 1] < target) {
            const double frac = (target - v[i - 1]) / (v[i] - v[i - 1]);
            const double t_star = rho_k.t_at(i - 1) + frac * rho_k.dt;
            return rho_k.shifted(4.0 - t_star);
        }
    }
    throw std::runtime_error("align_translate: curve never reaches 1 - 1/e");
}

RhoFamily build_rho_family(int k_max, double dt, double window, const FixedPointOptions& opts) {
    if (k_max < 1) throw std::invalid_argument("build_rho_family: k_max must be >= 1");
    RhoFamily fam;
    fam.dt = dt;
    fam.window = window;
    fam.rho.resize(k_max + 1);
    fam.translation.assign(k_max + 1, 0.0);
    fam.xi_hat.assign(k_max + 1, 0.0);
    fam.gamma.resize(k_max + 1);

    fam.rho[0] = rho0_step(dt, window);
    fam.rho[1] = rho1_closed_form(0.0, dt, window);
    fam.xi_hat[1] = fam.rho[1].first_time_above(1e-6);
    fam.gamma[1] = gamma_from_rho(fam.rho[0], fam.rho[1]);

    for (int k = 2; k <= k_max; ++k) {
        RhoCurve cur = next_rho(fam.rho[k - 1], 2.0, opts);
        fam.rho[k] = std::move(cur.rho);
        fam.translation[k] = fam.rho[k].t0;
        fam.xi_hat[k] = cur.xi_hat;
        fam.gamma[k] = gamma_from_rho(fam.rho[k - 1], fam.rho[k]);
    }
    return fam;
}

}  // namespace smst
