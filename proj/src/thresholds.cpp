#include "smst/thresholds.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <vector>

namespace smst {

namespace {

void check_unit_domain(double x) {
    if (x < 0.0 || x >= 1.0) throw std::domain_error("phi_k2: x outside [0, 1)");
}

double phi_k2_value(double x) {
    check_unit_domain(x);
    if (x < 1e-4) {
        // -log(1-x)/x = sum_{m>=0} x^m/(m+1)
        return 1.0 + x * (0.5 + x * (1.0 / 3.0 + x * 0.25));
    }
    return -std::log1p(-x) / x;
}

double phi_k2_deriv(double x) {
    check_unit_domain(x);
    if (x < 1e-4) {
        // sum_{m>=1} m x^(m-1)/(m+1)
        return 0.5 + x * (2.0 / 3.0 + x * 0.75);
    }
    return (x / (1.0 - x) + std::log1p(-x)) / (x * x);
}

}  // namespace

PhiFunction phi_k2() {
    PhiFunction f;
    f.phi = phi_k2_value;
    f.dphi = phi_k2_deriv;
    f.kind = PhiFunction::Kind::ClosedFormK2;
    f.x_max = 1.0;
    return f;
}

PhiFunction phi_from_grid(const GridFunction& rho_prev) {
    const auto& v = rho_prev.values;
    if (v.size() < 3) throw std::invalid_argument("phi_from_grid: grid too small");

    // Skip the below-threshold plateau; keep one leading zero as the x=0 knot.
    std::size_t start = 0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (v[i + 1] > 0.0) {
            start = i;
            break;
        }
    }
    auto knots_x = std::make_shared<std::vector<double>>();  // rho values
    auto knots_t = std::make_shared<std::vector<double>>();  // times
    auto knots_d = std::make_shared<std::vector<double>>();  // 1/rho'
    for (std::size_t i = start; i < v.size(); ++i) {
        if (i > start && v[i] <= (*knots_x).back())
            throw std::invalid_argument("phi_from_grid: curve not strictly increasing");
        knots_x->push_back(v[i]);
        knots_t->push_back(rho_prev.t_at(i));
        const std::size_t lo = (i == 0) ? i : i - 1;
        const std::size_t hi = (i + 1 < v.size()) ? i + 1 : i;
        const double slope = (v[hi] - v[lo]) / (rho_prev.dt * static_cast<double>(hi - lo));
        knots_d->push_back(slope > 0.0 ? 1.0 / slope : std::numeric_limits<double>::infinity());
    }

    const double x_top = knots_x->back();
    auto locate = [knots_x](double x) {
        const auto& xs = *knots_x;
        std::size_t lo = 0, hi = xs.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (xs[mid] <= x ? lo : hi) = mid;
        }
        return lo;
    };

    PhiFunction f;
    f.kind = PhiFunction::Kind::GridInverse;
    f.x_max = x_top;
    f.phi = [knots_x, knots_t, locate, x_top](double x) {
        if (x < 0.0 || x >= x_top) throw std::domain_error("phi_from_grid: x outside domain");
        const auto& xs = *knots_x;
        const auto& ts = *knots_t;
        if (x <= xs.front()) return ts.front();
        const std::size_t i = locate(x);
        const double frac = (x - xs[i]) / (xs[i + 1] - xs[i]);
        return ts[i] + frac * (ts[i + 1] - ts[i]);
    };
    f.dphi = [knots_x, knots_d, locate, x_top](double x) {
        if (x < 0.0 || x >= x_top) throw std::domain_error("phi_from_grid: x outside domain");
        const auto& xs = *knots_x;
        const auto& ds = *knots_d;
        if (x <= xs.front()) return ds.front();
        const std::size_t i = locate(x);
        const double frac = (x - xs[i]) / (xs[i + 1] - xs[i]);
        return ds[i] + frac * (ds[i + 1] - ds[i]);
    };
    return f;
}

ThresholdResult solve_theta_ode(const PhiFunction& phi, double step, int k) {
    if (step <= 0.0) throw std::invalid_argument("solve_theta_ode: step must be positive");
    const double theta_end = std::numbers::pi / 2.0;
    const auto n_steps = static_cast<long>(std::ceil(theta_end / step));
    const double h = theta_end / static_cast<double>(n_steps);

    auto slope = [&phi](double theta, double x) {
        if (!(x < phi.x_max) || x < 0.0)
            throw std::runtime_error("solve_theta_ode: x left the phi domain");
        const double c = std::cos(theta), s = std::sin(theta);
        const double denom = c * c + phi.dphi(x) * s * s;
        return 1.0 / denom;  // phi' = inf collapses this to 0
    };

    double x = 0.0;
    for (long i = 0; i < n_steps; ++i) {
        const double theta = h * static_cast<double>(i);
        const double k1 = slope(theta, x);
        const double k2 = slope(theta + 0.5 * h, x + 0.5 * h * k1);
        const double k3 = slope(theta + 0.5 * h, x + 0.5 * h * k2);
        const double k4 = slope(theta + h, x + h * k3);
        x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(x)) throw std::runtime_error("solve_theta_ode: diverged");
    }

    ThresholdResult res;
    res.k = k;
    res.s_k = x;
    res.sigma_k = (x < phi.x_max) ? phi.phi(x) : std::numeric_limits<double>::quiet_NaN();
    res.step = h;
    res.steps = n_steps;
    res.assumption_flag = (phi.kind == PhiFunction::Kind::GridInverse);
    return res;
}

Core3Result core3_threshold() {
    // lambda / P(Po(lambda) >= 2); blows up at both ends, single minimum.
    auto objective = [](double lam) {
        const double p = -std::expm1(-lam) - lam * std::exp(-lam);
        return lam / p;
    };
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 1e-6, hi = 20.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = objective(x1), f2 = objective(x2);
    while (hi - lo > 1e-10) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = objective(x2);
        }
    }
    const double lam = 0.5 * (lo + hi);
    return {lam, objective(lam)};
}

}  // namespace smst
