#pragma once

#include <stdexcept>
#include <vector>

#include "smst/grid_function.hpp"

namespace smst {

// Placement of each grid cell's measure increment inside the cell when a
// distribution GridFunction is read as a Stieltjes measure.
enum class CellWeighting { Midpoint, LeftEndpoint, RightEndpoint };

struct FixedPointOptions {
    double tol = 1e-8;
    // Convergence at the 1e-8 criterion needs ~2e4 sweeps at grid points
    // sitting on a threshold (the iteration is critically slow there); away
    // from thresholds 20-30 sweeps suffice.
    int max_iter = 100000;
    CellWeighting weighting = CellWeighting::RightEndpoint;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& msg, double residual_, int iterations_)
        : std::runtime_error(msg), residual(residual_), iterations(iterations_) {}
    double residual;
    int iterations;
};

// rho_1 on the grid [t0, t0+window]: zero up to t=1, then the root of
// rho = 1 - exp(-t*rho) in (0,1), bisected to 1e-12.
GridFunction rho1_closed_form(double t0 = 0.0, double dt = 0.01, double window = 10.0);

// The measure with distribution function 1 on [0, inf): a unit atom at 0.
GridFunction rho0_step(double dt = 0.01, double window = 10.0);

// Survival profile x -> rho_t(x) of the branching process with kernel
// (t - max(x,y))_+ over the measure d(mu), found as the largest fixed point
// of f = 1 - exp(-T f). Iterates from init, which must dominate the fixed
// point; each sweep evaluates T f for all x in one prefix/suffix pass.
// Throws ConvergenceError when max_iter sweeps leave a residual above tol.
GridFunction survival_fixed_point(double t, const GridFunction& mu, const GridFunction& init,
                                  const FixedPointOptions& opts = {});

struct RhoCurve {
    GridFunction rho;
    double xi_hat;  // first grid time with rho above 1e-6
};

// One level of the recursion: rho_k(t) = integral of rho_t d(rho_{k-1}).
// The output grid is mu's grid shifted right by `shift`; the t sweep runs
// top-down so each fixed point warm-starts from the previous (larger-t) one.
RhoCurve next_rho(const GridFunction& mu, double shift = 2.0, const FixedPointOptions& opts = {});

struct IntegralResult {
    double value = 0.0;
    double tail_residual = 0.0;  // coarse size estimate of the truncated tail
    bool truncated = false;      // set when a curve ends with 1 - rho > 1e-4
};

// gamma_k = (1/2) * integral of (rho_{k-1}^2 - rho_k^2) * t dt over [0, end].
IntegralResult gamma_from_rho(const GridFunction& rho_prev, const GridFunction& rho_k);

// (1/2) * integral of (1 - rho_k^2) dt; equals k in the limit.
double mass_integral(const GridFunction& rho_k);

// t -> (1/2) * integral of rho_prev(s)^2 ds from 0 to t, on [0, rho_prev end].
GridFunction edge_count_curve(const GridFunction& rho_prev);

// Time-shift a curve so it passes through 1 - 1/e at t = 4.
// Throws std::runtime_error when the curve never reaches that value.
GridFunction align_translate(const GridFunction& rho_k);

struct RhoFamily {
    double dt = 0.01;
    double window = 10.0;
    // Index k in [0, k_max]; rho[0] is the unit step.
    std::vector<GridFunction> rho;
    std::vector<double> translation;  // grid origin of rho[k]
    std::vector<double> xi_hat;       // threshold estimate, 0 for k = 0
    std::vector<IntegralResult> gamma;  // gamma[k] uses rho[k-1], rho[k]; gamma[0] unused
};

// rho_1 from the closed form, each later level by next_rho with shift 2.
RhoFamily build_rho_family(int k_max, double dt = 0.01, double window = 10.0,
                           const FixedPointOptions& opts = {});

}  // namespace smst
