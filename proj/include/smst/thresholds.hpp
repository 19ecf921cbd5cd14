#pragma once

#include <functional>
#include <numbers>

#include "smst/grid_function.hpp"

namespace smst {

// The inverse phi of a level's giant-component curve, with its derivative.
// phi(0+) equals the previous level's threshold.
struct PhiFunction {
    enum class Kind { ClosedFormK2, GridInverse, Custom };

    std::function<double(double)> phi;
    std::function<double(double)> dphi;
    Kind kind = Kind::Custom;
    double x_max = 1.0;  // domain is (0, x_max)
};

// phi(x) = -log(1-x)/x, the inverse of rho_1, with a series branch near 0
// (phi(0+) = 1, phi'(0+) = 1/2).
PhiFunction phi_k2();

// Monotone inversion of a sampled rho_{k-1}: phi by linear interpolation of
// the inverse, phi' = 1/rho' with centered differences at the grid nodes.
// Throws when the curve is not strictly increasing above its threshold.
PhiFunction phi_from_grid(const GridFunction& rho_prev);

struct ThresholdResult {
    int k = 2;
    double s_k = 0.0;      // x(pi/2)
    double sigma_k = 0.0;  // phi(s_k)
    double step = 0.0;
    long steps = 0;
    bool assumption_flag = false;  // true when phi came from a sampled curve
};

// Integrates dx/dtheta = 1 / (cos^2 + phi'(x) sin^2) from x(0) = 0 to
// theta = pi/2 with classical RK4; the threshold is sigma_k = phi(x(pi/2)).
// Throws when x leaves the domain before theta reaches pi/2.
ThresholdResult solve_theta_ode(const PhiFunction& phi,
                                double step = std::numbers::pi / 2.0 * 1e-5, int k = 2);

struct Core3Result {
    double lambda_star = 0.0;
    double c3 = 0.0;
};

// c_3 = min over lambda > 0 of lambda / P(Po(lambda) >= 2), golden-section
// to 1e-10 in lambda.
Core3Result core3_threshold();

}  // namespace smst
