#pragma once

#include <cstddef>
#include <vector>

namespace smst {

// A real function sampled on the uniform grid t0, t0+dt, ..., t0+(m-1)*dt.
// Used both as a plain curve and as the distribution function of a measure
// on [0, inf): the measure then has an atom of mass values[0] at t0 plus the
// increments between consecutive grid points.
struct GridFunction {
    double t0 = 0.0;
    double dt = 0.01;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double t_at(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
    double t_end() const { return values.empty() ? t0 : t_at(values.size() - 1); }
    double back() const { return values.back(); }

    // Linear interpolation, clamped to the end values outside the grid.
    double operator()(double t) const;

    // Weakly increasing up to `slack` of allowed backward noise.
    bool nondecreasing(double slack = 0.0) const;

    // First grid time with value strictly above `level`; t_end()+dt if none.
    double first_time_above(double level) const;

    GridFunction shifted(double delta) const {
        GridFunction out = *this;
        out.t0 += delta;
        return out;
    }
};

}  // namespace smst
