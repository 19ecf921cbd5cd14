#include "smst/grid_function.hpp"

#include <cmath>
#include <stdexcept>

namespace smst {

double GridFunction::operator()(double t) const {
    if (values.empty()) throw std::logic_error("GridFunction: empty grid");
    if (t <= t0) return values.front();
    const double pos = (t - t0) / dt;
    const auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= values.size()) return values.back();
    const double frac = pos - static_cast<double>(i);
    return values[i] * (1.0 - frac) + values[i + 1] * frac;
}

bool GridFunction::nondecreasing(double slack) const {
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] < values[i - 1] - slack) return false;
    }
    return true;
}

double GridFunction::first_time_above(double level) const {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] > level) return t_at(i);
    }
    return t_end() + dt;
}

}  // namespace smst
