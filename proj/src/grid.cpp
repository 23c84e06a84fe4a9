#include "cellring/grid.hpp"

#include <cmath>
#include <limits>

#include "cellring/error.hpp"

namespace cellring {

std::size_t AxisSpec::count() const {
    if (stop == start) return 1;
    const double span = (stop - start) / step;
    return static_cast<std::size_t>(std::floor(span * (1.0 + 1e-9) + 1e-9)) + 1;
}

void AxisSpec::validate() const {
    if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step))
        throw DomainError("axis " + name + ": non-finite bound");
    if (!(step > 0.0)) throw DomainError("axis " + name + ": step must be positive");
    if (start > stop) throw DomainError("axis " + name + ": start must not exceed stop");
    if (count() > 100000) throw DomainError("axis " + name + ": more than 100000 points");
}

AxisSpec AxisSpec::unit_interior(std::string name, double step) {
    if (!(step > 0.0 && step < 0.5)) throw DomainError("axis " + name + ": interior step must lie in (0, 0.5)");
    // largest m with m * step < 1
    const auto last = static_cast<std::size_t>(std::ceil(1.0 / step - 1e-9)) - 1;
    return {std::move(name), step, step * static_cast<double>(last), step};
}

const char* to_string(GridKind k) noexcept { return k == GridKind::Scalar ? "scalar" : "category"; }

Grid::Grid(AxisSpec x, AxisSpec y, GridKind k) : x_axis(std::move(x)), y_axis(std::move(y)), kind(k) {
    x_axis.validate();
    y_axis.validate();
    values.assign(x_axis.count() * y_axis.count(), std::numeric_limits<double>::quiet_NaN());
}

} // namespace cellring
