#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace cellring {

/// Evenly spaced axis: points start + i * step for i < count().
struct AxisSpec {
    std::string name;
    double start = 0;
    double stop = 0;
    double step = 0;

    /// floor((stop - start) / step) + 1, with a 1e-9 relative allowance so
    /// that decimal steps such as 0.02 land on `stop`.
    std::size_t count() const;
    double value(std::size_t i) const { return start + static_cast<double>(i) * step; }
    /// Throws DomainError unless step > 0 and start < stop (start == stop is
    /// accepted as a single-point axis).
    void validate() const;

    /// Axis over the interior lattice step, 2 step, ..., 1 - step of (0, 1).
    static AxisSpec unit_interior(std::string name, double step);

    bool operator==(const AxisSpec&) const = default;
};

enum class GridKind { Scalar, Category };

const char* to_string(GridKind k) noexcept;

/// Row-major 2D field: row j belongs to y_axis.value(j), column i to
/// x_axis.value(i). Missing cells hold NaN.
struct Grid {
    AxisSpec x_axis;
    AxisSpec y_axis;
    GridKind kind = GridKind::Scalar;
    std::vector<double> values;
    /// Parameter record sufficient to regenerate the grid.
    std::vector<std::pair<std::string, std::string>> metadata;
    /// Cells whose simulation left (0, 1).
    std::size_t escape_count = 0;
    /// Cells at boundary-singular equilibria.
    std::size_t singular_count = 0;

    Grid() = default;
    Grid(AxisSpec x, AxisSpec y, GridKind k);

    std::size_t nx() const { return x_axis.count(); }
    std::size_t ny() const { return y_axis.count(); }
    double& at(std::size_t ix, std::size_t iy) { return values[iy * nx() + ix]; }
    double at(std::size_t ix, std::size_t iy) const { return values[iy * nx() + ix]; }
};

} // namespace cellring
