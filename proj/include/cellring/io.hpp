#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "cellring/complexity.hpp"
#include "cellring/dynamics.hpp"
#include "cellring/grid.hpp"

namespace cellring {

/// Shortest decimal that parses back to the same double; "NaN" for NaN.
std::string format_double(double v);

/// "[a, b, c]" using format_double.
std::string format_list(std::span<const double> values);

/// Grid as CSV text:
///
///   # axis_x=<name> start=<v> stop=<v> step=<v>
///   # axis_y=<name> start=<v> stop=<v> step=<v>
///   # kind=<scalar|category>
///   v00,v10,...      one row per y-axis point, x varying along the row
///
/// Missing cells are written as NaN. Identical grids give identical bytes.
std::string grid_csv(const Grid& grid);

/// Inverse of grid_csv (metadata is not carried by the CSV). Throws IoError on
/// malformed input.
Grid parse_grid_csv(std::string_view text);

void write_grid_csv(const Grid& grid, const std::filesystem::path& path);
Grid read_grid_csv(const std::filesystem::path& path);

/// step,x1,...,xN with step counted from the first kept iteration.
std::string trajectory_csv(const Trajectory& traj);

/// index,threshold,normalized,kc per spectrum entry; `normalized` is the
/// threshold rescaled to [0, 1] over the series (NaN for a constant series).
std::string spectrum_csv(const ComplexitySpectrum& spectrum);

/// Writes `text` to `path`, creating parent directories; throws IoError.
void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

} // namespace cellring
