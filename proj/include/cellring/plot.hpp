#pragma once

#include <string>

#include "cellring/grid.hpp"

namespace cellring {

// gnuplot scripts for the CSV artifacts. Paths are relative, so run them from
// the output directory.

/// Heatmap for a grid CSV. Category grids use three fixed shades
/// (stable dark gray, unstable light gray, indeterminate white).
std::string grid_plot_script(const Grid& grid, const std::string& csv_name, const std::string& title);

/// threshold vs complexity scatter from a spectrum CSV.
std::string spectrum_plot_script(const std::string& csv_name, const std::string& title);

/// x1..xN against step from a trajectory CSV.
std::string trajectory_plot_script(const std::string& csv_name, std::size_t n_cells, const std::string& title);

} // namespace cellring
