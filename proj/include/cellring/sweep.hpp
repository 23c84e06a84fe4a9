#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "cellring/dynamics.hpp"
#include "cellring/grid.hpp"
#include "cellring/stability.hpp"

namespace cellring {

/// Runs fn(0) ... fn(count - 1) on `workers` threads (0 = hardware
/// concurrency). Each index is processed exactly once; callers write results
/// by index, so output never depends on scheduling. The first exception
/// thrown by fn is rethrown after all workers stop.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn);

struct SimSettings {
    StateVector x0{0.3, 0.5};
    std::size_t n_total = 5000;
    std::size_t n_transient = 1000;
};

/// Highest value of the complexity spectrum of cell 0's series for the
/// two-cell model at (r, p); NaN when the orbit leaves (0, 1).
double complexity_cell(double r, double p, double c, CouplingConvention convention, const SimSettings& sim);

/// Grid of complexity_cell over r (x axis) and p (y axis).
Grid complexity_map(const AxisSpec& r_axis, const AxisSpec& p_axis, double c, CouplingConvention convention,
                    const SimSettings& sim, std::size_t workers = 1);

/// Classification of the two-cell equilibrium (x, y); boundary points are
/// Indeterminate and set `singular`.
Stability stability_cell(double x, double y, const ModelParams& params, bool* singular = nullptr);

/// Category grid (Stability codes) over equilibrium concentrations.
Grid stability_region_map(const AxisSpec& x_axis, const AxisSpec& y_axis, const ModelParams& params,
                          std::size_t workers = 1);

/// max |lambda| and min |lambda| surfaces over equilibrium concentrations.
/// Boundary cells are NaN.
std::pair<Grid, Grid> eigen_surface_map(const AxisSpec& x_axis, const AxisSpec& y_axis, const ModelParams& params,
                                        std::size_t workers = 1);

enum class EquilibriumPlacement {
    InsideS,      ///< each x_i uniform inside its region-S window
    UniformCube,  ///< each x_i uniform on (0, 1)
    OutsideOuter, ///< each x_i uniform on (0, 1) minus region_s_bounds(r).outer
};

/// Random ring instances: N, r, couplings and affinities drawn uniformly
/// (affinities as normalized uniform weights, rejected above p_cap).
struct RingSamplerSpec {
    std::size_t n_min = 2;
    std::size_t n_max = 100;
    double r_min = 1.0;
    double r_max = 4.0;
    double c_min = 0.0;
    double c_max = 1.0;
    std::optional<double> p_cap;
    CouplingConvention convention = CouplingConvention::Ring;
    EquilibriumPlacement placement = EquilibriumPlacement::InsideS;
    /// Fresh coupling draws per in-S sample used to confirm that the norm
    /// check does not depend on the couplings there.
    std::size_t coupling_redraws = 3;
};

struct RingSample {
    std::size_t n_cells = 0;
    double r = 0;
    bool in_s = false;
    bool norm_check = false;
    double spectral_radius = 0;
    double infinity_norm = 0;
    /// In-S sample whose norm check changed under a coupling redraw.
    bool coupling_flip = false;
};

struct RingSampleReport {
    std::vector<RingSample> samples;
    std::size_t in_s = 0;
    std::size_t norm_check = 0;
    std::size_t rho_below_one = 0;
    /// in S but norm check failed
    std::size_t s_implication_violations = 0;
    /// norm check passed but rho >= 1
    std::size_t norm_implication_violations = 0;
    /// rho > infinity norm + 1e-9
    std::size_t norm_bound_violations = 0;
    std::size_t coupling_flips = 0;
};

/// Draws one instance (params and equilibrium) for sample `index`.
std::pair<ModelParams, StateVector> draw_ring_instance(const RingSamplerSpec& spec, std::uint64_t seed,
                                                       std::size_t index);

RingSampleReport ring_stability_sample(const RingSamplerSpec& spec, std::size_t n_samples, std::uint64_t seed,
                                       std::size_t workers = 1);

} // namespace cellring
