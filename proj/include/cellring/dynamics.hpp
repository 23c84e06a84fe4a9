#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "cellring/linalg.hpp"

namespace cellring {

/// Where the coupling weight sits in the cell update.
///
///   TwoCell: x_i' = (1 - c_i) r x_i (1 - x_i) + c_i x_{i+1}^{p_i}
///   Ring:    x_i' = c_i r x_i (1 - x_i) + (1 - c_i) x_{i+1}^{p_i}
///
/// The two forms describe the same map when c_ring = 1 - c_two_cell.
enum class CouplingConvention { TwoCell, Ring };

const char* to_string(CouplingConvention c) noexcept;

/// Concentrations, one per cell, each in (0, 1).
using StateVector = std::vector<double>;

inline constexpr double affinity_sum_tolerance = 1e-12;

/// Parameters of a ring of N >= 2 cells. Cell i receives inflow from cell
/// i + 1 (mod N) raised to its affinity p_i.
class ModelParams {
public:
    /// Validates every bound and throws DomainError naming the violated one:
    /// 0 < r <= 4, c_i in [0, 1], p_i in (0, 1), sum p_i = 1.
    ModelParams(double r, std::vector<double> couplings, std::vector<double> affinities,
                CouplingConvention convention);

    /// Two-cell model: coupling c on the inflow term, affinities (p, 1 - p).
    static ModelParams two_cell(double r, double c, double p);

    /// N-cell ring with per-cell couplings weighting the logistic term.
    static ModelParams ring(double r, std::vector<double> couplings, std::vector<double> affinities);

    /// N-cell ring with one coupling value broadcast to every cell.
    static ModelParams ring(double r, double coupling, std::vector<double> affinities);

    double r() const noexcept { return r_; }
    std::size_t n_cells() const noexcept { return couplings_.size(); }
    std::span<const double> couplings() const noexcept { return couplings_; }
    std::span<const double> affinities() const noexcept { return affinities_; }
    CouplingConvention convention() const noexcept { return convention_; }

    /// Weight on the logistic term of cell i.
    double logistic_weight(std::size_t i) const noexcept {
        return convention_ == CouplingConvention::TwoCell ? 1.0 - couplings_[i] : couplings_[i];
    }
    /// Weight on the inflow term of cell i.
    double inflow_weight(std::size_t i) const noexcept {
        return convention_ == CouplingConvention::TwoCell ? couplings_[i] : 1.0 - couplings_[i];
    }

    /// Same map expressed in the other convention (c -> 1 - c).
    ModelParams in_convention(CouplingConvention target) const;

    bool operator==(const ModelParams&) const = default;

private:
    double r_;
    std::vector<double> couplings_;
    std::vector<double> affinities_;
    CouplingConvention convention_;
};

struct Trajectory {
    std::vector<StateVector> states;
    std::size_t n_transient = 0;
    ModelParams params;

    std::size_t size() const noexcept { return states.size(); }
    /// Time series of one cell.
    std::vector<double> component(std::size_t cell) const;
};

/// r x (1 - x), validated: 0 < r <= 4, x in [0, 1].
double logistic(double r, double x);

/// One step of the two-cell map
///   x' = (1 - c) r x (1 - x) + c y^p,  y' = (1 - c) r y (1 - y) + c x^(1 - p).
/// Parameters in the ring convention are converted first. Throws RangeEscape
/// if a component leaves (0, 1).
std::array<double, 2> two_cell_step(std::array<double, 2> state, const ModelParams& params);

/// Evaluates the ring map without any range checks.
StateVector ring_map(std::span<const double> state, const ModelParams& params);

/// One checked step of the ring map. Throws DomainError for an input outside
/// the open unit cube and RangeEscape for an output outside it.
StateVector ring_step(std::span<const double> state, const ModelParams& params);

/// Derivative of the ring map at `state` (no boundary checks).
Matrix map_jacobian(std::span<const double> state, const ModelParams& params);

/// Iterates the ring map n_total times from x0 and keeps the states after the
/// first n_transient iterations. RangeEscape carries the 1-based step index.
Trajectory simulate(const ModelParams& params, const StateVector& x0, std::size_t n_total,
                    std::size_t n_transient);

/// Converged points closer than this to a face of the unit cube are reported
/// as BoundaryEscape.
inline constexpr double fixed_point_boundary_margin = 1e-8;

/// Newton iteration on F(x) - x with a damped fixed-point fallback
/// x <- x + 0.5 (F(x) - x) whenever the Newton step leaves the cube or fails
/// to reduce the residual. Throws NotConverged, SingularJacobian or
/// BoundaryEscape.
StateVector find_fixed_point(const ModelParams& params, const StateVector& guess, double tol,
                             std::size_t max_iter);

/// max_i |F(x)_i - x_i|
double fixed_point_residual(std::span<const double> state, const ModelParams& params);

} // namespace cellring
