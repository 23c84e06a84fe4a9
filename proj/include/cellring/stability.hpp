#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cellring/dynamics.hpp"
#include "cellring/linalg.hpp"

namespace cellring {

/// Jacobian of the two-cell map at an equilibrium (x, y), in the two-cell
/// coupling convention:
///
///   [ (1-c) r (1-2x)      c p y^(p-1)     ]
///   [ c (1-p) x^(-p)      (1-c) r (1-2y)  ]
struct Jacobian2 {
    double a11 = 0, a12 = 0, a21 = 0, a22 = 0;
    std::array<double, 2> equilibrium{};
    double r = 0, c = 0, p = 0;

    Matrix as_matrix() const;
    double trace() const noexcept { return a11 + a22; }
    double determinant() const noexcept { return a11 * a22 - a12 * a21; }
};

/// Summary quantities of a two-cell equilibrium.
///   alpha = x + y
///   beta  = x^p y^(1-p) / (p (1-p))   weighted geometric mean of the pair
///   gamma = (1 - 2x)(1 - 2y)
/// The eigenvalue discriminant T^2/4 - det equals (1-c)^2 r^2 (x-y)^2 + c^2/beta.
struct EquilibriumInvariants {
    double alpha = 0, beta = 0, gamma = 0;
};

EquilibriumInvariants equilibrium_invariants(std::array<double, 2> eq, double p);

/// Closed form of T^2/4 - det for the two-cell Jacobian.
double two_cell_discriminant(std::array<double, 2> eq, const ModelParams& params);

/// Throws SingularEntry for an equilibrium on the boundary of the unit square.
Jacobian2 jacobian_two_cell(std::array<double, 2> eq, const ModelParams& params);

/// Eigenvalues ordered so that |first| >= |second|.
struct EigenPair {
    std::complex<double> first, second;
    double max_abs() const { return std::abs(first); }
    double min_abs() const { return std::abs(second); }
};

/// lambda = T/2 +- sqrt(T^2/4 - det), evaluated in complex arithmetic.
EigenPair eigenvalues_two_cell(const Jacobian2& j);

enum class Stability { AsymptoticallyStable = 0, Unstable = 1, Indeterminate = 2 };

const char* to_string(Stability s) noexcept;

/// Stable iff max |lambda| < 1, unstable iff min |lambda| > 1, strict.
Stability classify_equilibrium(double max_abs, double min_abs) noexcept;
Stability classify_equilibrium(const EigenPair& eig) noexcept;
Stability classify_equilibrium(std::span<const std::complex<double>> spectrum);

/// Ring Jacobian: diagonal w_i r (1 - 2x_i), cyclic superdiagonal
/// v_i p_i x_{i+1}^(p_i - 1), with (w_i, v_i) the logistic and inflow weights
/// of the parameter convention. Throws SingularEntry at boundary equilibria.
Matrix jacobian_ring(std::span<const double> eq, const ModelParams& params);

/// Every row of the ring Jacobian has absolute sum below one:
///   w_i r |1 - 2x_i| + v_i p_i x_{i+1}^(p_i - 1) < 1.
bool norm_stability_check(std::span<const double> eq, const ModelParams& params);

/// Open interval (lo, hi).
struct Interval {
    double lo = 0, hi = 0;
    bool contains(double v) const noexcept { return v > lo && v < hi; }
    bool within(const Interval& other) const noexcept { return lo >= other.lo && hi <= other.hi; }
};

/// ((r - 1) / 2r, (r + 1) / 2r): the x with r |1 - 2x| < 1.
Interval logistic_window(double r);

/// Lower bound p^(1/(1-p)) that an affinity p imposes on the concentration of
/// the cell it draws from: p y^(p-1) < 1 iff y > p^(1/(1-p)).
double affinity_lower_bound(double p);

/// x in (0,1)^N with max((r-1)/2r, p_{i-1}^(1/(1-p_{i-1}))) < x_i < (r+1)/2r for
/// every i (p_{-1} wraps to p_{N-1}). Membership ignores the couplings.
bool region_s_membership(std::span<const double> eq, const ModelParams& params);

/// Per-component lower bound of region S for cell i.
double region_s_lower(std::size_t i, const ModelParams& params);

/// Hypercubes bracketing region S.
///
/// affinity_floor is the supremum of p^(1/(1-p)) over admissible affinities
/// (1/e without a cap). band_start is the smallest r from which the
/// logistic window alone sets the lower edge of S, floored at 3, the
/// period-doubling onset of the logistic map. For r in [band_start, 4] the
/// bounds hold across the whole band:
///   inner = (max(3/8, affinity_floor), 5/8)   (0.375, 0.625)
///   outer = logistic_window(band_start)       (0.3679, 0.6321); (1/3, 2/3) with p <= 0.8
/// Below the band they are evaluated at r alone. In both cases
/// inner^N is inside S and S is inside outer^N for every admissible affinity
/// vector. Throws DomainError for r <= 1 or r > 4.
struct RegionSBounds {
    Interval window;
    double affinity_floor = 0;
    double band_start = 0;
    Interval inner;
    Interval outer;
};

RegionSBounds region_s_bounds(double r, std::optional<double> p_cap = std::nullopt);

/// Eigen-analysis of an N-cell equilibrium.
struct StabilityReport {
    std::vector<std::complex<double>> spectrum;
    double eigen_max = 0;
    double eigen_min = 0;
    double spectral_radius = 0;
    double infinity_norm = 0;
    /// eigen_max - 1
    double margin = 0;
    Stability classification = Stability::Indeterminate;
    bool norm_check = false;
    bool in_region_s = false;
};

StabilityReport analyze_equilibrium(std::span<const double> eq, const ModelParams& params);

enum class ProbeOutcome { Converged, Diverged, Inconclusive };

const char* to_string(ProbeOutcome o) noexcept;

/// Certificate required of `eq` before probing.
inline constexpr double probe_fixed_point_tolerance = 1e-10;

/// Iterates the map from n_probes random starts in the sup-norm ball of the
/// given radius around eq. Diverged as soon as any orbit leaves the ball of
/// 10 * radius (or the unit cube); Converged if every orbit ends within
/// radius / 10 after `horizon` steps; Inconclusive otherwise. Throws
/// DomainError when eq is not a certified fixed point.
ProbeOutcome empirical_stability_probe(const ModelParams& params, std::span<const double> eq, double radius,
                                       std::size_t n_probes, std::size_t horizon, std::uint64_t seed);

} // namespace cellring
