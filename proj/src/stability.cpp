#include "cellring/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cellring/eigen.hpp"
#include "cellring/error.hpp"
#include "cellring/random.hpp"

namespace cellring {

namespace {

constexpr double period_doubling_onset = 3.0;

void require_interior_eq(std::span<const double> eq, const char* what) {
    for (std::size_t i = 0; i < eq.size(); ++i)
        if (!(eq[i] > 0.0 && eq[i] < 1.0))
            throw SingularEntry(std::string(what) + ": equilibrium component " + std::to_string(i) +
                                " is not interior; coupling derivative undefined");
}

} // namespace

Matrix Jacobian2::as_matrix() const {
    Matrix m(2, 2);
    m(0, 0) = a11;
    m(0, 1) = a12;
    m(1, 0) = a21;
    m(1, 1) = a22;
    return m;
}

EquilibriumInvariants equilibrium_invariants(std::array<double, 2> eq, double p) {
    const auto [x, y] = eq;
    return {x + y, std::pow(x, p) * std::pow(y, 1.0 - p) / (p * (1.0 - p)), (1.0 - 2.0 * x) * (1.0 - 2.0 * y)};
}

double two_cell_discriminant(std::array<double, 2> eq, const ModelParams& params) {
    const ModelParams tc = params.in_convention(CouplingConvention::TwoCell);
    const double c = tc.couplings()[0];
    const double r = tc.r();
    const auto inv = equilibrium_invariants(eq, tc.affinities()[0]);
    const double d = eq[0] - eq[1];
    return (1.0 - c) * (1.0 - c) * r * r * d * d + c * c / inv.beta;
}

Jacobian2 jacobian_two_cell(std::array<double, 2> eq, const ModelParams& params) {
    if (params.n_cells() != 2) throw DomainError("jacobian_two_cell: params are not two-cell");
    require_interior_eq(eq, "jacobian_two_cell");
    const ModelParams tc = params.in_convention(CouplingConvention::TwoCell);
    if (tc.couplings()[0] != tc.couplings()[1]) throw DomainError("jacobian_two_cell: couplings differ");

    Jacobian2 j;
    j.equilibrium = eq;
    j.r = tc.r();
    j.c = tc.couplings()[0];
    j.p = tc.affinities()[0];
    const auto [x, y] = eq;
    j.a11 = (1.0 - j.c) * j.r * (1.0 - 2.0 * x);
    j.a12 = j.c * j.p * std::pow(y, j.p - 1.0);
    j.a21 = j.c * (1.0 - j.p) * std::pow(x, -j.p);
    j.a22 = (1.0 - j.c) * j.r * (1.0 - 2.0 * y);
    return j;
}

EigenPair eigenvalues_two_cell(const Jacobian2& j) {
    const double half_trace = 0.5 * j.trace();
    const double half_diff = 0.5 * (j.a11 - j.a22);
    // T^2/4 - det written as ((a11 - a22)/2)^2 + a12 a21 to avoid cancellation.
    const std::complex<double> disc = half_diff * half_diff + j.a12 * j.a21;
    const std::complex<double> root = std::sqrt(disc);
    std::complex<double> l1 = half_trace + root;
    std::complex<double> l2 = half_trace - root;
    // Recover the smaller real root from the determinant when cancellation bites.
    if (disc.real() >= 0.0 && std::abs(l1) != 0.0 && std::abs(l2) < 1e-8 * std::abs(l1)) l2 = j.determinant() / l1;
    if (std::abs(l2) > std::abs(l1)) std::swap(l1, l2);
    return {l1, l2};
}

const char* to_string(Stability s) noexcept {
    switch (s) {
    case Stability::AsymptoticallyStable: return "stable";
    case Stability::Unstable: return "unstable";
    case Stability::Indeterminate: return "indeterminate";
    }
    return "?";
}

Stability classify_equilibrium(double max_abs, double min_abs) noexcept {
    if (max_abs < 1.0) return Stability::AsymptoticallyStable;
    if (min_abs > 1.0) return Stability::Unstable;
    return Stability::Indeterminate;
}

Stability classify_equilibrium(const EigenPair& eig) noexcept {
    return classify_equilibrium(eig.max_abs(), eig.min_abs());
}

Stability classify_equilibrium(std::span<const std::complex<double>> spectrum) {
    if (spectrum.empty()) throw DomainError("classify_equilibrium: empty spectrum");
    double mx = 0.0, mn = std::abs(spectrum[0]);
    for (const auto& l : spectrum) {
        mx = std::max(mx, std::abs(l));
        mn = std::min(mn, std::abs(l));
    }
    return classify_equilibrium(mx, mn);
}

Matrix jacobian_ring(std::span<const double> eq, const ModelParams& params) {
    if (eq.size() != params.n_cells()) throw DomainError("jacobian_ring: dimension mismatch");
    require_interior_eq(eq, "jacobian_ring");
    return map_jacobian(eq, params);
}

bool norm_stability_check(std::span<const double> eq, const ModelParams& params) {
    const std::size_t n = params.n_cells();
    if (eq.size() != n) throw DomainError("norm_stability_check: dimension mismatch");
    require_interior_eq(eq, "norm_stability_check");
    const double r = params.r();
    const auto p = params.affinities();
    for (std::size_t i = 0; i < n; ++i) {
        const double row = params.logistic_weight(i) * r * std::abs(1.0 - 2.0 * eq[i]) +
                           params.inflow_weight(i) * p[i] * std::pow(eq[(i + 1) % n], p[i] - 1.0);
        if (!(row < 1.0)) return false;
    }
    return true;
}

Interval logistic_window(double r) { return {(r - 1.0) / (2.0 * r), (r + 1.0) / (2.0 * r)}; }

double affinity_lower_bound(double p) { return std::pow(p, 1.0 / (1.0 - p)); }

double region_s_lower(std::size_t i, const ModelParams& params) {
    const std::size_t n = params.n_cells();
    const double p_prev = params.affinities()[(i + n - 1) % n];
    return std::max(logistic_window(params.r()).lo, affinity_lower_bound(p_prev));
}

bool region_s_membership(std::span<const double> eq, const ModelParams& params) {
    const std::size_t n = params.n_cells();
    if (eq.size() != n) throw DomainError("region_s_membership: dimension mismatch");
    const double hi = logistic_window(params.r()).hi;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(eq[i] > 0.0 && eq[i] < 1.0)) return false;
        if (!(eq[i] > region_s_lower(i, params) && eq[i] < hi)) return false;
    }
    return true;
}

RegionSBounds region_s_bounds(double r, std::optional<double> p_cap) {
    if (!(r > 1.0 && r <= 4.0)) throw DomainError("region_s_bounds: r must lie in (1, 4]");
    if (p_cap && !(*p_cap > 0.0 && *p_cap < 1.0)) throw DomainError("region_s_bounds: affinity cap must lie in (0, 1)");

    RegionSBounds b;
    b.window = logistic_window(r);
    // p^(1/(1-p)) increases on (0, 1) towards 1/e.
    b.affinity_floor = p_cap ? affinity_lower_bound(*p_cap) : std::exp(-1.0);
    b.band_start = std::max(period_doubling_onset, 1.0 / (1.0 - 2.0 * b.affinity_floor));

    if (r >= b.band_start) {
        const Interval top = logistic_window(4.0);
        b.inner = {std::max(top.lo, b.affinity_floor), top.hi};
        b.outer = logistic_window(b.band_start);
    } else {
        b.inner = {std::max(b.window.lo, b.affinity_floor), b.window.hi};
        b.outer = b.window;
    }
    return b;
}

StabilityReport analyze_equilibrium(std::span<const double> eq, const ModelParams& params) {
    const Matrix j = jacobian_ring(eq, params);
    StabilityReport rep;
    rep.spectrum = eigenvalues(j);
    rep.eigen_max = 0.0;
    rep.eigen_min = std::abs(rep.spectrum.front());
    for (const auto& l : rep.spectrum) {
        rep.eigen_max = std::max(rep.eigen_max, std::abs(l));
        rep.eigen_min = std::min(rep.eigen_min, std::abs(l));
    }
    rep.spectral_radius = rep.eigen_max;
    rep.infinity_norm = infinity_norm(j);
    rep.margin = rep.eigen_max - 1.0;
    rep.classification = classify_equilibrium(rep.eigen_max, rep.eigen_min);
    rep.norm_check = norm_stability_check(eq, params);
    rep.in_region_s = region_s_membership(eq, params);
    return rep;
}

const char* to_string(ProbeOutcome o) noexcept {
    switch (o) {
    case ProbeOutcome::Converged: return "converged";
    case ProbeOutcome::Diverged: return "diverged";
    case ProbeOutcome::Inconclusive: return "inconclusive";
    }
    return "?";
}

ProbeOutcome empirical_stability_probe(const ModelParams& params, std::span<const double> eq, double radius,
                                       std::size_t n_probes, std::size_t horizon, std::uint64_t seed) {
    const std::size_t n = params.n_cells();
    if (eq.size() != n) throw DomainError("empirical_stability_probe: dimension mismatch");
    if (!(radius > 0.0)) throw DomainError("empirical_stability_probe: radius must be positive");
    const double residual = fixed_point_residual(eq, params);
    if (!(residual < probe_fixed_point_tolerance))
        throw DomainError("empirical_stability_probe: point is not a certified fixed point (residual " +
                          std::to_string(residual) + ")");

    Rng rng(seed);
    const double escape = 10.0 * radius;
    const double target = radius / 10.0;
    bool all_converged = true;
    StateVector x(n);
    for (std::size_t probe = 0; probe < n_probes; ++probe) {
        for (std::size_t i = 0; i < n; ++i) x[i] = eq[i] + rng.uniform(-radius, radius);
        double dist = 0.0;
        for (std::size_t t = 0; t < horizon; ++t) {
            x = ring_map(x, params);
            dist = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (!(x[i] > 0.0 && x[i] < 1.0)) return ProbeOutcome::Diverged;
                dist = std::max(dist, std::abs(x[i] - eq[i]));
            }
            if (!(dist <= escape)) return ProbeOutcome::Diverged;
        }
        if (!(dist <= target)) all_converged = false;
    }
    return all_converged ? ProbeOutcome::Converged : ProbeOutcome::Inconclusive;
}

} // namespace cellring
