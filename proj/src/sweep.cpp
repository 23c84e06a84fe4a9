#include "cellring/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "cellring/complexity.hpp"
#include "cellring/eigen.hpp"
#include "cellring/error.hpp"
#include "cellring/io.hpp"
#include "cellring/random.hpp"

namespace cellring {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

ModelParams two_cell_params(double r, double c, double p, CouplingConvention convention) {
    return ModelParams(r, {c, c}, {p, 1.0 - p}, convention);
}

void describe_params(Grid& g, const ModelParams& params) {
    g.metadata.emplace_back("r", format_double(params.r()));
    g.metadata.emplace_back("c", format_list(params.couplings()));
    g.metadata.emplace_back("p", format_list(params.affinities()));
    g.metadata.emplace_back("convention", to_string(params.convention()));
}

} // namespace

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, std::max<std::size_t>(count, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            if (failed.load(std::memory_order_relaxed)) return;
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
    pool.clear();
    if (error) std::rethrow_exception(error);
}

double complexity_cell(double r, double p, double c, CouplingConvention convention, const SimSettings& sim) {
    const ModelParams params = two_cell_params(r, c, p, convention);
    try {
        const Trajectory traj = simulate(params, sim.x0, sim.n_total, sim.n_transient);
        return complexity_spectrum(traj.component(0)).max_value;
    } catch (const RangeEscape&) {
        return nan;
    }
}

Grid complexity_map(const AxisSpec& r_axis, const AxisSpec& p_axis, double c, CouplingConvention convention,
                    const SimSettings& sim, std::size_t workers) {
    Grid g(r_axis, p_axis, GridKind::Scalar);
    const std::size_t nx = g.nx(), ny = g.ny();
    // Validate every parameter pair up front so failures surface as DomainError, not NaN cells.
    for (std::size_t iy = 0; iy < ny; ++iy)
        for (std::size_t ix = 0; ix < nx; ++ix) two_cell_params(r_axis.value(ix), c, p_axis.value(iy), convention);

    parallel_for(nx * ny, workers, [&](std::size_t k) {
        g.values[k] = complexity_cell(r_axis.value(k % nx), p_axis.value(k / nx), c, convention, sim);
    });
    g.escape_count = static_cast<std::size_t>(std::count_if(g.values.begin(), g.values.end(),
                                                            [](double v) { return std::isnan(v); }));

    g.metadata.emplace_back("map", "complexity");
    g.metadata.emplace_back("c", format_double(c));
    g.metadata.emplace_back("convention", to_string(convention));
    g.metadata.emplace_back("x0", format_list(sim.x0));
    g.metadata.emplace_back("steps", std::to_string(sim.n_total));
    g.metadata.emplace_back("transient", std::to_string(sim.n_transient));
    return g;
}

Stability stability_cell(double x, double y, const ModelParams& params, bool* singular) {
    if (singular) *singular = false;
    if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0)) {
        if (singular) *singular = true;
        return Stability::Indeterminate;
    }
    return classify_equilibrium(eigenvalues_two_cell(jacobian_two_cell({x, y}, params)));
}

Grid stability_region_map(const AxisSpec& x_axis, const AxisSpec& y_axis, const ModelParams& params,
                          std::size_t workers) {
    if (params.n_cells() != 2) throw DomainError("stability_region_map: params must describe two cells");
    Grid g(x_axis, y_axis, GridKind::Category);
    const std::size_t nx = g.nx();
    std::vector<std::uint8_t> singular(g.values.size(), 0);
    parallel_for(g.values.size(), workers, [&](std::size_t k) {
        bool s = false;
        g.values[k] = static_cast<double>(stability_cell(x_axis.value(k % nx), y_axis.value(k / nx), params, &s));
        singular[k] = s ? 1 : 0;
    });
    g.singular_count = static_cast<std::size_t>(std::count(singular.begin(), singular.end(), 1));
    g.metadata.emplace_back("map", "stability");
    describe_params(g, params);
    return g;
}

std::pair<Grid, Grid> eigen_surface_map(const AxisSpec& x_axis, const AxisSpec& y_axis, const ModelParams& params,
                                        std::size_t workers) {
    if (params.n_cells() != 2) throw DomainError("eigen_surface_map: params must describe two cells");
    Grid gmax(x_axis, y_axis, GridKind::Scalar);
    Grid gmin(x_axis, y_axis, GridKind::Scalar);
    const std::size_t nx = gmax.nx();
    parallel_for(gmax.values.size(), workers, [&](std::size_t k) {
        const double x = x_axis.value(k % nx), y = y_axis.value(k / nx);
        if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0)) return; // stays NaN
        const EigenPair e = eigenvalues_two_cell(jacobian_two_cell({x, y}, params));
        gmax.values[k] = e.max_abs();
        gmin.values[k] = e.min_abs();
    });
    for (Grid* g : {&gmax, &gmin}) {
        g->singular_count = static_cast<std::size_t>(
            std::count_if(g->values.begin(), g->values.end(), [](double v) { return std::isnan(v); }));
        describe_params(*g, params);
    }
    gmax.metadata.insert(gmax.metadata.begin(), {"map", "eigen-max"});
    gmin.metadata.insert(gmin.metadata.begin(), {"map", "eigen-min"});
    return {std::move(gmax), std::move(gmin)};
}

namespace {

std::vector<double> draw_couplings(Rng& rng, std::size_t n, const RingSamplerSpec& spec) {
    std::vector<double> c(n);
    for (auto& v : c) v = rng.uniform_open(spec.c_min, spec.c_max);
    return c;
}

std::vector<double> draw_affinities(Rng& rng, std::size_t n, std::optional<double> cap) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<double> w(n);
        double sum = 0.0;
        for (auto& v : w) {
            v = rng.uniform_open(0.0, 1.0);
            sum += v;
        }
        bool ok = true;
        for (auto& v : w) {
            v /= sum;
            if (cap && v > *cap) ok = false;
        }
        if (ok) return w;
    }
    throw DomainError("draw_affinities: affinity cap too tight for the cell count");
}

double draw_outside(Rng& rng, const Interval& hole) {
    const double below = std::max(hole.lo, 0.0);
    const double above = std::max(1.0 - hole.hi, 0.0);
    const double u = rng.uniform(0.0, below + above);
    if (u < below) return rng.uniform_open(0.0, hole.lo);
    return rng.uniform_open(hole.hi, 1.0);
}

} // namespace

std::pair<ModelParams, StateVector> draw_ring_instance(const RingSamplerSpec& spec, std::uint64_t seed,
                                                       std::size_t index) {
    if (spec.n_min < 2 || spec.n_min > spec.n_max || spec.n_max > max_eigen_dimension)
        throw DomainError("ring sampler: need 2 <= n_min <= n_max <= 1024");
    if (!(spec.r_min >= 0.0 && spec.r_min < spec.r_max && spec.r_max <= 4.0))
        throw DomainError("ring sampler: need 0 <= r_min < r_max <= 4");
    if (!(spec.c_min >= 0.0 && spec.c_min < spec.c_max && spec.c_max <= 1.0))
        throw DomainError("ring sampler: need 0 <= c_min < c_max <= 1");

    Rng rng(stream_seed(seed, index));
    const auto n = static_cast<std::size_t>(rng.integer(spec.n_min, spec.n_max));
    const double r = rng.uniform_open(spec.r_min, spec.r_max);
    std::vector<double> c = draw_couplings(rng, n, spec);
    std::vector<double> p = draw_affinities(rng, n, spec.p_cap);
    ModelParams params(r, std::move(c), std::move(p), spec.convention);

    StateVector x(n);
    switch (spec.placement) {
    case EquilibriumPlacement::InsideS: {
        const double hi = std::min(logistic_window(r).hi, 1.0);
        for (std::size_t i = 0; i < n; ++i) x[i] = rng.uniform_open(std::max(region_s_lower(i, params), 0.0), hi);
        break;
    }
    case EquilibriumPlacement::UniformCube:
        for (auto& v : x) v = rng.uniform_open(0.0, 1.0);
        break;
    case EquilibriumPlacement::OutsideOuter: {
        const Interval hole = r > 1.0 ? region_s_bounds(r, spec.p_cap).outer : Interval{0.0, 0.0};
        for (auto& v : x) v = draw_outside(rng, hole);
        break;
    }
    }
    return {std::move(params), std::move(x)};
}

RingSampleReport ring_stability_sample(const RingSamplerSpec& spec, std::size_t n_samples, std::uint64_t seed,
                                       std::size_t workers) {
    RingSampleReport rep;
    rep.samples.resize(n_samples);
    parallel_for(n_samples, workers, [&](std::size_t k) {
        const auto [params, x] = draw_ring_instance(spec, seed, k);
        const Matrix j = jacobian_ring(x, params);
        RingSample& s = rep.samples[k];
        s.n_cells = params.n_cells();
        s.r = params.r();
        s.in_s = region_s_membership(x, params);
        s.norm_check = norm_stability_check(x, params);
        s.spectral_radius = spectral_radius(j);
        s.infinity_norm = infinity_norm(j);
        if (s.in_s) {
            Rng redraw(stream_seed(~seed, k));
            for (std::size_t t = 0; t < spec.coupling_redraws; ++t) {
                const ModelParams other(params.r(), draw_couplings(redraw, s.n_cells, spec),
                                        std::vector<double>(params.affinities().begin(), params.affinities().end()),
                                        params.convention());
                if (norm_stability_check(x, other) != s.norm_check) s.coupling_flip = true;
            }
        }
    });
    for (const auto& s : rep.samples) {
        rep.in_s += s.in_s;
        rep.norm_check += s.norm_check;
        rep.rho_below_one += s.spectral_radius < 1.0;
        rep.s_implication_violations += s.in_s && !s.norm_check;
        rep.norm_implication_violations += s.norm_check && !(s.spectral_radius < 1.0);
        rep.norm_bound_violations += s.spectral_radius > s.infinity_norm + 1e-9;
        rep.coupling_flips += s.coupling_flip;
    }
    return rep;
}

} // namespace cellring
