#include <doctest.h>

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "cellring/complexity.hpp"
#include "cellring/eigen.hpp"
#include "cellring/error.hpp"
#include "cellring/io.hpp"
#include "cellring/sweep.hpp"

using namespace cellring;

TEST_CASE("axis point counts") {
    CHECK(AxisSpec{"r", 3.6, 4.0, 0.02}.count() == 21);
    CHECK(AxisSpec{"r", 3.6, 4.0, 0.005}.count() == 81);
    CHECK(AxisSpec{"p", 0.0, 1.0, 0.005}.count() == 201);
    CHECK(AxisSpec{"p", 0.5, 0.5, 0.1}.count() == 1);
    const AxisSpec u = AxisSpec::unit_interior("x", 0.01);
    CHECK(u.count() == 99);
    CHECK(u.value(0) == 0.01);
    CHECK(u.value(98) == doctest::Approx(0.99));
    CHECK(AxisSpec::unit_interior("x", 0.3).count() == 3);
    CHECK_THROWS_AS((AxisSpec{"r", 1.0, 0.0, 0.1}.validate()), DomainError);
    CHECK_THROWS_AS((AxisSpec{"r", 0.0, 1.0, 0.0}.validate()), DomainError);
}

TEST_CASE("parallel_for visits every index once and rethrows") {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS_AS(parallel_for(100, 3,
                                 [](std::size_t i) {
                                     if (i == 57) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
}

TEST_CASE("1x1 complexity map equals a direct spectrum") {
    const SimSettings sim{{0.3, 0.5}, 1200, 200};
    const Grid g = complexity_map({"r", 3.95, 3.95, 0.02}, {"p", 0.5, 0.5, 0.02}, 0.02, CouplingConvention::TwoCell,
                                  sim);
    REQUIRE(g.values.size() == 1);
    const auto traj = simulate(ModelParams::two_cell(3.95, 0.02, 0.5), sim.x0, sim.n_total, sim.n_transient);
    CHECK(g.values[0] == complexity_spectrum(traj.component(0)).max_value);
}

TEST_CASE("complexity map marks escapes as missing") {
    // c = 0 and x0 = 0.5 at r = 4 hits 1 on the first step
    const SimSettings sim{{0.5, 0.3}, 50, 10};
    const Grid g =
        complexity_map({"r", 3.9, 4.0, 0.1}, {"p", 0.5, 0.5, 0.1}, 0.0, CouplingConvention::TwoCell, sim);
    REQUIRE(g.values.size() == 2);
    CHECK_FALSE(std::isnan(g.values[0]));
    CHECK(std::isnan(g.values[1]));
    CHECK(g.escape_count == 1);
    CHECK(grid_csv(g).find("NaN") != std::string::npos);
}

TEST_CASE("complexity map is independent of worker count") {
    const SimSettings sim{{0.3, 0.5}, 700, 200};
    const AxisSpec r{"r", 3.8, 4.0, 0.05}, p{"p", 0.2, 0.8, 0.2};
    const Grid a = complexity_map(r, p, 0.02, CouplingConvention::TwoCell, sim, 1);
    const Grid b = complexity_map(r, p, 0.02, CouplingConvention::TwoCell, sim, 5);
    CHECK(grid_csv(a) == grid_csv(b));
}

TEST_CASE("stability map") {
    const auto params = ModelParams::two_cell(4.0, 0.02, 0.5);
    const AxisSpec ax = AxisSpec::unit_interior("x", 0.1);
    const Grid g = stability_region_map(ax, ax, params);
    CHECK(g.kind == GridKind::Category);
    CHECK(g.singular_count == 0);
    for (std::size_t iy = 0; iy < g.ny(); ++iy)
        for (std::size_t ix = 0; ix < g.nx(); ++ix) {
            const double v = g.at(ix, iy);
            CHECK(v == static_cast<double>(stability_cell(ax.value(ix), ax.value(iy), params)));
        }
    // the centre is stable, the corners unstable
    CHECK(g.at(4, 4) == 0.0);
    CHECK(g.at(0, 0) == 1.0);
    CHECK(g.at(8, 8) == 1.0);
    bool sing = false;
    CHECK(stability_cell(0.0, 0.5, params, &sing) == Stability::Indeterminate);
    CHECK(sing);
    CHECK_THROWS_AS(stability_region_map(ax, ax, ModelParams::ring(4.0, 0.5, {0.2, 0.3, 0.5})), DomainError);
}

TEST_CASE("eigen surfaces are ordered") {
    const auto params = ModelParams::two_cell(3.0, 0.3, 0.25);
    const AxisSpec ax = AxisSpec::unit_interior("x", 0.05);
    const auto [gmax, gmin] = eigen_surface_map(ax, ax, params, 2);
    for (std::size_t k = 0; k < gmax.values.size(); ++k) CHECK(gmax.values[k] >= gmin.values[k]);
}

TEST_CASE("ring sampler is reproducible and respects placement") {
    RingSamplerSpec spec;
    spec.n_max = 30;
    const auto a = draw_ring_instance(spec, 42, 7);
    const auto b = draw_ring_instance(spec, 42, 7);
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
    CHECK(region_s_membership(a.second, a.first));

    spec.placement = EquilibriumPlacement::OutsideOuter;
    spec.r_min = 3.8;
    for (std::size_t k = 0; k < 20; ++k) {
        const auto [params, x] = draw_ring_instance(spec, 1, k);
        const Interval hole = region_s_bounds(params.r()).outer;
        for (double v : x) CHECK_FALSE(hole.contains(v));
        CHECK_FALSE(region_s_membership(x, params));
    }
}

TEST_CASE("ring sample report counts") {
    RingSamplerSpec spec;
    spec.n_max = 20;
    const auto rep = ring_stability_sample(spec, 60, 3, 2);
    CHECK(rep.samples.size() == 60);
    CHECK(rep.in_s == 60);
    CHECK(rep.s_implication_violations == 0);
    CHECK(rep.norm_implication_violations == 0);
    CHECK(rep.norm_bound_violations == 0);
    CHECK(rep.coupling_flips == 0);
    const auto again = ring_stability_sample(spec, 60, 3, 1);
    for (std::size_t k = 0; k < 60; ++k) CHECK(again.samples[k].spectral_radius == rep.samples[k].spectral_radius);
}
