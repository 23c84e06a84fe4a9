#include <doctest.h>

#include <cmath>

#include "cellring/eigen.hpp"
#include "cellring/error.hpp"
#include "cellring/stability.hpp"
#include "helpers.hpp"
#include "oracles/ring_oracle.hpp"

using namespace cellring;

TEST_CASE("two-cell jacobian entries") {
    const auto params = ModelParams::two_cell(4.0, 0.02, 0.5);
    const Jacobian2 j = jacobian_two_cell({0.5, 0.5}, params);
    CHECK(j.a11 == 0.0);
    CHECK(j.a22 == 0.0);
    const double off = 0.02 * 0.5 / std::sqrt(0.5);
    CHECK(j.a12 == doctest::Approx(off));
    CHECK(j.a21 == doctest::Approx(off));
    const EigenPair e = eigenvalues_two_cell(j);
    CHECK(e.max_abs() == doctest::Approx(off));
    CHECK(e.min_abs() == doctest::Approx(off));
    CHECK_THROWS_AS(jacobian_two_cell({0.0, 0.5}, params), SingularEntry);
    CHECK_THROWS_AS(jacobian_two_cell({0.5, 1.0}, params), SingularEntry);
}

TEST_CASE("two-cell jacobian equals the map derivative and the ring form") {
    Rng rng(21);
    for (int t = 0; t < 50; ++t) {
        const auto params = ModelParams::two_cell(rng.uniform_open(0.5, 4.0), rng.uniform(0.0, 1.0),
                                                  rng.uniform_open(0.05, 0.95));
        const std::vector<double> x{rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95)};
        const Matrix j = jacobian_two_cell({x[0], x[1]}, params).as_matrix();
        const Matrix f = testutil::fd_jacobian(params, x, 1e-6);
        const Matrix ring = jacobian_ring(x, params);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t k = 0; k < 2; ++k) {
                CHECK(j(i, k) == doctest::Approx(f(i, k)).epsilon(1e-6));
                CHECK(j(i, k) == doctest::Approx(ring(i, k)).epsilon(1e-14));
            }
    }
}

TEST_CASE("discriminant closed form") {
    Rng rng(5);
    for (int t = 0; t < 100; ++t) {
        const auto params = ModelParams::two_cell(rng.uniform_open(0.0, 4.0), rng.uniform(0.0, 1.0),
                                                  rng.uniform_open(0.0, 1.0));
        const std::array<double, 2> eq{rng.uniform_open(0.0, 1.0), rng.uniform_open(0.0, 1.0)};
        const Jacobian2 j = jacobian_two_cell(eq, params);
        const double direct = j.trace() * j.trace() / 4 - j.determinant();
        CHECK(two_cell_discriminant(eq, params) == doctest::Approx(direct).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("invariants") {
    const auto inv = equilibrium_invariants({0.25, 0.64}, 0.5);
    CHECK(inv.alpha == doctest::Approx(0.89));
    CHECK(inv.beta == doctest::Approx(std::sqrt(0.25 * 0.64) / 0.25));
    CHECK(inv.gamma == doctest::Approx(0.5 * -0.28));
}

TEST_CASE("two-cell eigenvalues agree with a general solver") {
    Rng rng(6);
    for (int t = 0; t < 200; ++t) {
        const auto params = ModelParams::two_cell(rng.uniform_open(0.0, 4.0), rng.uniform(0.0, 1.0),
                                                  rng.uniform_open(0.0, 1.0));
        const Jacobian2 j = jacobian_two_cell({rng.uniform_open(0.0, 1.0), rng.uniform_open(0.0, 1.0)}, params);
        const EigenPair e = eigenvalues_two_cell(j);
        const Matrix m = j.as_matrix();
        const auto ref = oracle::sorted_magnitudes(oracle::eigen_reference({m.data().begin(), m.data().end()}, 2));
        CHECK(e.max_abs() == doctest::Approx(ref[0]).epsilon(1e-9));
        CHECK(e.min_abs() == doctest::Approx(ref[1]).epsilon(1e-9).scale(1e-6));
        CHECK(e.max_abs() >= e.min_abs());
    }
}

TEST_CASE("classification is strict") {
    CHECK(classify_equilibrium(0.5, 0.1) == Stability::AsymptoticallyStable);
    CHECK(classify_equilibrium(3.0, 1.5) == Stability::Unstable);
    CHECK(classify_equilibrium(1.5, 0.5) == Stability::Indeterminate);
    CHECK(classify_equilibrium(1.0, 0.5) == Stability::Indeterminate);
    CHECK(classify_equilibrium(2.0, 1.0) == Stability::Indeterminate);
    const std::vector<std::complex<double>> spec{{0.3, 0.4}, {0.3, -0.4}, {-0.2, 0}};
    CHECK(classify_equilibrium(spec) == Stability::AsymptoticallyStable);
    CHECK(std::string(to_string(Stability::Unstable)) == "unstable");
}

TEST_CASE("ring jacobian has the D + EZ structure") {
    Rng rng(13);
    const auto params = testutil::random_ring(rng, 6);
    std::vector<double> x(6);
    for (auto& v : x) v = rng.uniform(0.1, 0.9);
    const Matrix j = jacobian_ring(x, params);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(j(i, i) == doctest::Approx(params.couplings()[i] * params.r() * (1 - 2 * x[i])));
        const double e = (1 - params.couplings()[i]) * params.affinities()[i] *
                         std::pow(x[(i + 1) % 6], params.affinities()[i] - 1);
        CHECK(j(i, (i + 1) % 6) == doctest::Approx(e));
        for (std::size_t k = 0; k < 6; ++k)
            if (k != i && k != (i + 1) % 6) CHECK(j(i, k) == 0.0);
    }
}

TEST_CASE("norm check is the row-sum test") {
    Rng rng(17);
    for (int t = 0; t < 100; ++t) {
        const auto params = testutil::random_ring(rng, 2 + t % 9);
        std::vector<double> x(params.n_cells());
        for (auto& v : x) v = rng.uniform_open(0.0, 1.0);
        const Matrix j = jacobian_ring(x, params);
        CHECK(norm_stability_check(x, params) == (infinity_norm(j) < 1.0));
        if (norm_stability_check(x, params)) CHECK(spectral_radius(j) < 1.0);
    }
}

TEST_CASE("region S") {
    SUBCASE("window and affinity bound") {
        const Interval w = logistic_window(4.0);
        CHECK(w.lo == 0.375);
        CHECK(w.hi == 0.625);
        CHECK(affinity_lower_bound(0.5) == doctest::Approx(0.25));
        CHECK(affinity_lower_bound(0.8) == doctest::Approx(std::pow(0.8, 5.0)));
        CHECK(affinity_lower_bound(1e-9) < 1.1e-9);
        CHECK(affinity_lower_bound(0.999999) == doctest::Approx(std::exp(-1.0)).epsilon(1e-5));
    }
    SUBCASE("membership uses the previous cell's affinity") {
        const auto params = ModelParams::ring(4.0, 0.5, {0.2, 0.8});
        // cell 0 draws its bound from p_1 = 0.8, cell 1 from p_0 = 0.2
        CHECK(region_s_lower(0, params) == doctest::Approx(std::max(0.375, std::pow(0.8, 5.0))));
        CHECK(region_s_lower(1, params) == doctest::Approx(0.375));
        CHECK(region_s_membership(std::vector<double>{0.5, 0.5}, params));
        CHECK_FALSE(region_s_membership(std::vector<double>{0.36, 0.5}, params));
        CHECK_FALSE(region_s_membership(std::vector<double>{0.5, 0.63}, params));
    }
    SUBCASE("hypercube bounds") {
        const auto b = region_s_bounds(3.9);
        CHECK(b.inner.lo == doctest::Approx(0.375));
        CHECK(b.inner.hi == doctest::Approx(0.625));
        CHECK(b.outer.lo == doctest::Approx(std::exp(-1.0)));
        CHECK(b.outer.hi == doctest::Approx(1 - std::exp(-1.0)));
        const auto capped = region_s_bounds(3.9, 0.8);
        CHECK(capped.outer.lo == doctest::Approx(1.0 / 3.0));
        CHECK(capped.outer.hi == doctest::Approx(2.0 / 3.0));
        const auto low = region_s_bounds(2.0);
        CHECK(low.outer.lo == doctest::Approx(0.25));
        CHECK(low.inner.lo == doctest::Approx(std::exp(-1.0)));
        CHECK_THROWS_AS(region_s_bounds(1.0), DomainError);
    }
    SUBCASE("inner cube lies in S and S in the outer cube") {
        Rng rng(31);
        for (int t = 0; t < 300; ++t) {
            const double r = rng.uniform_open(1.0, 4.0);
            const std::size_t n = 2 + rng.integer(0, 20);
            const ModelParams params(r, std::vector<double>(n, 0.5), testutil::random_affinities(rng, n),
                                     CouplingConvention::Ring);
            const RegionSBounds b = region_s_bounds(r);
            if (b.inner.lo < b.inner.hi) {
                std::vector<double> x(n);
                for (auto& v : x) v = rng.uniform_open(b.inner.lo, b.inner.hi);
                CHECK(region_s_membership(x, params));
            }
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(region_s_lower(i, params) >= b.outer.lo - 1e-15);
                CHECK(logistic_window(r).hi <= b.outer.hi + 1e-15);
            }
        }
    }
}

TEST_CASE("analyze_equilibrium") {
    const auto params = ModelParams::ring(4.0, 0.5, {0.3, 0.3, 0.4});
    const std::vector<double> x{0.5, 0.5, 0.5};
    const StabilityReport rep = analyze_equilibrium(x, params);
    CHECK(rep.spectrum.size() == 3);
    CHECK(rep.in_region_s);
    CHECK(rep.norm_check);
    CHECK(rep.classification == Stability::AsymptoticallyStable);
    CHECK(rep.spectral_radius <= rep.infinity_norm);
    CHECK(rep.margin == doctest::Approx(rep.eigen_max - 1));
}

TEST_CASE("empirical probe agrees with linearization on clear cases") {
    SUBCASE("stable logistic fixed point") {
        const auto params = ModelParams::two_cell(2.5, 0.0, 0.5);
        const std::vector<double> eq{0.6, 0.6};
        CHECK(empirical_stability_probe(params, eq, 1e-3, 20, 400, 1) == ProbeOutcome::Converged);
    }
    SUBCASE("unstable logistic fixed point") {
        const auto params = ModelParams::two_cell(3.8, 0.0, 0.5);
        const double f = 1 - 1 / 3.8;
        const std::vector<double> eq{f, f};
        CHECK(empirical_stability_probe(params, eq, 1e-4, 20, 400, 1) == ProbeOutcome::Diverged);
    }
    SUBCASE("uncertified point is rejected") {
        const auto params = ModelParams::two_cell(2.5, 0.0, 0.5);
        CHECK_THROWS_AS(empirical_stability_probe(params, std::vector<double>{0.5, 0.5}, 1e-3, 5, 10, 1),
                        DomainError);
    }
}
