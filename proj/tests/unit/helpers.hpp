#pragma once

#include <vector>

#include "cellring/dynamics.hpp"
#include "cellring/linalg.hpp"
#include "cellring/random.hpp"

namespace testutil {

// Central differences of the map, column by column.
inline cellring::Matrix fd_jacobian(const cellring::ModelParams& params, const std::vector<double>& x, double h) {
    const std::size_t n = x.size();
    cellring::Matrix j(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        auto xp = x, xm = x;
        xp[k] += h;
        xm[k] -= h;
        const auto fp = cellring::ring_map(xp, params), fm = cellring::ring_map(xm, params);
        for (std::size_t i = 0; i < n; ++i) j(i, k) = (fp[i] - fm[i]) / (2 * h);
    }
    return j;
}

inline std::vector<double> random_affinities(cellring::Rng& rng, std::size_t n) {
    std::vector<double> w(n);
    double s = 0;
    for (auto& v : w) s += v = rng.uniform_open(0.0, 1.0);
    for (auto& v : w) v /= s;
    return w;
}

inline cellring::ModelParams random_ring(cellring::Rng& rng, std::size_t n, double r_lo = 1.0, double r_hi = 4.0) {
    std::vector<double> c(n);
    for (auto& v : c) v = rng.uniform_open(0.0, 1.0);
    return cellring::ModelParams(rng.uniform_open(r_lo, r_hi), c, random_affinities(rng, n),
                                 cellring::CouplingConvention::Ring);
}

} // namespace testutil
