#include "cellring/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "cellring/error.hpp"

namespace cellring {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

bool interior(double x) { return x > 0.0 && x < 1.0; }

void require_interior(std::span<const double> state, const char* what) {
    for (std::size_t i = 0; i < state.size(); ++i)
        if (!interior(state[i]))
            throw DomainError(std::string(what) + ": component " + std::to_string(i) + " = " + fmt(state[i]) +
                              " outside (0, 1)");
}

void check_range(std::span<const double> out) {
    for (std::size_t i = 0; i < out.size(); ++i)
        if (!interior(out[i])) throw RangeEscape(i, out[i]);
}

} // namespace

RangeEscape::RangeEscape(std::size_t component, double value, std::size_t step)
    : Error("state component " + std::to_string(component) + " = " + fmt(value) + " left (0, 1)" +
            (step == no_step ? std::string() : " at step " + std::to_string(step))),
      component_(component), value_(value), step_(step) {}

const char* to_string(CouplingConvention c) noexcept {
    return c == CouplingConvention::TwoCell ? "two-cell" : "ring";
}

ModelParams::ModelParams(double r, std::vector<double> couplings, std::vector<double> affinities,
                         CouplingConvention convention)
    : r_(r), couplings_(std::move(couplings)), affinities_(std::move(affinities)), convention_(convention) {
    if (!(r > 0.0 && r <= 4.0)) throw DomainError("r = " + fmt(r) + " violates 0 < r <= 4");
    if (couplings_.size() < 2) throw DomainError("ring needs N >= 2 cells");
    if (affinities_.size() != couplings_.size())
        throw DomainError("affinity count " + std::to_string(affinities_.size()) + " != cell count " +
                          std::to_string(couplings_.size()));
    for (std::size_t i = 0; i < couplings_.size(); ++i)
        if (!(couplings_[i] >= 0.0 && couplings_[i] <= 1.0))
            throw DomainError("coupling c[" + std::to_string(i) + "] = " + fmt(couplings_[i]) +
                              " violates 0 <= c <= 1");
    for (std::size_t i = 0; i < affinities_.size(); ++i)
        if (!(affinities_[i] > 0.0 && affinities_[i] < 1.0))
            throw DomainError("affinity p[" + std::to_string(i) + "] = " + fmt(affinities_[i]) +
                              " violates 0 < p < 1");
    const double sum = std::accumulate(affinities_.begin(), affinities_.end(), 0.0);
    if (std::abs(sum - 1.0) > affinity_sum_tolerance)
        throw DomainError("affinities sum to " + fmt(sum) + ", violating sum p = 1");
}

ModelParams ModelParams::two_cell(double r, double c, double p) {
    return ModelParams(r, {c, c}, {p, 1.0 - p}, CouplingConvention::TwoCell);
}

ModelParams ModelParams::ring(double r, std::vector<double> couplings, std::vector<double> affinities) {
    return ModelParams(r, std::move(couplings), std::move(affinities), CouplingConvention::Ring);
}

ModelParams ModelParams::ring(double r, double coupling, std::vector<double> affinities) {
    std::vector<double> c(affinities.size(), coupling);
    return ring(r, std::move(c), std::move(affinities));
}

ModelParams ModelParams::in_convention(CouplingConvention target) const {
    if (target == convention_) return *this;
    std::vector<double> c(couplings_.size());
    std::transform(couplings_.begin(), couplings_.end(), c.begin(), [](double v) { return 1.0 - v; });
    return ModelParams(r_, std::move(c), affinities_, target);
}

std::vector<double> Trajectory::component(std::size_t cell) const {
    std::vector<double> out;
    out.reserve(states.size());
    for (const auto& s : states) out.push_back(s.at(cell));
    return out;
}

double logistic(double r, double x) {
    if (!(r > 0.0 && r <= 4.0)) throw DomainError("logistic: r = " + fmt(r) + " violates 0 < r <= 4");
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("logistic: x = " + fmt(x) + " outside [0, 1]");
    return r * x * (1.0 - x);
}

std::array<double, 2> two_cell_step(std::array<double, 2> state, const ModelParams& params) {
    if (params.n_cells() != 2) throw DomainError("two_cell_step: params describe " +
                                                 std::to_string(params.n_cells()) + " cells");
    const ModelParams tc = params.in_convention(CouplingConvention::TwoCell);
    if (tc.couplings()[0] != tc.couplings()[1]) throw DomainError("two_cell_step: couplings differ between cells");
    require_interior(state, "two_cell_step");

    const double r = tc.r();
    const double c = tc.couplings()[0];
    const double p = tc.affinities()[0];
    const auto [x, y] = state;
    const std::array<double, 2> next{(1.0 - c) * r * x * (1.0 - x) + c * std::pow(y, p),
                                     (1.0 - c) * r * y * (1.0 - y) + c * std::pow(x, 1.0 - p)};
    check_range(next);
    return next;
}

StateVector ring_map(std::span<const double> state, const ModelParams& params) {
    const std::size_t n = params.n_cells();
    if (state.size() != n)
        throw DomainError("state has " + std::to_string(state.size()) + " cells, params " + std::to_string(n));
    const double r = params.r();
    const auto p = params.affinities();
    StateVector out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = state[i];
        const double next = state[(i + 1) % n];
        out[i] = params.logistic_weight(i) * (r * x * (1.0 - x)) + params.inflow_weight(i) * std::pow(next, p[i]);
    }
    return out;
}

StateVector ring_step(std::span<const double> state, const ModelParams& params) {
    require_interior(state, "ring_step");
    StateVector out = ring_map(state, params);
    check_range(out);
    return out;
}

Matrix map_jacobian(std::span<const double> state, const ModelParams& params) {
    const std::size_t n = params.n_cells();
    if (state.size() != n)
        throw DomainError("state has " + std::to_string(state.size()) + " cells, params " + std::to_string(n));
    const double r = params.r();
    const auto p = params.affinities();
    Matrix j(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = (i + 1) % n;
        j(i, i) += params.logistic_weight(i) * r * (1.0 - 2.0 * state[i]);
        j(i, k) += params.inflow_weight(i) * p[i] * std::pow(state[k], p[i] - 1.0);
    }
    return j;
}

Trajectory simulate(const ModelParams& params, const StateVector& x0, std::size_t n_total,
                    std::size_t n_transient) {
    if (n_total <= n_transient)
        throw DomainError("simulate: n_total = " + std::to_string(n_total) + " must exceed n_transient = " +
                          std::to_string(n_transient));
    if (x0.size() != params.n_cells())
        throw DomainError("simulate: x0 has " + std::to_string(x0.size()) + " cells, params " +
                          std::to_string(params.n_cells()));
    require_interior(x0, "simulate");

    Trajectory traj{{}, n_transient, params};
    traj.states.reserve(n_total - n_transient);
    StateVector x = x0;
    for (std::size_t step = 1; step <= n_total; ++step) {
        x = ring_map(x, params);
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!interior(x[i])) throw RangeEscape(i, x[i], step);
        if (step > n_transient) traj.states.push_back(x);
    }
    return traj;
}

double fixed_point_residual(std::span<const double> state, const ModelParams& params) {
    const StateVector fx = ring_map(state, params);
    double res = 0.0;
    for (std::size_t i = 0; i < fx.size(); ++i) {
        const double d = std::abs(fx[i] - state[i]);
        if (std::isnan(d)) return d;
        res = std::max(res, d);
    }
    return res;
}

StateVector find_fixed_point(const ModelParams& params, const StateVector& guess, double tol,
                             std::size_t max_iter) {
    if (!(tol > 0.0)) throw DomainError("find_fixed_point: tol must be positive");
    if (guess.size() != params.n_cells()) throw DomainError("find_fixed_point: guess has wrong dimension");
    require_interior(guess, "find_fixed_point");

    const std::size_t n = guess.size();
    const auto inside = [](const StateVector& v) { return std::all_of(v.begin(), v.end(), interior); };

    StateVector x = guess;
    for (std::size_t it = 0; it <= max_iter; ++it) {
        const StateVector fx = ring_map(x, params);
        std::vector<double> g(n);
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            g[i] = fx[i] - x[i];
            res = std::max(res, std::abs(g[i]));
        }
        if (std::isnan(res)) throw NotConverged("find_fixed_point: residual is NaN");
        if (res < tol) {
            for (std::size_t i = 0; i < n; ++i)
                if (std::min(x[i], 1.0 - x[i]) < fixed_point_boundary_margin)
                    throw BoundaryEscape("find_fixed_point: converged to the boundary, component " +
                                         std::to_string(i) + " = " + fmt(x[i]));
            return x;
        }
        if (it == max_iter) break;

        Matrix jm = map_jacobian(x, params);
        for (std::size_t i = 0; i < n; ++i) jm(i, i) -= 1.0;
        std::vector<double> rhs(n);
        for (std::size_t i = 0; i < n; ++i) rhs[i] = -g[i];
        const std::vector<double> delta = lu_solve(std::move(jm), std::move(rhs));

        StateVector cand(n);
        for (std::size_t i = 0; i < n; ++i) cand[i] = x[i] + delta[i];
        if (!inside(cand) || !(fixed_point_residual(cand, params) < res)) {
            for (std::size_t i = 0; i < n; ++i) cand[i] = x[i] + 0.5 * g[i];
            if (!inside(cand))
                throw BoundaryEscape("find_fixed_point: damped iterate left the open unit cube");
        }
        x = std::move(cand);
    }
    throw NotConverged("find_fixed_point: no convergence after " + std::to_string(max_iter) + " iterations");
}

} // namespace cellring
