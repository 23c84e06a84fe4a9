#include "cellring/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cellring/error.hpp"

namespace cellring {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr int max_sweeps_per_eigenvalue = 60;

void check_square(const Matrix& a, const char* what) {
    if (!a.square()) throw DomainError(std::string(what) + ": matrix is not square");
    if (a.rows() > max_eigen_dimension)
        throw DomainError(std::string(what) + ": dimension exceeds " + std::to_string(max_eigen_dimension));
}

// Reflector mapping (x, y, z) onto a multiple of e1; returns false when the
// vector is already zero.
struct Reflector3 {
    double v0, v1, v2, beta;
};

bool make_reflector(double x, double y, double z, Reflector3& h) {
    const double norm = std::sqrt(x * x + y * y + z * z);
    if (norm == 0.0) return false;
    const double alpha = x >= 0.0 ? -norm : norm;
    h.v0 = x - alpha;
    h.v1 = y;
    h.v2 = z;
    const double vtv = h.v0 * h.v0 + h.v1 * h.v1 + h.v2 * h.v2;
    if (vtv == 0.0) return false;
    h.beta = 2.0 / vtv;
    return true;
}

void two_by_two(double a, double b, double c, double d, std::complex<double>& l1, std::complex<double>& l2) {
    const double p = 0.5 * (a - d);
    const double w = b * c;
    const double q = p * p + w;
    if (q >= 0.0) {
        const double z = p + std::copysign(std::sqrt(q), p);
        l1 = d + z;
        l2 = z != 0.0 ? d - w / z : d + z;
    } else {
        const double z = std::sqrt(-q);
        l1 = {d + p, z};
        l2 = {d + p, -z};
    }
}

// One Francis double-shift sweep on the unreduced block [lo, hi] of h.
// Updates are restricted to the block since only eigenvalues are wanted.
void francis_sweep(Matrix& h, std::size_t lo, std::size_t hi, double s, double t) {
    double x = h(lo, lo) * h(lo, lo) + h(lo, lo + 1) * h(lo + 1, lo) - s * h(lo, lo) + t;
    double y = h(lo + 1, lo) * (h(lo, lo) + h(lo + 1, lo + 1) - s);
    double z = hi >= lo + 2 ? h(lo + 1, lo) * h(lo + 2, lo + 1) : 0.0;

    for (std::size_t k = lo; k + 2 <= hi; ++k) {
        Reflector3 r{};
        if (make_reflector(x, y, z, r)) {
            const std::size_t col0 = k > lo ? k - 1 : lo;
            for (std::size_t j = col0; j <= hi; ++j) {
                const double dot = r.beta * (r.v0 * h(k, j) + r.v1 * h(k + 1, j) + r.v2 * h(k + 2, j));
                h(k, j) -= dot * r.v0;
                h(k + 1, j) -= dot * r.v1;
                h(k + 2, j) -= dot * r.v2;
            }
            const std::size_t row1 = std::min(k + 3, hi);
            for (std::size_t i = lo; i <= row1; ++i) {
                const double dot = r.beta * (h(i, k) * r.v0 + h(i, k + 1) * r.v1 + h(i, k + 2) * r.v2);
                h(i, k) -= dot * r.v0;
                h(i, k + 1) -= dot * r.v1;
                h(i, k + 2) -= dot * r.v2;
            }
            if (k > lo) {
                h(k + 1, k - 1) = 0.0;
                h(k + 2, k - 1) = 0.0;
            }
        }
        x = h(k + 1, k);
        y = h(k + 2, k);
        z = k + 3 <= hi ? h(k + 3, k) : 0.0;
    }

    // Final 2x2 reflector on rows hi-1, hi.
    const std::size_t k = hi - 1;
    Reflector3 r{};
    if (make_reflector(x, y, 0.0, r)) {
        const std::size_t col0 = k > lo ? k - 1 : lo;
        for (std::size_t j = col0; j <= hi; ++j) {
            const double dot = r.beta * (r.v0 * h(k, j) + r.v1 * h(k + 1, j));
            h(k, j) -= dot * r.v0;
            h(k + 1, j) -= dot * r.v1;
        }
        for (std::size_t i = lo; i <= hi; ++i) {
            const double dot = r.beta * (h(i, k) * r.v0 + h(i, k + 1) * r.v1);
            h(i, k) -= dot * r.v0;
            h(i, k + 1) -= dot * r.v1;
        }
        if (k > lo) h(k + 1, k - 1) = 0.0;
    }
}

} // namespace

Matrix balance(Matrix a) {
    check_square(a, "balance");
    const std::size_t n = a.rows();
    constexpr double radix = 2.0;
    constexpr double sqrdx = radix * radix;
    bool done = false;
    while (!done) {
        done = true;
        for (std::size_t i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                const double inv = 1.0 / f;
                for (std::size_t j = 0; j < n; ++j) a(i, j) *= inv;
                for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
    return a;
}

Matrix hessenberg(Matrix a) {
    check_square(a, "hessenberg");
    const std::size_t n = a.rows();
    if (n < 3) return a;
    std::vector<double> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double scale = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) scale += std::abs(a(i, k));
        if (scale == 0.0) continue;
        double sigma = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = a(i, k) / scale;
            sigma += v[i] * v[i];
        }
        const double norm = std::sqrt(sigma);
        const double alpha = v[k + 1] >= 0.0 ? -norm : norm;
        v[k + 1] -= alpha;
        double vv = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vv += v[i] * v[i];
        if (vv == 0.0) continue;
        const double beta = 2.0 / vv;

        for (std::size_t j = k; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) dot += v[i] * a(i, j);
            dot *= beta;
            for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= dot * v[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            double dot = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) dot += a(i, j) * v[j];
            dot *= beta;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= dot * v[j];
        }
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
    return a;
}

std::vector<std::complex<double>> eigenvalues(const Matrix& a) {
    check_square(a, "eigenvalues");
    const std::size_t n = a.rows();
    std::vector<std::complex<double>> out(n);
    if (n == 0) return out;
    for (double v : a.data())
        if (!std::isfinite(v)) throw NumericalFailure("eigenvalues: non-finite matrix entry");

    Matrix h = hessenberg(balance(a));

    double anorm = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i > 0 ? i - 1 : 0; j < n; ++j) anorm += std::abs(h(i, j));

    std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
    int its = 0;
    while (hi >= 0) {
        const auto q = static_cast<std::size_t>(hi);
        // Locate the start of the trailing unreduced block.
        std::size_t lo = q;
        while (lo > 0) {
            double s = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
            if (s == 0.0) s = anorm;
            if (std::abs(h(lo, lo - 1)) <= eps * s) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }

        if (lo == q) {
            out[q] = h(q, q);
            hi -= 1;
            its = 0;
            continue;
        }
        if (lo + 1 == q) {
            two_by_two(h(q - 1, q - 1), h(q - 1, q), h(q, q - 1), h(q, q), out[q - 1], out[q]);
            if (out[q - 1].imag() < 0.0) std::swap(out[q - 1], out[q]);
            hi -= 2;
            its = 0;
            continue;
        }
        if (its >= max_sweeps_per_eigenvalue)
            throw NumericalFailure("eigenvalues: QR iteration did not converge at index " + std::to_string(q));

        double s, t;
        if (its > 0 && its % 10 == 0) {
            // Exceptional shift to break cycles.
            const double w = std::abs(h(q, q - 1)) + std::abs(h(q - 1, q - 2));
            const double h11 = 0.75 * w + h(q, q);
            const double h12 = -0.4375 * w;
            s = 2.0 * h11;
            t = h11 * h11 - h12 * w;
        } else {
            s = h(q - 1, q - 1) + h(q, q);
            t = h(q - 1, q - 1) * h(q, q) - h(q - 1, q) * h(q, q - 1);
        }
        francis_sweep(h, lo, q, s, t);
        ++its;
    }
    return out;
}

double spectral_radius(const Matrix& a) {
    double rho = 0.0;
    for (const auto& l : eigenvalues(a)) rho = std::max(rho, std::abs(l));
    return rho;
}

} // namespace cellring
