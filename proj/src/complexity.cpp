#include "cellring/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cellring/error.hpp"

namespace cellring {

BinarySequence BinarySequence::from_string(std::string_view s) {
    BinarySequence out;
    out.bits.reserve(s.size());
    for (char ch : s) {
        if (ch != '0' && ch != '1') throw DomainError("binary sequence contains '" + std::string(1, ch) + "'");
        out.bits.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    return out;
}

std::string BinarySequence::to_string() const {
    std::string s(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i) s[i] = static_cast<char>('0' + bits[i]);
    return s;
}

BinarySequence binarize(std::span<const double> series, double threshold) {
    if (series.empty()) throw DomainError("binarize: empty series");
    BinarySequence out;
    out.bits.resize(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (!std::isfinite(series[i])) throw DomainError("binarize: non-finite sample at " + std::to_string(i));
        out.bits[i] = series[i] >= threshold ? 1 : 0;
    }
    return out;
}

double normalized_complexity(const BinarySequence& seq) {
    const std::size_t n = seq.size();
    if (n < 2) throw DomainError("normalized_complexity: need N >= 2, got " + std::to_string(n));
    const double nn = static_cast<double>(n);
    return static_cast<double>(lz76_pattern_count(seq)) * std::log2(nn) / nn;
}

double kc_single(std::span<const double> series) {
    if (series.size() < 2) throw DomainError("kc_single: need at least 2 samples");
    const double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(series.size());
    return normalized_complexity(binarize(series, mean));
}

ComplexitySpectrum complexity_spectrum(std::span<const double> series) {
    const std::size_t n = series.size();
    if (n < 2) throw DomainError("complexity_spectrum: need at least 2 samples");

    ComplexitySpectrum out;
    out.thresholds.assign(series.begin(), series.end());
    out.values.assign(n, 0.0);

    // Equal thresholds give equal binarizations; evaluate each distinct value once.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return series[a] < series[b]; });

    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t idx = order[k];
        if (k > 0 && series[order[k - 1]] == series[idx]) {
            out.values[idx] = out.values[order[k - 1]];
            continue;
        }
        out.values[idx] = normalized_complexity(binarize(series, series[idx]));
    }

    const auto it = std::max_element(out.values.begin(), out.values.end());
    out.max_index = static_cast<std::size_t>(it - out.values.begin());
    out.max_value = *it;
    return out;
}

std::vector<double> normalize_series(std::span<const double> series) {
    if (series.empty()) throw DomainError("normalize_series: empty series");
    const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
    const double mn = *lo, mx = *hi;
    if (!(mx > mn)) throw DegenerateRange("normalize_series: max equals min");
    std::vector<double> out(series.size());
    const double span = mx - mn;
    for (std::size_t i = 0; i < series.size(); ++i) out[i] = (series[i] - mn) / span;
    return out;
}

} // namespace cellring
