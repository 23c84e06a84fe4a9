#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace cellring {

/// Sequence over {0, 1}, one byte per symbol.
struct BinarySequence {
    std::vector<std::uint8_t> bits;

    std::size_t size() const noexcept { return bits.size(); }
    bool operator==(const BinarySequence&) const = default;

    /// Parses a string of '0'/'1' characters.
    static BinarySequence from_string(std::string_view s);
    std::string to_string() const;
};

/// bit_i = 1 iff series[i] >= threshold.
BinarySequence binarize(std::span<const double> series, double threshold);

/// Lempel-Ziv (1976) production complexity: the number of components in the
/// exhaustive-history parse. A component starting at l copies the longest
/// s[l, l+k) that occurs in s[0, l+k-1) and appends one innovation symbol; a
/// copy reaching the end of the sequence closes the final component.
///
/// Runs in linear time using an online suffix automaton of the parsed prefix.
std::size_t lz76_pattern_count(const BinarySequence& seq);
std::size_t lz76_pattern_count(std::span<const std::uint8_t> bits);

/// c(N) log2(N) / N. Not clamped: short random sequences can exceed 1.
double normalized_complexity(const BinarySequence& seq);

/// Normalized complexity of the series binarized at its arithmetic mean.
double kc_single(std::span<const double> series);

struct ComplexitySpectrum {
    std::vector<double> thresholds;
    std::vector<double> values;
    double max_value = 0.0;
    std::size_t max_index = 0;
};

/// Uses every sample as a threshold in turn; values[k] is the normalized
/// complexity of binarize(series, series[k]). max_index is the first position
/// attaining the maximum.
ComplexitySpectrum complexity_spectrum(std::span<const double> series);

/// (x - min) / (max - min); throws DegenerateRange for a constant series.
std::vector<double> normalize_series(std::span<const double> series);

} // namespace cellring
