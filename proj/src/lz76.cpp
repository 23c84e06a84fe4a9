#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "cellring/complexity.hpp"
#include "cellring/error.hpp"

namespace cellring {

namespace {

// Online suffix automaton over the binary alphabet.
class SuffixAutomaton {
public:
    explicit SuffixAutomaton(std::size_t capacity) {
        const std::size_t states = 2 * capacity + 2;
        len_.reserve(states);
        link_.reserve(states);
        next_.reserve(states);
        add_state(0, -1);
    }

    static constexpr int root = 0;

    int transition(int state, std::uint8_t symbol) const { return next_[state][symbol]; }

    // Appends one symbol. If the state `tracked` is split and the tracked
    // string (length `tracked_len`) moves into the clone, `tracked` is updated.
    void extend(std::uint8_t symbol, int& tracked, std::size_t tracked_len) {
        const int cur = add_state(len_[last_] + 1, -1);
        int p = last_;
        while (p != -1 && next_[p][symbol] == -1) {
            next_[p][symbol] = cur;
            p = link_[p];
        }
        if (p == -1) {
            link_[cur] = root;
        } else {
            const int q = next_[p][symbol];
            if (len_[p] + 1 == len_[q]) {
                link_[cur] = q;
            } else {
                const int clone = add_state(len_[p] + 1, link_[q]);
                next_[clone] = next_[q];
                while (p != -1 && next_[p][symbol] == q) {
                    next_[p][symbol] = clone;
                    p = link_[p];
                }
                link_[q] = clone;
                link_[cur] = clone;
                if (tracked == q && tracked_len <= len_[clone]) tracked = clone;
            }
        }
        last_ = cur;
    }

private:
    int add_state(std::size_t len, int link) {
        len_.push_back(len);
        link_.push_back(link);
        next_.push_back({-1, -1});
        return static_cast<int>(len_.size()) - 1;
    }

    std::vector<std::size_t> len_;
    std::vector<int> link_;
    std::vector<std::array<int, 2>> next_;
    int last_ = root;
};

} // namespace

std::size_t lz76_pattern_count(std::span<const std::uint8_t> bits) {
    const std::size_t n = bits.size();
    if (n == 0) throw DomainError("lz76_pattern_count: empty sequence");
    for (auto b : bits)
        if (b > 1) throw DomainError("lz76_pattern_count: symbol outside {0, 1}");

    SuffixAutomaton sam(n);
    std::size_t built = 0; // automaton holds bits[0, built)
    std::size_t count = 0;
    std::size_t start = 0;
    while (start < n) {
        int state = SuffixAutomaton::root;
        std::size_t k = 0;
        for (;;) {
            // Extending the copy to length k + 1 needs the history bits[0, start + k).
            while (built < start + k) sam.extend(bits[built++], state, k);
            if (start + k >= n) {
                ++count; // copy ran into the end: final component
                start = n;
                break;
            }
            const int nxt = sam.transition(state, bits[start + k]);
            if (nxt == -1) {
                ++count;
                start += k + 1;
                break;
            }
            state = nxt;
            ++k;
        }
    }
    return count;
}

std::size_t lz76_pattern_count(const BinarySequence& seq) { return lz76_pattern_count(seq.bits); }

} // namespace cellring
