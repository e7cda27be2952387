#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>
#include <vector>

namespace mj {

/// Seeded draws with explicit bounding so identical seeds give identical
/// sequences on every platform (std::uniform_int_distribution makes no such
/// promise across standard libraries).
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform value in [0, bound), bound >= 1, by rejection sampling.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t value;
        do {
            value = engine_();
        } while (value >= limit);
        return value % bound;
    }

    /// Deterministic Fisher-Yates permutation of {0, ..., n-1}.
    std::vector<std::size_t> permutation(std::size_t n) {
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        for (std::size_t i = n; i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(order[i - 1], order[j]);
        }
        return order;
    }

private:
    std::mt19937_64 engine_;
};

/// FNV-1a, used wherever a stable content hash is needed (scripted judges).
inline std::uint64_t fnv1a64(std::string_view text, std::uint64_t seed = 1469598103934665603ull) {
    std::uint64_t hash = seed;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

}  // namespace mj
