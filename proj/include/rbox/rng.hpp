#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "rbox/relation.hpp"

namespace rbox {

/// Generator "rbox-mt64 v1": std::mt19937_64 seeded with the 64-bit seed,
/// with the derived draws below defined here rather than by the standard
/// library's distributions, so outputs are identical across platforms.
class Rng {
public:
    static constexpr const char* kName = "rbox-mt64 v1";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound), bound > 0, by rejection of the biased tail.
    std::uint64_t bounded(std::uint64_t bound) {
        const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
        while (true) {
            std::uint64_t x = engine_();
            if (x >= limit) return x % bound;
        }
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform k-subset of values (k <= size), returned sorted. Partial
    /// Fisher-Yates on a copy.
    std::vector<Index> subset(std::span<const Index> values, std::size_t k) {
        std::vector<Index> pool(values.begin(), values.end());
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t j = i + bounded(pool.size() - i);
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        std::sort(pool.begin(), pool.end());
        return pool;
    }

    /// Uniform permutation of values (Fisher-Yates from the back).
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[bounded(i)]);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace rbox
