#pragma once

// Deterministic, platform-independent random number generation.
//
// Monte Carlo estimators in this library derive one generator stream per
// sample from (seed, sample index), so results do not depend on how the
// sample range is partitioned or batched.  Everything is plain uint64
// arithmetic; output is reproducible across compilers and machines.

#include <algorithm>
#include <cstdint>
#include <vector>

namespace canal {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Small counter-seeded generator (splitmix64 core).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // Warm up so that nearby seeds give unrelated sequences.
        splitmix64(state_);
        splitmix64(state_);
    }

    /// Stream `stream_id` of a seed: independent sequence per id.
    static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
        std::uint64_t s = seed;
        std::uint64_t h = splitmix64(s);
        s = h ^ (stream_id * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull);
        return Rng(s);
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    bool next_bit() { return next_u64() >> 63; }

    /// Unbiased uniform draw from [0, bound); bound > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        // Lemire's method with rejection.
        std::uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            std::uint64_t threshold = (0 - bound) % bound;
            while (lo < threshold) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Bernoulli draw with probability num/den (0 <= num <= den, den > 0).
    bool next_bernoulli(std::uint64_t num, std::uint64_t den) {
        if (num == 0) return false;
        if (num >= den) return true;
        return next_below(den) < num;
    }

    /// Uniformly chosen k-subset of {0, ..., n-1}, ascending order.
    std::vector<int> next_subset(int n, int k) {
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        for (int i = 0; i < k; ++i) {
            std::uint64_t j = i + next_below(static_cast<std::uint64_t>(n - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        std::sort(pool.begin(), pool.end());
        return pool;
    }

private:
    std::uint64_t state_;
};

}  // namespace canal
