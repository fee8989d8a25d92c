#pragma once

#include <cstdint>
#include <vector>

namespace factin {

// Deterministic, platform-independent generator (splitmix64). All randomness
// in the project flows through this so that a seed fully pins an experiment
// regardless of compiler, libc or thread count.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) via 128-bit multiply-shift; bound > 0.
    uint64_t bounded(uint64_t bound) {
        return static_cast<uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    bool coin() { return (next() & 1u) != 0; }

private:
    uint64_t state_;
};

// Splittable stream derivation: mixes (a, b) into base so that per-task seeds
// are independent of task execution order.
inline uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b = 0) {
    Rng r(base ^ (a * 0xd1342543de82ef95ULL) ^ (b * 0xaf251af3b0f025b5ULL));
    r.next();
    return r.next();
}

// First k entries of a seeded partial Fisher-Yates shuffle of 0..n-1.
// k <= n. Output order is part of the contract (plus-minus assignment
// consumes the same stream right after).
inline std::vector<uint32_t> sample_without_replacement(uint32_t n, uint32_t k, Rng& rng) {
    std::vector<uint32_t> ids(n);
    for (uint32_t i = 0; i < n; ++i) ids[i] = i;
    for (uint32_t i = 0; i < k; ++i) {
        uint32_t j = i + static_cast<uint32_t>(rng.bounded(n - i));
        std::swap(ids[i], ids[j]);
    }
    ids.resize(k);
    return ids;
}

} // namespace factin
