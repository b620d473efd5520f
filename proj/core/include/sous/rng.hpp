#pragma once

#include <cstdint>
#include <string_view>

namespace sous {

// splitmix64: tiny, seedable, stable across platforms. All simulator and
// sampling randomness flows through this so corpora are bit-reproducible.
struct SplitMix64 {
    uint64_t state = 0;

    explicit SplitMix64(uint64_t seed = 0) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n)
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }

    // Uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Approximate standard normal via Irwin-Hall (sum of 12 uniforms).
    double normal() {
        double s = 0.0;
        for (int i = 0; i < 12; ++i) s += uniform();
        return s - 6.0;
    }
};

// FNV-1a 64-bit, used for content hashes and derived seed streams.
uint64_t fnv1a(std::string_view bytes, uint64_t seed = 0xcbf29ce484222325ULL);

// Stable seed derivation for named substreams, e.g.
// derive_seed(global, "rollout", map_id, heuristic_id, defect_id).
uint64_t derive_seed(uint64_t base, std::string_view a, std::string_view b = {},
                     std::string_view c = {}, std::string_view d = {});

std::string hex64(uint64_t v);

}  // namespace sous
