#include "sous/rng.hpp"

#include <cstdio>
#include <string>

namespace sous {

uint64_t fnv1a(std::string_view bytes, uint64_t seed) {
    uint64_t h = seed;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

uint64_t derive_seed(uint64_t base, std::string_view a, std::string_view b,
                     std::string_view c, std::string_view d) {
    uint64_t h = 0xcbf29ce484222325ULL ^ base;
    h = fnv1a(a, h);
    h = fnv1a("/", h);
    h = fnv1a(b, h);
    h = fnv1a("/", h);
    h = fnv1a(c, h);
    h = fnv1a("/", h);
    h = fnv1a(d, h);
    return h;
}

std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace sous
