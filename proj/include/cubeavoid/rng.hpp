#pragma once

#include <cstdint>
#include <vector>

namespace cubeavoid {

// Deterministic 64-bit generator (splitmix64). We roll our own bounded draws
// and shuffles so that results are identical across platforms and standard
// library implementations.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform draw in [0, bound). Modulo bias is < bound/2^64, irrelevant here.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    // Uniform double in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Independent child seed for stream `index` of a parent seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed ^ (0xD1B54A32D192ED03ULL * (index + 1)));
    g.next();
    return g.next();
}

// Fisher-Yates permutation of 1..n (1-based values).
inline std::vector<int> random_permutation(int n, SplitMix64& g) {
    std::vector<int> p(n);
    for (int v = 0; v < n; ++v) p[v] = v + 1;
    for (int v = n - 1; v > 0; --v) {
        int w = static_cast<int>(g.below(static_cast<std::uint64_t>(v) + 1));
        std::swap(p[v], p[w]);
    }
    return p;
}

}  // namespace cubeavoid
