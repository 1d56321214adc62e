#pragma once

#include <cstdint>
#include <random>

namespace airel {

// Pinned deterministic generator. std::mt19937_64 produces a bit-exact
// sequence on every conforming implementation and its period (2^19937-1)
// comfortably exceeds the 2^128 contract. Replications derive independent
// streams by hashing (seed, index) through splitmix64.
inline constexpr const char* kGeneratorId = "mt19937_64+splitmix64/v1";

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

    // Independent stream for one replication of a seeded run.
    static Rng for_replication(std::uint64_t seed, std::uint64_t index) {
        Rng r(0);
        r.gen_.seed(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x5851F42D4C957F2DULL)));
        return r;
    }

    // Uniform on (0, 1]; safe as the argument of a logarithm.
    double uniform01() {
        double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;  // [0, 1)
        return 1.0 - u;
    }

    std::uint64_t next_u64() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

}  // namespace airel
