#pragma once

#include <cstdint>
#include <random>

#include "epochbc/types.hpp"

namespace epochbc {

// splitmix64; used to turn (master seed, rank, thread) into well-separated
// stream seeds so that no two workers share a random sequence.
inline std::uint64_t splitmix64(std::uint64_t &state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t rank, std::uint64_t thread) {
    std::uint64_t s = master;
    std::uint64_t h = splitmix64(s);
    s ^= rank * 0x2545f4914f6cdd1dULL;
    h ^= splitmix64(s);
    s ^= thread * 0x9e3779b97f4a7c15ULL;
    h ^= splitmix64(s);
    return h;
}

// One independent stream per (rank, thread) worker.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    static Rng stream(std::uint64_t master, std::uint64_t rank, std::uint64_t thread) {
        return Rng(mix_seed(master, rank, thread));
    }

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, bound).
    std::uint64_t next_below(std::uint64_t bound) {
        require(bound > 0, "Rng::next_below: bound must be positive");
        return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(gen_);
    }

    double next_double() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }

    std::mt19937_64 &engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

} // namespace epochbc
