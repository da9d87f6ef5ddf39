#pragma once

#include <cstdint>

namespace cyclefield {

/// xoshiro256** seeded through splitmix64. A (seed, stream) pair fully
/// determines the output sequence, with no platform- or library-dependent
/// behavior anywhere: substreams with distinct stream indices are the
/// mechanism behind reproducible parallel sampling.
class SubstreamRng {
  public:
    explicit SubstreamRng(std::uint64_t seed, std::uint64_t stream = 0) {
        // Distinct (seed, stream) pairs map to distinct splitmix starting
        // points; splitmix64 then whitens them into full 256-bit state.
        std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
        for (auto& word : state_) word = splitmix64(x);
        // xoshiro's all-zero state is a fixed point; splitmix output is zero
        // for at most one of the four words, but guard anyway.
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    std::uint64_t next_u64() {
        std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform draw from [0, bound), bound >= 1, by masked rejection.
    /// Unbiased, and unlike std::uniform_int_distribution fully specified.
    std::uint64_t uniform_below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t mask = ~std::uint64_t{0} >> countl_zero(bound - 1);
        for (;;) {
            std::uint64_t v = next_u64() & mask;
            if (v < bound) return v;
        }
    }

  private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    static int countl_zero(std::uint64_t x) {
        return x == 0 ? 64 : __builtin_clzll(x);
    }

    std::uint64_t state_[4];
};

}  // namespace cyclefield
