#pragma once

#include <cstdint>
#include <limits>

namespace normalsv {

/// xoshiro256++ (Blackman & Vigna), period 2^256 - 1. Satisfies
/// UniformRandomBitGenerator. The 256-bit state is expanded from a 64-bit
/// seed with splitmix64, so nearby seeds give unrelated streams.
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256pp(std::uint64_t seed) {
        for (auto& word : state_) word = splitmix64(seed);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_[4];
};

/// Stream used by partition `index` of a run seeded with `seed`.
inline Xoshiro256pp partition_stream(std::uint64_t seed, std::uint64_t index) {
    return Xoshiro256pp(seed + index);
}

}  // namespace normalsv
