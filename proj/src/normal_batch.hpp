#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "normalsv/rng.hpp"

namespace normalsv::detail {

// Standard normals in blocks, by Box-Muller on uniforms from kStreams
// interleaved xoshiro256++ generators. The lane states are drawn from the
// seeding generator, so one Xoshiro256pp still identifies the whole stream.
class NormalBatch {
public:
    static constexpr std::size_t kStreams = 8;
    static constexpr std::size_t kCapacity = 256;

    explicit NormalBatch(Xoshiro256pp& seeder);

    // Pointer to n <= kCapacity fresh normals, valid until the next call.
    const double* draw(std::size_t n);

private:
    void uniforms(double* out, std::size_t n);

    // One generator per lane; GCC vector extension so the state update is
    // a handful of wide integer instructions.
    using Lanes = std::uint64_t __attribute__((vector_size(kStreams * sizeof(std::uint64_t))));

    Lanes s0_, s1_, s2_, s3_;
    alignas(64) std::array<double, kCapacity> out_;
    alignas(64) std::array<double, kCapacity / 2> radius_;
    alignas(64) std::array<double, kCapacity / 2> angle_;
};

}  // namespace normalsv::detail
