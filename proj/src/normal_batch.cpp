// Built with -ffast-math so the loops below call the vector log/sin/cos
// from libmvec. Nothing here can produce NaN or infinity.
#include "normal_batch.hpp"

#include <cstring>
#include <cmath>
#include <numbers>

namespace normalsv::detail {

namespace {

constexpr std::size_t kChunk = 2 * NormalBatch::kStreams;

template <typename V>
inline V rotl(V x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

NormalBatch::NormalBatch(Xoshiro256pp& seeder) {
    for (std::size_t j = 0; j < kStreams; ++j) {
        s0_[j] = seeder();
        s1_[j] = seeder();
        s2_[j] = seeder();
        s3_[j] = seeder();
    }
}

// Fills out[0, n) with doubles in [1, 2) carrying 52 random mantissa bits;
// n is a multiple of kStreams.
void NormalBatch::uniforms(double* out, std::size_t n) {
    using Doubles = double __attribute__((vector_size(kStreams * sizeof(double))));
    for (std::size_t base = 0; base < n; base += kStreams) {
        const Lanes result = rotl(s0_ + s3_, 23) + s0_;
        const Lanes t = s1_ << 17;
        s2_ ^= s0_;
        s3_ ^= s1_;
        s1_ ^= s2_;
        s0_ ^= s3_;
        s2_ ^= t;
        s3_ = rotl(s3_, 45);
        const Lanes bits = (result >> 12) | 0x3ff0000000000000ULL;
        std::memcpy(out + base, &bits, sizeof(Doubles));
    }
}

const double* NormalBatch::draw(std::size_t n) {
    const std::size_t pairs = ((n + kChunk - 1) / kChunk) * kChunk / 2;
    uniforms(radius_.data(), pairs);
    uniforms(angle_.data(), pairs);
    // 2 - U lies in (0, 1], so the logarithm is finite.
    for (std::size_t i = 0; i < pairs; ++i) radius_[i] = std::sqrt(-2.0 * std::log(2.0 - radius_[i]));
    for (std::size_t i = 0; i < pairs; ++i) angle_[i] = 2.0 * std::numbers::pi * (angle_[i] - 1.0);
    for (std::size_t i = 0; i < pairs; ++i) out_[i] = radius_[i] * std::cos(angle_[i]);
    for (std::size_t i = 0; i < pairs; ++i) out_[pairs + i] = radius_[i] * std::sin(angle_[i]);
    return out_.data();
}

}  // namespace normalsv::detail
