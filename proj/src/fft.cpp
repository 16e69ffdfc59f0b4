#include "normalsv/fft.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "normalsv/errors.hpp"

namespace normalsv {

std::vector<Complex> dft(std::span<const Complex> x) {
    const std::size_t n = x.size();
    if (!is_power_of_two(n)) {
        throw ValidationError("dft", "length " + std::to_string(n) + " is not a power of two");
    }

    std::vector<Complex> out(x.begin(), x.end());
    if (n == 1) return out;

    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(out[i], out[j]);
    }

    // Twiddles evaluated directly rather than by recurrence, so the result
    // tracks the naive sum to a few ulps.
    std::vector<Complex> twiddle(n / 2);
    const double step = -2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double angle = step * static_cast<double>(k);
        twiddle[k] = {std::cos(angle), std::sin(angle)};
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const Complex t = twiddle[k * stride] * out[start + k + half];
                const Complex u = out[start + k];
                out[start + k] = u + t;
                out[start + k + half] = u - t;
            }
        }
    }
    return out;
}

}  // namespace normalsv
