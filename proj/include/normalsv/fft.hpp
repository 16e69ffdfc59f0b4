#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "normalsv/model.hpp"

namespace normalsv {

constexpr bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

/// Forward transform  w[k] = sum_j exp(-2 pi i j k / N) x[j].
/// Iterative radix-2 Cooley-Tukey; N must be a power of two.
std::vector<Complex> dft(std::span<const Complex> x);

}  // namespace normalsv
