#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "normalsv/model.hpp"
#include "normalsv/transform_pricer.hpp"

namespace normalsv {

enum class PricingMethod { fft, quadrature };

std::string_view to_string(PricingMethod method);

/// Strike x maturity lattice of call prices and normal implied vols.
/// Matrices are indexed [maturity][strike].
struct VolSurface {
    std::vector<double> strikes;
    std::vector<double> maturities;
    std::vector<std::vector<double>> prices;
    std::vector<std::vector<double>> implied_vols;
    PricingMethod method = PricingMethod::quadrature;
};

/// Prices every cell and inverts it with forward s0 + rT. Prices below
/// intrinsic by at most 1e-10 are clamped to intrinsic first. The
/// quadrature backend uses the first damping exponent of cfg.alpha; the
/// FFT backend prices each maturity on cfg.grid and interpolates.
VolSurface build_surface(const ModelParams& p, std::span<const double> strikes,
                         std::span<const double> maturities, PricingMethod method,
                         const FftConfig& cfg);

/// Strike with the smallest implied vol in one maturity row; ties go to
/// the lower strike.
double smile_minimum_strike(const VolSurface& s, std::size_t maturity_index);

/// CSV `strike,maturity,price,implied_vol`, maturity-major, 17 significant digits.
void write_surface_csv(const VolSurface& s, const std::filesystem::path& path);
void write_surface_csv(const VolSurface& s, std::ostream& out);

}  // namespace normalsv
