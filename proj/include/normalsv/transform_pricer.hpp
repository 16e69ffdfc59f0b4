#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "normalsv/charfn.hpp"
#include "normalsv/model.hpp"

namespace normalsv {

/// Frequency / strike lattice of the FFT pricer.
///
/// Frequencies are v_j = eta * j and strikes K_u = k0 - half_width + lambda * u
/// for j, u = 0 .. n-1, with lambda * eta = 2 pi / n. The center strike k0
/// sits exactly at index n / 2.
struct CarrMadanGrid {
    double eta = 1.0;
    std::size_t n = 0;
    double lambda = 0.0;
    double half_width = 0.0;
    double k0 = 0.0;
    std::vector<double> strikes;
};

CarrMadanGrid make_grid(double eta, std::size_t n, double k0);

struct SingleAlpha {
    double alpha = 5.0;
};

/// alpha_i = start + i * step, i = 0 .. count-1; prices are averaged over them.
struct AveragedAlpha {
    double start = 5.0;
    double step = 0.1;
    std::size_t count = 500;
};

using AlphaMode = std::variant<SingleAlpha, AveragedAlpha>;

std::vector<double> alpha_values(const AlphaMode& mode);

enum class Weighting { simpson, trapezoid };

struct FftConfig {
    CarrMadanGrid grid;
    AlphaMode alpha = SingleAlpha{};
    Weighting weighting = Weighting::simpson;
    DriftSign drift_sign = DriftSign::plus;
};

/// Throws ValidationError if eta <= 0, n is not a power of two >= 2, the
/// grid is inconsistent, or any damping exponent is not positive.
void validate_fft_config(const FftConfig& cfg);

/// Damping exponent used when a configuration does not specify one:
/// 5.0 for basis-point-scale prices, 1.5 for unit-scale assets.
double default_alpha(const ModelParams& p);

struct StrikePrice {
    double strike = 0.0;
    double price = 0.0;
};

/// Fourier transform of the damped call price exp(alpha K) C_T(K):
///   psi_T(v) = e^{-rT} phi_T(v - i alpha) / (alpha + i v)^2.
Complex damped_transform_psi(const ModelParams& p, double v, double alpha, double maturity,
                             DriftSign sign = DriftSign::plus);

/// w_1 = eta/3, then 4 eta/3 and 2 eta/3 alternating.
std::vector<double> simpson_weights(std::size_t n, double eta);

/// w_1 = eta/2, eta elsewhere.
std::vector<double> trapezoid_weights(std::size_t n, double eta);

/// Throws NumericalError if E[exp(alpha x_T)] is infinite, in which case
/// the damped call price has no Fourier transform.
void check_damping(const ModelParams& p, double alpha, double maturity);

/// Call prices on every strike of cfg.grid.
std::vector<StrikePrice> price_fft(const ModelParams& p, double maturity, const FftConfig& cfg);

/// Reference pricer: adaptive Simpson on
///   C_T(K) = e^{-alpha K} / pi * int_0^inf Re[e^{-ivK} psi_T(v)] dv,
/// truncated where |psi_T| < 1e-14.
double price_quadrature(const ModelParams& p, double maturity, double strike, double alpha,
                        DriftSign sign = DriftSign::plus);

/// Linear interpolation on a strike-sorted price grid; exact at grid points.
double interpolate_strike(std::span<const StrikePrice> prices, double strike);

}  // namespace normalsv
