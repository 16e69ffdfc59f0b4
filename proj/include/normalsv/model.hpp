#pragma once

#include <cmath>
#include <complex>

namespace normalsv {

using Complex = std::complex<double>;

/// Coefficients of the coupled dynamics
///
///   dx = r dt + sqrt(v) dz1
///   dv = (a - b v) dt + sigma sqrt(v) dz2,   d<z1, z2> = rho dt
///
/// x is the asset price itself (arithmetic Brownian motion), so s0 and
/// strikes may be negative. v is an absolute variance in price^2 per year.
struct ModelParams {
    double s0 = 0.0;     // initial price x(0)
    double r = 0.0;      // drift of x under the forward measure
    double a = 0.0;      // CIR drift constant; a / b is the long-run variance
    double b = 1.0;      // mean-reversion rate
    double sigma = 0.0;  // volatility of variance
    double rho = 0.0;    // correlation of the two Brownian motions
    double v0 = 0.0;     // initial variance v(0)
};

/// Returns `raw` unchanged if every bound holds, otherwise throws
/// ValidationError naming the first offending field.
ModelParams validate_params(const ModelParams& raw);

/// 2a / sigma^2. Below 1 the variance process can reach zero.
double feller_ratio(const ModelParams& p);

double long_run_variance(const ModelParams& p);

/// E[ integral_0^T v(t) dt ]
///   = v0 (1 - e^{-bT}) / b + (a / b) (T - (1 - e^{-bT}) / b).
/// In the sigma -> 0 limit this is the total Bachelier variance of x(T).
double expected_integrated_variance(const ModelParams& p, double maturity);

inline double forward_price(const ModelParams& p, double maturity) {
    return p.s0 + p.r * maturity;
}

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace normalsv
