#include "normalsv/transform_pricer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "normalsv/errors.hpp"
#include "normalsv/fft.hpp"
#include "normalsv/quadrature.hpp"

namespace normalsv {

namespace {

constexpr double kQuadratureTolerance = 1e-10;
constexpr double kTruncationThreshold = 1e-14;
constexpr double kInitialCutoff = 200.0;
constexpr double kMaxCutoff = 1e9;
constexpr std::size_t kMaxQuadratureEvaluations = std::size_t{1} << 20;

std::string describe(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

}  // namespace

CarrMadanGrid make_grid(double eta, std::size_t n, double k0) {
    if (!(eta > 0.0) || !std::isfinite(eta)) throw ValidationError("eta", "must be positive");
    if (n < 2 || !is_power_of_two(n)) throw ValidationError("n", "must be a power of two >= 2");
    if (!std::isfinite(k0)) throw ValidationError("k0", "must be finite");

    CarrMadanGrid grid;
    grid.eta = eta;
    grid.n = n;
    grid.lambda = 2.0 * std::numbers::pi / (static_cast<double>(n) * eta);
    grid.half_width = 0.5 * static_cast<double>(n) * grid.lambda;
    grid.k0 = k0;
    grid.strikes.resize(n);
    const auto center = static_cast<std::ptrdiff_t>(n / 2);
    for (std::size_t u = 0; u < n; ++u) {
        // Offsets from the center keep strikes[n/2] == k0 exactly.
        grid.strikes[u] = k0 + grid.lambda * static_cast<double>(static_cast<std::ptrdiff_t>(u) - center);
    }
    return grid;
}

std::vector<double> alpha_values(const AlphaMode& mode) {
    if (const auto* single = std::get_if<SingleAlpha>(&mode)) {
        return {single->alpha};
    }
    const auto& avg = std::get<AveragedAlpha>(mode);
    std::vector<double> out(avg.count);
    for (std::size_t i = 0; i < avg.count; ++i) {
        out[i] = avg.start + avg.step * static_cast<double>(i);
    }
    return out;
}

void validate_fft_config(const FftConfig& cfg) {
    const CarrMadanGrid& g = cfg.grid;
    if (!(g.eta > 0.0)) throw ValidationError("eta", "must be positive");
    if (g.n < 2 || !is_power_of_two(g.n)) throw ValidationError("n", "must be a power of two >= 2");
    if (g.strikes.size() != g.n) throw ValidationError("grid", "strike vector does not match n");
    if (const auto* avg = std::get_if<AveragedAlpha>(&cfg.alpha); avg && avg->count < 1) {
        throw ValidationError("alpha_grid.count", "must be at least 1");
    }
    for (double alpha : alpha_values(cfg.alpha)) {
        if (!(alpha > 0.0) || !std::isfinite(alpha)) {
            throw ValidationError("alpha", "damping exponent must be positive, got " + describe(alpha));
        }
    }
}

double default_alpha(const ModelParams& p) {
    return std::abs(p.s0) >= 0.5 ? 1.5 : 5.0;
}

Complex damped_transform_psi(const ModelParams& p, double v, double alpha, double maturity,
                             DriftSign sign) {
    const Complex denom(alpha, v);
    return std::exp(-p.r * maturity) * char_fn(p, Complex(v, -alpha), maturity, sign) /
           (denom * denom);
}

std::vector<double> simpson_weights(std::size_t n, double eta) {
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j) {
        // 1-based index j+1: (eta/3) [3 + (-1)^(j+1) - delta_{j}]
        const double sign = (j % 2 == 0) ? -1.0 : 1.0;
        const double kronecker = (j == 0) ? 1.0 : 0.0;
        w[j] = eta / 3.0 * (3.0 + sign - kronecker);
    }
    return w;
}

std::vector<double> trapezoid_weights(std::size_t n, double eta) {
    std::vector<double> w(n, eta);
    if (n > 0) w[0] = 0.5 * eta;
    return w;
}

void check_damping(const ModelParams& p, double alpha, double maturity) {
    const double explosion = moment_explosion_time(p, alpha);
    if (explosion <= maturity) {
        throw NumericalError("damping exponent alpha = " + describe(alpha) +
                             " too large for the model's moment growth: E[exp(alpha x_T)] is "
                             "infinite beyond T = " +
                             describe(explosion) + " (maturity " + describe(maturity) + ")");
    }
}

std::vector<StrikePrice> price_fft(const ModelParams& p, double maturity, const FftConfig& cfg) {
    if (!(maturity > 0.0)) throw ValidationError("maturity", "must be positive");
    validate_fft_config(cfg);

    const CarrMadanGrid& grid = cfg.grid;
    const std::size_t n = grid.n;
    const std::vector<double> alphas = alpha_values(cfg.alpha);
    for (double alpha : alphas) check_damping(p, alpha, maturity);

    const std::vector<double> weights = cfg.weighting == Weighting::simpson
                                            ? simpson_weights(n, grid.eta)
                                            : trapezoid_weights(n, grid.eta);

    // exp(i v_j (half_width - k0)) shifts the strike lattice to start at k0 - half_width.
    std::vector<Complex> phase(n);
    const double shift = grid.half_width - grid.k0;
    for (std::size_t j = 0; j < n; ++j) {
        const double v = grid.eta * static_cast<double>(j);
        phase[j] = std::polar(weights[j], v * shift);
    }

    std::vector<double> sum(n, 0.0);
    std::vector<Complex> x(n);
    for (double alpha : alphas) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = grid.eta * static_cast<double>(j);
            x[j] = phase[j] * damped_transform_psi(p, v, alpha, maturity, cfg.drift_sign);
        }
        const std::vector<Complex> y = dft(x);
        for (std::size_t u = 0; u < n; ++u) {
            sum[u] += std::exp(-alpha * grid.strikes[u]) / std::numbers::pi * y[u].real();
        }
    }

    std::vector<StrikePrice> out(n);
    const auto count = static_cast<double>(alphas.size());
    for (std::size_t u = 0; u < n; ++u) {
        const double price = sum[u] / count;
        if (!std::isfinite(price)) {
            throw NumericalError("FFT produced a non-finite price at strike " +
                                 describe(grid.strikes[u]) +
                                 "; the damping exponent is likely too large");
        }
        out[u] = {grid.strikes[u], price};
    }
    return out;
}

double price_quadrature(const ModelParams& p, double maturity, double strike, double alpha,
                        DriftSign sign) {
    if (!(maturity > 0.0)) throw ValidationError("maturity", "must be positive");
    if (!(alpha > 0.0)) throw ValidationError("alpha", "damping exponent must be positive");
    check_damping(p, alpha, maturity);

    double cutoff = kInitialCutoff;
    while (std::abs(damped_transform_psi(p, cutoff, alpha, maturity, sign)) >= kTruncationThreshold) {
        cutoff *= 2.0;
        if (cutoff > kMaxCutoff) {
            throw NumericalError("transform does not decay: |psi| >= 1e-14 at v = " + describe(cutoff));
        }
    }

    auto integrand = [&](double v) {
        const Complex rotation = std::polar(1.0, -v * strike);
        return (rotation * damped_transform_psi(p, v, alpha, maturity, sign)).real();
    };
    const QuadratureResult q =
        adaptive_simpson(integrand, 0.0, cutoff, kQuadratureTolerance, kMaxQuadratureEvaluations);
    return std::exp(-alpha * strike) / std::numbers::pi * q.value;
}

double interpolate_strike(std::span<const StrikePrice> prices, double strike) {
    if (prices.empty()) throw ValidationError("strike", "empty price grid");
    if (!(strike >= prices.front().strike && strike <= prices.back().strike)) {
        throw ValidationError("strike", describe(strike) + " outside grid range [" +
                                            describe(prices.front().strike) + ", " +
                                            describe(prices.back().strike) + "]");
    }
    const auto it = std::lower_bound(prices.begin(), prices.end(), strike,
                                     [](const StrikePrice& sp, double k) { return sp.strike < k; });
    if (it->strike == strike) return it->price;
    const StrikePrice& hi = *it;
    const StrikePrice& lo = *(it - 1);
    const double w = (strike - lo.strike) / (hi.strike - lo.strike);
    return lo.price + w * (hi.price - lo.price);
}

}  // namespace normalsv
