#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "normalsv/bachelier.hpp"
#include "normalsv/errors.hpp"
#include "normalsv/transform_pricer.hpp"
#include "oracles.hpp"

using namespace normalsv;

namespace {

ModelParams baseline() {
    return {.s0 = -0.001, .r = 0.0, .a = 5e-7, .b = 1.0, .sigma = 0.25, .rho = -0.09, .v0 = 0.09};
}

ModelParams degenerate() {
    ModelParams p = baseline();
    p.sigma = 1e-6;
    return p;
}

double total_variance(const ModelParams& p, double t) {
    const double decay = (1.0 - std::exp(-p.b * t)) / p.b;
    return p.v0 * decay + p.a / p.b * (t - decay);
}

double bachelier_limit(const ModelParams& p, double t, double k) {
    return bachelier_price({.forward = p.s0 + p.r * t,
                            .strike = k,
                            .maturity = t,
                            .rate = p.r,
                            .sigma_n = std::sqrt(total_variance(p, t) / t)});
}

FftConfig single(double eta, std::size_t n, double k0, double alpha = 5.0) {
    return {.grid = make_grid(eta, n, k0), .alpha = SingleAlpha{alpha}};
}

}  // namespace

TEST(Grid, Identity) {
    for (std::size_t n : {2u, 16u, 4096u, 32768u}) {
        for (double eta : {0.25, 1.0, 3.0}) {
            const CarrMadanGrid g = make_grid(eta, n, 0.01);
            EXPECT_NEAR(g.lambda * g.eta, 2.0 * std::numbers::pi / static_cast<double>(n),
                        2e-16 * g.lambda * g.eta);
            EXPECT_DOUBLE_EQ(g.half_width, static_cast<double>(n) * g.lambda / 2.0);
            ASSERT_EQ(g.strikes.size(), n);
            EXPECT_EQ(g.strikes[n / 2], 0.01);
            EXPECT_NEAR(g.strikes.front(), g.k0 - g.half_width, 1e-12);
            EXPECT_NEAR(g.strikes[1] - g.strikes[0], g.lambda, 1e-12);
        }
    }
}

TEST(Weights, SimpsonExamples) {
    const std::vector<double> w = simpson_weights(4, 1.0);
    ASSERT_EQ(w.size(), 4u);
    EXPECT_DOUBLE_EQ(w[0], 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(w[1], 4.0 / 3.0);
    EXPECT_DOUBLE_EQ(w[2], 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(w[3], 4.0 / 3.0);
    const std::vector<double> two = simpson_weights(2, 3.0);
    EXPECT_DOUBLE_EQ(two[0], 1.0);
    EXPECT_DOUBLE_EQ(two[1], 4.0);
}

TEST(Weights, MassMatchesTrapezoid) {
    for (std::size_t n : {4u, 64u, 4096u}) {
        const double eta = 0.7;
        double simpson = 0.0;
        double trapezoid = 0.0;
        for (double w : simpson_weights(n, eta)) simpson += w;
        for (double w : trapezoid_weights(n, eta)) trapezoid += w;
        EXPECT_NEAR(simpson, eta * static_cast<double>(n - 1), 2.0 * eta);
        EXPECT_NEAR(trapezoid, eta * (static_cast<double>(n) - 0.5), 1e-9);
    }
}

TEST(AlphaValues, AveragedGrid) {
    const std::vector<double> a = alpha_values(AveragedAlpha{});
    ASSERT_EQ(a.size(), 500u);
    EXPECT_EQ(a.front(), 5.0);
    EXPECT_NEAR(a.back(), 54.9, 1e-12);
    EXPECT_EQ(alpha_values(SingleAlpha{2.5}), std::vector<double>{2.5});
}

TEST(ValidateFftConfig, RejectsBadInputs) {
    FftConfig cfg = single(1.0, 1024, 0.0);
    EXPECT_NO_THROW(validate_fft_config(cfg));
    cfg.alpha = SingleAlpha{0.0};
    EXPECT_THROW(validate_fft_config(cfg), ValidationError);
    cfg = single(1.0, 1024, 0.0);
    cfg.grid.n = 1000;
    EXPECT_THROW(validate_fft_config(cfg), ValidationError);
    cfg = single(1.0, 1024, 0.0);
    cfg.alpha = AveragedAlpha{.start = 5.0, .step = 0.1, .count = 0};
    EXPECT_THROW(validate_fft_config(cfg), ValidationError);
}

TEST(DefaultAlpha, ScaleDependent) {
    EXPECT_EQ(default_alpha(baseline()), 5.0);
    ModelParams p = baseline();
    p.s0 = 1.0;
    EXPECT_EQ(default_alpha(p), 1.5);
}

TEST(Psi, RealAndPositiveAtZeroFrequency) {
    const Complex z = damped_transform_psi(baseline(), 0.0, 5.0, 1.0);
    EXPECT_GT(z.real(), 0.0);
    EXPECT_LT(std::abs(z.imag()), 1e-15 * z.real());
}

TEST(Psi, ConjugateSymmetry) {
    const ModelParams p = baseline();
    EXPECT_LT(std::abs(damped_transform_psi(p, -3.0, 5.0, 1.0) -
                       std::conj(damped_transform_psi(p, 3.0, 5.0, 1.0))),
              1e-15);
}

TEST(Psi, MatchesTransformOfQuadraturePrices) {
    // psi(v) = int e^{(alpha + i v) K} C(K) dK. The integrand is negligible
    // outside [-8, 3] for alpha = 5; the trapezoid rule is spectrally accurate.
    const ModelParams p = baseline();
    const double alpha = 5.0;
    const double v = 1.0;
    const double lo = -8.0, hi = 3.0, h = 0.005;
    const int steps = static_cast<int>(std::lround((hi - lo) / h));
    Complex sum = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double k = lo + h * i;
        const double weight = (i == 0 || i == steps) ? 0.5 : 1.0;
        sum += weight * std::exp(Complex(alpha, v) * k) * price_quadrature(p, 1.0, k, alpha);
    }
    sum *= h;
    const Complex psi = damped_transform_psi(p, v, alpha, 1.0);
    EXPECT_LT(std::abs(sum - psi), 1e-8 * std::abs(psi));
}

TEST(CheckDamping, BaselineStrip) {
    EXPECT_NO_THROW(check_damping(baseline(), 5.0, 1.0));
    EXPECT_NO_THROW(check_damping(baseline(), 16.0, 1.0));
    EXPECT_THROW(check_damping(baseline(), 17.0, 1.0), NumericalError);
    EXPECT_NO_THROW(check_damping(baseline(), 17.0, 0.5));
}

TEST(PriceFft, RejectsExplodingAlphaGrid) {
    FftConfig cfg = single(1.0, 4096, 0.0);
    cfg.alpha = AveragedAlpha{};
    try {
        price_fft(baseline(), 1.0, cfg);
        FAIL() << "expected NumericalError";
    } catch (const NumericalError& e) {
        EXPECT_NE(std::string(e.what()).find("moment"), std::string::npos);
    }
}

TEST(PriceFft, AgreesWithQuadrature) {
    const ModelParams p = baseline();
    const std::vector<StrikePrice> prices = price_fft(p, 1.0, single(1.0, 32768, 0.0));
    for (double k : {-0.0005, 0.0, 0.0005}) {
        EXPECT_NEAR(interpolate_strike(prices, k), price_quadrature(p, 1.0, k, 5.0), 1e-5) << k;
    }
    for (const StrikePrice& sp : prices) {
        if (std::abs(sp.strike) > 0.005) continue;
        EXPECT_NEAR(sp.price, price_quadrature(p, 1.0, sp.strike, 5.0), 1e-5) << sp.strike;
    }
}

TEST(PriceFft, ErrorNonIncreasingInN) {
    const ModelParams p = baseline();
    const double reference = price_quadrature(p, 1.0, 0.0, 5.0);
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t n = 1024; n <= 32768; n *= 2) {
        const double err = std::abs(price_fft(p, 1.0, single(1.0, n, 0.0))[n / 2].price - reference);
        EXPECT_LE(err, previous + 1e-12) << n;
        previous = err;
    }
}

TEST(PriceFft, TrapezoidWeightsAlsoConverge) {
    const ModelParams p = baseline();
    FftConfig cfg = single(0.25, 16384, 0.0);
    cfg.weighting = Weighting::trapezoid;
    EXPECT_NEAR(price_fft(p, 1.0, cfg)[8192].price, price_quadrature(p, 1.0, 0.0, 5.0), 1e-5);
}

// Deep in the money the e^{-alpha K} factor magnifies the frequency
// discretisation error, so the shape checks start 3 sd below the forward.
double reliable_floor(const ModelParams& p) {
    return p.s0 + p.r - 3.0 * std::sqrt(total_variance(p, 1.0));
}

TEST(PriceFft, MonotoneAndConvex) {
    for (double k0 : {0.0, 0.3}) {
        const std::vector<StrikePrice> prices = price_fft(baseline(), 1.0, single(1.0, 4096, k0));
        for (std::size_t i = 1; i + 1 < prices.size(); ++i) {
            if (prices[i - 1].strike < reliable_floor(baseline())) continue;
            EXPECT_LE(prices[i + 1].price, prices[i].price + 1e-7) << i;
            EXPECT_GE(prices[i + 1].price - 2.0 * prices[i].price + prices[i - 1].price, -1e-7) << i;
        }
    }
}

TEST(PriceFft, ParityPutNonNegative) {
    const ModelParams p = baseline();
    const std::vector<StrikePrice> prices = price_fft(p, 1.0, single(1.0, 4096, 0.0));
    for (const StrikePrice& sp : prices) {
        if (sp.strike < reliable_floor(p)) continue;
        const double put = put_from_call_parity(sp.price, p.s0 + p.r, sp.strike, 1.0, p.r);
        EXPECT_GE(put, -1e-7) << sp.strike;
    }
}

TEST(PriceFft, DeterministicVarianceLimit) {
    const ModelParams p = degenerate();
    const double sd = std::sqrt(total_variance(p, 1.0));
    const double fwd = p.s0 + p.r;
    const std::vector<StrikePrice> prices = price_fft(p, 1.0, single(0.25, 32768, fwd));
    for (double k = fwd - 3.0 * sd; k <= fwd + 3.0 * sd; k += sd / 4.0) {
        EXPECT_NEAR(interpolate_strike(prices, k), bachelier_limit(p, 1.0, k), 1e-6) << k;
    }
}

TEST(PriceQuadrature, DeterministicVarianceLimitAtTheMoney) {
    const ModelParams p = degenerate();
    EXPECT_NEAR(price_quadrature(p, 1.0, p.s0, 5.0), bachelier_limit(p, 1.0, p.s0), 1e-8);
}

TEST(PriceQuadrature, IndependentOfAlpha) {
    const ModelParams p = baseline();
    for (double k : {-0.2, 0.0, 0.2}) {
        const double p2 = price_quadrature(p, 1.0, k, 2.0);
        const double p3 = price_quadrature(p, 1.0, k, 3.0);
        const double p5 = price_quadrature(p, 1.0, k, 5.0);
        const double p8 = price_quadrature(p, 1.0, k, 8.0);
        const double p10 = price_quadrature(p, 1.0, k, 10.0);
        EXPECT_LT(std::abs(p3 - p8), 1e-8) << k;
        EXPECT_LT(std::abs(p2 - p5), 1e-7) << k;
        EXPECT_LT(std::abs(p5 - p10), 1e-7) << k;
        EXPECT_LT(std::abs(p2 - p10), 1e-7) << k;
    }
}

TEST(PriceQuadrature, NonZeroRateMatchesDensityOracleAtSmallSigma) {
    ModelParams p = degenerate();
    p.r = 0.03;
    p.s0 = 0.5;
    const double sn = std::sqrt(total_variance(p, 2.0) / 2.0);
    for (double k : {0.2, 0.53, 0.9}) {
        EXPECT_NEAR(price_quadrature(p, 2.0, k, 3.0),
                    oracle::bachelier_by_density(p.s0 + p.r * 2.0, k, 2.0, p.r, sn), 1e-7)
            << k;
    }
}

TEST(InterpolateStrike, GridPointAndMidpoint) {
    const std::vector<StrikePrice> prices = price_fft(baseline(), 1.0, single(1.0, 1024, 0.0));
    EXPECT_EQ(interpolate_strike(prices, prices[512].strike), prices[512].price);
    const double mid = 0.5 * (prices[600].strike + prices[601].strike);
    EXPECT_NEAR(interpolate_strike(prices, mid), 0.5 * (prices[600].price + prices[601].price), 1e-15);
}

TEST(InterpolateStrike, OutsideGridThrows) {
    const std::vector<StrikePrice> prices = price_fft(baseline(), 1.0, single(1.0, 1024, 0.0));
    EXPECT_THROW(interpolate_strike(prices, prices.front().strike - 1e-3), Error);
    EXPECT_THROW(interpolate_strike(prices, prices.back().strike + 1e-3), Error);
}

TEST(InterpolateStrike, ConvexityBoundsQuadrature) {
    const ModelParams p = baseline();
    const std::vector<StrikePrice> prices = price_fft(p, 1.0, single(1.0, 32768, 0.0));
    for (double k : {-0.01, -0.0031, 0.0017, 0.0123}) {
        EXPECT_GE(interpolate_strike(prices, k), price_quadrature(p, 1.0, k, 5.0) - 1e-6) << k;
    }
}
