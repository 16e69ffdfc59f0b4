#include "normalsv/bachelier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "normalsv/errors.hpp"

namespace normalsv {

namespace {

constexpr double kInvSqrt2Pi = 0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2;

double normal_pdf(double x) {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

constexpr double kSigmaFloor = 1e-12;
constexpr double kIntrinsicSlack = 1e-14;
constexpr int kMaxBracketDoublings = 80;
constexpr int kMaxIterations = 400;

}  // namespace

double bachelier_price(const BachelierQuote& q) {
    const double discount = std::exp(-q.rate * q.maturity);
    const double moneyness = q.forward - q.strike;
    const double stdev = q.sigma_n * std::sqrt(q.maturity);
    if (stdev <= 0.0) return discount * std::max(moneyness, 0.0);
    const double delta = moneyness / stdev;
    return discount * (moneyness * normal_cdf(delta) + stdev * normal_pdf(delta));
}

double bachelier_vega(const BachelierQuote& q) {
    const double root_t = std::sqrt(q.maturity);
    const double stdev = q.sigma_n * root_t;
    const double delta = (q.forward - q.strike) / stdev;
    return std::exp(-q.rate * q.maturity) * root_t * normal_pdf(delta);
}

double implied_normal_vol(double price, double forward, double strike, double maturity,
                          double rate) {
    if (!(maturity > 0.0)) throw ValidationError("maturity", "must be positive");
    if (!std::isfinite(price)) throw ValidationError("price", "must be finite");

    const double intrinsic = std::exp(-rate * maturity) * std::max(forward - strike, 0.0);
    if (price < intrinsic - kIntrinsicSlack) {
        std::ostringstream os;
        os.precision(17);
        os << "below intrinsic (price " << price << ", intrinsic " << intrinsic << ")";
        throw ValidationError("price", os.str());
    }
    // Within rounding of intrinsic the time value carries no information.
    const double rounding = 4.0 * std::numeric_limits<double>::epsilon() *
                            std::max({std::abs(forward), std::abs(strike), std::abs(price)});
    if (price <= intrinsic + rounding) return 0.0;

    BachelierQuote q{forward, strike, maturity, rate, 0.0};
    auto excess = [&](double sigma) {
        q.sigma_n = sigma;
        return bachelier_price(q) - price;
    };

    double lo = kSigmaFloor;
    double hi = 1.0;
    if (excess(lo) >= 0.0) return lo;
    int doublings = 0;
    while (excess(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++doublings > kMaxBracketDoublings) {
            throw NumericalError("implied_normal_vol: price cannot be bracketed");
        }
    }

    // Newton steps that leave the bracket, or fail to halve it, fall back
    // to bisection. Iterate to bracket collapse rather than to a residual
    // test: deep out of the money a tiny price residual still leaves sigma
    // loose.
    double sigma = 0.5 * (lo + hi);
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        const double f = excess(sigma);
        if (f == 0.0) return sigma;
        if (f < 0.0) lo = sigma; else hi = sigma;
        if (hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * hi) break;

        q.sigma_n = sigma;
        const double vega = bachelier_vega(q);
        double next = vega > 0.0 ? sigma - f / vega : std::numeric_limits<double>::quiet_NaN();
        if (!(next > lo && next < hi) || std::abs(next - sigma) > 0.5 * (hi - lo)) {
            next = 0.5 * (lo + hi);
        }
        if (next == sigma) break;
        sigma = next;
    }
    // Pick whichever bracket end reprices closer.
    const double f_lo = std::abs(excess(lo));
    const double f_hi = std::abs(excess(hi));
    const double f_sigma = std::abs(excess(sigma));
    if (f_sigma <= f_lo && f_sigma <= f_hi) return sigma;
    return f_lo <= f_hi ? lo : hi;
}

double put_from_call_parity(double call, double forward, double strike, double maturity,
                            double rate) {
    return call - std::exp(-rate * maturity) * (forward - strike);
}

}  // namespace normalsv
