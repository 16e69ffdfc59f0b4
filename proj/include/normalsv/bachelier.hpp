#pragma once

namespace normalsv {

/// Quote under the normal (Bachelier) model; sigma_n is in price units
/// per sqrt(year).
struct BachelierQuote {
    double forward = 0.0;  // s0 + r T
    double strike = 0.0;
    double maturity = 1.0;
    double rate = 0.0;
    double sigma_n = 0.0;
};

/// e^{-rT} [(F - K) N(delta) + sigma_n sqrt(T) n(delta)],  delta = (F - K) / (sigma_n sqrt(T)).
double bachelier_price(const BachelierQuote& q);

/// d price / d sigma_n = e^{-rT} sqrt(T) n(delta).
double bachelier_vega(const BachelierQuote& q);

/// Normal implied volatility of a call price. Safeguarded Newton on a
/// bisection bracket [1e-12, sigma_hi], sigma_hi doubling from 1.
/// Returns 0 at intrinsic; throws ValidationError below intrinsic and
/// NumericalError if no bracket exists.
double implied_normal_vol(double price, double forward, double strike, double maturity,
                          double rate);

/// Put price implied by C - P = e^{-rT} (F - K).
double put_from_call_parity(double call, double forward, double strike, double maturity,
                            double rate);

}  // namespace normalsv
