#include "normalsv/surface.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <string>

#include "normalsv/bachelier.hpp"
#include "normalsv/errors.hpp"
#include "normalsv/format.hpp"

namespace normalsv {

namespace {

constexpr double kClampTolerance = 1e-10;

std::string cell_name(double strike, double maturity) {
    return "cell (strike " + format_number(strike) + ", maturity " + format_number(maturity) + ")";
}

bool strictly_ascending(std::span<const double> xs) {
    return std::adjacent_find(xs.begin(), xs.end(), std::greater_equal<>()) == xs.end();
}

}  // namespace

std::string_view to_string(PricingMethod method) {
    return method == PricingMethod::fft ? "fft" : "quadrature";
}

VolSurface build_surface(const ModelParams& p, std::span<const double> strikes,
                         std::span<const double> maturities, PricingMethod method,
                         const FftConfig& cfg) {
    const ModelParams params = validate_params(p);
    if (strikes.empty()) throw ValidationError("strikes", "must not be empty");
    if (maturities.empty()) throw ValidationError("maturities", "must not be empty");
    if (!strictly_ascending(strikes)) throw ValidationError("strikes", "must be strictly ascending");
    if (!strictly_ascending(maturities) || !(maturities.front() > 0.0)) {
        throw ValidationError("maturities", "must be positive and strictly ascending");
    }

    VolSurface s;
    s.strikes.assign(strikes.begin(), strikes.end());
    s.maturities.assign(maturities.begin(), maturities.end());
    s.method = method;
    s.prices.assign(maturities.size(), std::vector<double>(strikes.size()));
    s.implied_vols.assign(maturities.size(), std::vector<double>(strikes.size()));

    const double quad_alpha = alpha_values(cfg.alpha).front();
    for (std::size_t t = 0; t < maturities.size(); ++t) {
        const double maturity = maturities[t];
        std::vector<StrikePrice> grid_prices;
        if (method == PricingMethod::fft) grid_prices = price_fft(params, maturity, cfg);

        const double forward = forward_price(params, maturity);
        const double discount = std::exp(-params.r * maturity);
        for (std::size_t k = 0; k < strikes.size(); ++k) {
            const double strike = strikes[k];
            double price = method == PricingMethod::fft
                               ? interpolate_strike(grid_prices, strike)
                               : price_quadrature(params, maturity, strike, quad_alpha, cfg.drift_sign);

            const double intrinsic = discount * std::max(forward - strike, 0.0);
            if (price < intrinsic && intrinsic - price <= kClampTolerance) price = intrinsic;

            double vol = 0.0;
            try {
                vol = implied_normal_vol(price, forward, strike, maturity, params.r);
            } catch (const Error& e) {
                throw NumericalError("implied vol inversion failed at " + cell_name(strike, maturity) +
                                     ": " + e.what());
            }
            s.prices[t][k] = price;
            s.implied_vols[t][k] = vol;
        }
    }
    return s;
}

double smile_minimum_strike(const VolSurface& s, std::size_t maturity_index) {
    if (maturity_index >= s.implied_vols.size()) {
        throw ValidationError("maturity_index", "out of range");
    }
    const std::vector<double>& row = s.implied_vols[maturity_index];
    if (row.size() < 3 || s.strikes.size() != row.size()) {
        throw ValidationError("strikes", "smile needs at least 3 strikes");
    }
    // min_element returns the first minimum, i.e. the lowest strike on ties.
    const auto it = std::min_element(row.begin(), row.end());
    return s.strikes[static_cast<std::size_t>(it - row.begin())];
}

void write_surface_csv(const VolSurface& s, std::ostream& out) {
    out << "strike,maturity,price,implied_vol\n";
    for (std::size_t t = 0; t < s.maturities.size(); ++t) {
        for (std::size_t k = 0; k < s.strikes.size(); ++k) {
            out << format_number(s.strikes[k]) << ',' << format_number(s.maturities[t]) << ','
                << format_number(s.prices[t][k]) << ',' << format_number(s.implied_vols[t][k])
                << '\n';
        }
    }
}

void write_surface_csv(const VolSurface& s, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError(path.string(), "cannot open for writing");
    write_surface_csv(s, file);
    file.flush();
    if (!file) throw IoError(path.string(), "write failed");
}

}  // namespace normalsv
