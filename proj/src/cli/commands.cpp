#include "normalsv/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "normalsv/bachelier.hpp"
#include "normalsv/charfn.hpp"
#include "normalsv/errors.hpp"
#include "normalsv/format.hpp"

namespace normalsv::cli {

namespace {

void require_strikes(const RunConfig& cfg) {
    if (cfg.strikes.empty()) throw ValidationError("strikes", "no strikes given");
}

double first_alpha(const FftConfig& cfg) {
    return alpha_values(cfg.alpha).front();
}

std::vector<double> fft_prices(const RunConfig& cfg, const FftConfig& fft) {
    const std::vector<StrikePrice> grid = price_fft(cfg.model, cfg.maturity, fft);
    std::vector<double> out;
    out.reserve(cfg.strikes.size());
    for (double k : cfg.strikes) out.push_back(interpolate_strike(grid, k));
    return out;
}

template <typename F>
double seconds(F&& work) {
    const auto start = std::chrono::steady_clock::now();
    work();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Check {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string note;
};

void report(std::ostream& out, const Check& c) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " measured=" << format_number(c.measured)
        << " tolerance=" << format_number(c.tolerance);
    if (!c.note.empty()) out << " (" << c.note << ")";
    out << '\n';
}

// Runs `body`; a library error turns the check into a failure with a note.
Check guarded(std::string name, double tolerance, const std::function<double()>& body) {
    Check c{std::move(name), false, 0.0, tolerance, {}};
    try {
        c.measured = body();
        c.passed = c.measured < tolerance;
    } catch (const Error& e) {
        c.measured = std::numeric_limits<double>::infinity();
        c.note = e.what();
    }
    return c;
}

constexpr double kLatticeOmegas[] = {0.5, 1.0, 5.0, 20.0};
constexpr double kLatticeTaus[] = {0.1, 1.0, 2.0};

}  // namespace

void cmd_price(const RunConfig& cfg, PriceMethod method, std::ostream& out) {
    require_strikes(cfg);
    switch (method) {
        case PriceMethod::fft: {
            const std::vector<double> prices = fft_prices(cfg, cfg.fft);
            out << "strike,price\n";
            for (std::size_t i = 0; i < prices.size(); ++i) {
                out << format_number(cfg.strikes[i]) << ',' << format_number(prices[i]) << '\n';
            }
            break;
        }
        case PriceMethod::quad: {
            const double alpha = first_alpha(cfg.fft);
            out << "strike,price\n";
            for (double k : cfg.strikes) {
                const double price =
                    price_quadrature(cfg.model, cfg.maturity, k, alpha, cfg.fft.drift_sign);
                out << format_number(k) << ',' << format_number(price) << '\n';
            }
            break;
        }
        case PriceMethod::mc: {
            const std::vector<McResult> results = price_mc(cfg.model, cfg.maturity, cfg.strikes, cfg.mc);
            out << "strike,price,std_error\n";
            for (std::size_t i = 0; i < results.size(); ++i) {
                out << format_number(cfg.strikes[i]) << ',' << format_number(results[i].price) << ','
                    << format_number(results[i].std_error) << '\n';
            }
            break;
        }
    }
}

void cmd_surface(const RunConfig& cfg, std::ostream& out) {
    require_strikes(cfg);
    if (cfg.surface.maturities.empty()) throw ValidationError("surface.maturities", "required");
    const VolSurface s =
        build_surface(cfg.model, cfg.strikes, cfg.surface.maturities, cfg.surface.method, cfg.fft);
    write_surface_csv(s, out);
}

void cmd_bench(const RunConfig& cfg, std::ostream& out) {
    out << "method,n_or_ts,strikes,seconds\n";
    if (cfg.bench.pairs.empty()) return;
    require_strikes(cfg);

    bool all_faster = true;
    const std::string strike_count = std::to_string(cfg.strikes.size());
    for (const BenchPair& pair : cfg.bench.pairs) {
        const FftConfig fft = with_grid_size(cfg.fft, pair.n);
        const double fft_seconds = seconds([&] { (void)fft_prices(cfg, fft); });

        McConfig mc = cfg.mc;
        mc.steps = pair.ts;
        const double mc_seconds =
            seconds([&] { (void)price_mc(cfg.model, cfg.maturity, cfg.strikes, mc); });

        out << "fft," << pair.n << ',' << strike_count << ',' << format_number(fft_seconds) << '\n';
        out << "mc," << pair.ts << ',' << strike_count << ',' << format_number(mc_seconds) << '\n';
        all_faster = all_faster && fft_seconds < mc_seconds;
    }
    out << "fft_faster=" << (all_faster ? "true" : "false") << '\n';
}

bool cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const ModelParams& p = cfg.model;
    const DriftSign sign = cfg.fft.drift_sign;
    std::vector<Check> checks;

    checks.push_back(guarded("ode_residual", 1e-6, [&] {
        double worst = 0.0;
        for (double omega : kLatticeOmegas) {
            for (double tau : kLatticeTaus) {
                const OdeResidual r = ode_residual(p, omega, tau, 1e-5, sign);
                worst = std::max({worst, std::abs(r.c), std::abs(r.d)});
            }
        }
        return worst;
    }));

    checks.push_back(guarded("charfn_symmetry", 1e-14, [&] {
        double worst = std::abs(char_fn(p, 0.0, cfg.maturity, sign) - 1.0);
        for (double u : kLatticeOmegas) {
            for (double tau : kLatticeTaus) {
                worst = std::max(worst, std::abs(char_fn(p, -u, tau, sign) -
                                                 std::conj(char_fn(p, u, tau, sign))));
            }
        }
        return worst;
    }));

    checks.push_back(guarded("fft_vs_quadrature", 1e-5, [&] {
        const std::vector<StrikePrice> grid = price_fft(p, cfg.maturity, cfg.fft);
        const double alpha = first_alpha(cfg.fft);
        std::vector<double> strikes = cfg.strikes;
        if (strikes.empty()) strikes.push_back(cfg.fft.grid.k0);
        double worst = 0.0;
        for (double k : strikes) {
            const double quad = price_quadrature(p, cfg.maturity, k, alpha, sign);
            worst = std::max(worst, std::abs(interpolate_strike(grid, k) - quad));
        }
        return worst;
    }));

    {
        McConfig mc = cfg.mc;
        mc.steps = cfg.verify.mc_steps;
        mc.paths = cfg.verify.mc_paths;
        mc.repetitions = cfg.verify.mc_repetitions;
        // Measured in units of the Monte-Carlo standard error.
        checks.push_back(guarded("charfn_vs_mc", 3.0, [&] {
            const std::vector<double> terminal = simulate_terminal(p, cfg.maturity, mc);
            double worst = 0.0;
            for (double u : {1.0, 5.0}) {
                const CharFnEstimate est = charfn_estimate(terminal, u);
                const double dist = std::abs(char_fn(p, u, cfg.maturity, sign) - est.value);
                worst = std::max(worst, dist / est.std_error);
            }
            return worst;
        }));
    }

    checks.push_back(guarded("implied_vol_roundtrip", 1e-9, [&] {
        std::mt19937_64 gen(cfg.mc.seed);
        std::uniform_real_distribution<double> level(0.5, 2.0);
        std::uniform_real_distribution<double> vol(0.01, 1.5);
        std::uniform_real_distribution<double> mat(0.1, 3.0);
        double worst = 0.0;
        std::size_t done = 0;
        while (done < cfg.verify.roundtrip_quotes) {
            const BachelierQuote q{level(gen), level(gen), mat(gen), 0.0, vol(gen)};
            // Quotes whose time value is lost to rounding carry no vol information.
            if (std::abs(q.forward - q.strike) > 5.0 * q.sigma_n * std::sqrt(q.maturity)) continue;
            const double implied =
                implied_normal_vol(bachelier_price(q), q.forward, q.strike, q.maturity, q.rate);
            worst = std::max(worst, std::abs(implied - q.sigma_n));
            ++done;
        }
        return worst;
    }));

    checks.push_back(guarded("implied_vol_atm_identity", 1e-12, [&] {
        double worst = 0.0;
        for (double sigma : {0.05, 0.3, 1.2}) {
            for (double t : {0.25, 1.0, 3.0}) {
                const BachelierQuote q{1.0, 1.0, t, 0.0, sigma};
                const double price = bachelier_price(q);
                const double closed = price * std::sqrt(2.0 * std::numbers::pi / t);
                worst = std::max(worst, std::abs(implied_normal_vol(price, 1.0, 1.0, t, 0.0) - closed));
            }
        }
        return worst;
    }));

    bool all = true;
    for (const Check& c : checks) {
        report(out, c);
        all = all && c.passed;
    }
    out << (all ? "verify: all checks passed\n" : "verify: FAILED\n");
    return all;
}

}  // namespace normalsv::cli
