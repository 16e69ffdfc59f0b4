#include "normalsv/mc_engine.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>
#include <thread>

#include "neumaier.hpp"
#include "normal_batch.hpp"
#include "normalsv/errors.hpp"
#include "normalsv/rng.hpp"

namespace normalsv {

namespace {

// Paths advanced together; the inner lane loop vectorises.
constexpr std::size_t kLanes = detail::NormalBatch::kCapacity;

struct Moments {
    double mean = 0.0;
    double variance = 0.0;  // unbiased sample variance
};

// Mean accumulated relative to the first sample: identical samples give
// their own value back exactly, and the variance pass starts near zero.
template <typename F>
Moments sample_moments(std::size_t n, F&& sample) {
    if (n == 0) return {};
    const double origin = sample(0);
    detail::NeumaierSum shifted;
    for (std::size_t i = 1; i < n; ++i) shifted.add(sample(i) - origin);
    const double mean = origin + shifted.value() / static_cast<double>(n);
    if (n == 1) return {mean, 0.0};

    detail::NeumaierSum squares;
    for (std::size_t i = 0; i < n; ++i) {
        const double dev = sample(i) - mean;
        squares.add(dev * dev);
    }
    return {mean, squares.value() / static_cast<double>(n - 1)};
}

void simulate_partition(const ModelParams& p, double maturity, const McConfig& cfg,
                        std::uint64_t partition, double* out) {
    Xoshiro256pp seeder = partition_stream(cfg.seed, partition);
    detail::NormalBatch normals(seeder);

    const double dt = maturity / static_cast<double>(cfg.steps);
    const double sqrt_dt = std::sqrt(dt);
    const double drift_dt = p.a * dt;
    const double decay_dt = p.b * dt;
    const double vol_sqrt_dt = p.sigma * sqrt_dt;
    const double orthogonal = std::sqrt(std::max(0.0, 1.0 - p.rho * p.rho));
    const double forward = p.s0 + p.r * maturity;

    std::array<double, kLanes> v{};
    std::array<double, kLanes> sum_v{};
    std::array<double, kLanes> sum_sqrt_v_z{};
    std::array<double, kLanes> z{};

    auto draw = [&](std::size_t count) {
        const std::size_t fresh = cfg.antithetic ? (count + 1) / 2 : count;
        const double* src = normals.draw(fresh);
        std::copy_n(src, fresh, z.begin());
        for (std::size_t i = fresh; i < count; ++i) z[i] = -z[i - fresh];
    };

    for (std::size_t start = 0; start < cfg.paths; start += kLanes) {
        const std::size_t count = std::min(kLanes, cfg.paths - start);
        std::fill_n(v.begin(), count, p.v0);
        std::fill_n(sum_v.begin(), count, 0.0);
        std::fill_n(sum_sqrt_v_z.begin(), count, 0.0);

        for (std::size_t step = 0; step < cfg.steps; ++step) {
            draw(count);
            for (std::size_t i = 0; i < count; ++i) {
                const double vp = std::max(v[i], 0.0);
                const double root = std::sqrt(vp);
                sum_v[i] += vp;
                sum_sqrt_v_z[i] += root * z[i];
                v[i] += drift_dt - decay_dt * vp + vol_sqrt_dt * root * z[i];
            }
        }

        draw(count);
        for (std::size_t i = 0; i < count; ++i) {
            const double correlated = p.rho * sqrt_dt * sum_sqrt_v_z[i];
            const double independent = std::sqrt(orthogonal * orthogonal * sum_v[i] * dt) * z[i];
            out[start + i] = forward + correlated + independent;
        }
    }
}

}  // namespace

void validate_mc_config(const McConfig& cfg) {
    if (cfg.steps < 1) throw ValidationError("mc.steps", "must be at least 1");
    if (cfg.paths < 1) throw ValidationError("mc.paths", "must be at least 1");
    if (cfg.repetitions < 1) throw ValidationError("mc.repetitions", "must be at least 1");
}

std::size_t default_worker_count() {
    if (const char* env = std::getenv("NORMALSV_THREADS"); env != nullptr) {
        long long value = 0;
        const char* end = env + std::strlen(env);
        const auto [ptr, ec] = std::from_chars(env, end, value);
        if (ec != std::errc{} || ptr != end || value < 1) {
            throw ValidationError("NORMALSV_THREADS", "must be a positive integer, got '" +
                                                          std::string(env) + "'");
        }
        return static_cast<std::size_t>(value);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> simulate_terminal(const ModelParams& p, double maturity, const McConfig& cfg) {
    const ModelParams params = validate_params(p);
    validate_mc_config(cfg);
    if (!(maturity > 0.0)) throw ValidationError("maturity", "must be positive");

    std::vector<double> terminal(cfg.paths * cfg.repetitions);
    const std::size_t workers =
        std::min(cfg.workers == 0 ? default_worker_count() : cfg.workers, cfg.repetitions);

    auto run = [&](std::size_t first) {
        for (std::size_t part = first; part < cfg.repetitions; part += workers) {
            simulate_partition(params, maturity, cfg, part, terminal.data() + part * cfg.paths);
        }
    };

    if (workers <= 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }
    return terminal;
}

McResult call_estimate(std::span<const double> terminal, double strike, double discount) {
    const Moments m = sample_moments(terminal.size(), [&](std::size_t i) {
        return std::max(terminal[i] - strike, 0.0);
    });
    const auto n = static_cast<double>(terminal.size());
    return {discount * m.mean, discount * std::sqrt(m.variance / n), terminal.size()};
}

McResult price_mc(const ModelParams& p, double maturity, double strike, const McConfig& cfg) {
    const std::vector<double> terminal = simulate_terminal(p, maturity, cfg);
    return call_estimate(terminal, strike, std::exp(-p.r * maturity));
}

std::vector<McResult> price_mc(const ModelParams& p, double maturity,
                               std::span<const double> strikes, const McConfig& cfg) {
    const std::vector<double> terminal = simulate_terminal(p, maturity, cfg);
    const double discount = std::exp(-p.r * maturity);
    std::vector<McResult> out;
    out.reserve(strikes.size());
    for (double k : strikes) out.push_back(call_estimate(terminal, k, discount));
    return out;
}

CharFnEstimate charfn_estimate(std::span<const double> terminal, double u) {
    const Moments re = sample_moments(terminal.size(), [&](std::size_t i) {
        return std::cos(u * terminal[i]);
    });
    const Moments im = sample_moments(terminal.size(), [&](std::size_t i) {
        return std::sin(u * terminal[i]);
    });
    const auto n = static_cast<double>(terminal.size());
    return {Complex(re.mean, im.mean), std::sqrt((re.variance + im.variance) / n), terminal.size()};
}

CharFnEstimate estimate_charfn_mc(const ModelParams& p, double u, double maturity,
                                  const McConfig& cfg) {
    return charfn_estimate(simulate_terminal(p, maturity, cfg), u);
}

}  // namespace normalsv
