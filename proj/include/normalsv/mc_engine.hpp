#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "normalsv/model.hpp"

namespace normalsv {

/// Simulation controls. A run consists of `repetitions` independent
/// partitions of `paths` paths each; partition i draws from
/// partition_stream(seed, i), so results do not depend on `workers`.
struct McConfig {
    std::size_t steps = 50000;
    std::size_t paths = 10000;
    std::uint64_t seed = 42;
    std::size_t repetitions = 20;
    bool antithetic = false;
    std::size_t workers = 0;  // 0: NORMALSV_THREADS, else hardware concurrency
};

void validate_mc_config(const McConfig& cfg);

struct McResult {
    double price = 0.0;
    double std_error = 0.0;
    std::size_t paths_used = 0;
};

struct CharFnEstimate {
    Complex value;
    double std_error = 0.0;
    std::size_t paths_used = 0;
};

/// Worker count from NORMALSV_THREADS, or the hardware concurrency when the
/// variable is unset. Throws ValidationError for a non-positive value.
std::size_t default_worker_count();

/// Terminal values x(T) of paths * repetitions paths, partition-major.
///
/// Full-truncation Euler with step T / steps:
///   v+ = max(v, 0)
///   v <- v + (a - b v+) dt + sigma sqrt(v+ dt) Z2
///   x <- x + r dt + sqrt(v+ dt) Z1,   Z1 = rho Z2 + sqrt(1 - rho^2) Z_perp.
/// Given the variance path the Z_perp contributions to x(T) sum to a single
/// Gaussian with variance (1 - rho^2) sum(v+ dt), which is drawn once per
/// path; x(T) has exactly the law of the step-by-step recursion.
std::vector<double> simulate_terminal(const ModelParams& p, double maturity, const McConfig& cfg);

McResult price_mc(const ModelParams& p, double maturity, double strike, const McConfig& cfg);

/// Prices every strike off one set of simulated paths.
std::vector<McResult> price_mc(const ModelParams& p, double maturity,
                               std::span<const double> strikes, const McConfig& cfg);

/// Discounted call estimate from already simulated terminal values.
McResult call_estimate(std::span<const double> terminal, double strike, double discount);

/// Sample mean of exp(i u x(T)); std_error is sqrt((s_re^2 + s_im^2) / n).
CharFnEstimate estimate_charfn_mc(const ModelParams& p, double u, double maturity,
                                  const McConfig& cfg);

CharFnEstimate charfn_estimate(std::span<const double> terminal, double u);

}  // namespace normalsv
