#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <vector>

#include "json.hpp"
#include "normalsv/mc_engine.hpp"
#include "normalsv/model.hpp"
#include "normalsv/surface.hpp"
#include "normalsv/transform_pricer.hpp"

namespace normalsv::cli {

struct BenchPair {
    std::size_t n = 0;   // FFT grid size
    std::size_t ts = 0;  // Monte-Carlo time steps
};

struct SurfaceOptions {
    std::vector<double> maturities;
    PricingMethod method = PricingMethod::quadrature;
};

struct BenchOptions {
    std::vector<BenchPair> pairs;
};

struct VerifyOptions {
    std::size_t mc_steps = 1000;
    std::size_t mc_paths = 10000;
    std::size_t mc_repetitions = 20;
    std::size_t roundtrip_quotes = 1000;
};

/// Everything a command needs, parsed from one JSON document:
///
///   {
///     "model":    {"s0", "r"?, "a", "b", "sigma", "rho", "v0"},
///     "maturity": 1.0,
///     "strikes":  [..] | {"start", "stop", "count"},
///     "fft":      {"eta"?, "n"?, "k0"?, "alpha"? | "alpha_grid"?, "weighting"?},
///     "mc":       {"steps"?, "paths"?, "repetitions"?, "seed"?, "antithetic"?},
///     "surface":  {"maturities", "method"?},
///     "bench":    {"pairs": [{"n", "ts"}, ..]},
///     "verify":   {"mc_steps"?, "mc_paths"?, "mc_repetitions"?, "roundtrip_quotes"?}
///   }
///
/// Unknown keys are rejected at every level.
struct RunConfig {
    ModelParams model;
    double maturity = 1.0;
    std::vector<double> strikes;
    FftConfig fft;
    McConfig mc;
    SurfaceOptions surface;
    BenchOptions bench;
    VerifyOptions verify;
};

RunConfig parse_config(const nlohmann::json& doc);

/// Throws ValidationError for a missing file or malformed JSON.
RunConfig load_config(const std::filesystem::path& path);

/// The configured FFT grid re-sized to n points (same eta and center).
FftConfig with_grid_size(const FftConfig& cfg, std::size_t n);

}  // namespace normalsv::cli
