#include "normalsv/cli/config.hpp"

#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>

#include "normalsv/errors.hpp"
#include "normalsv/fft.hpp"

namespace normalsv::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::string_view where,
                    std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) throw ValidationError(std::string(where), "must be an object");
    for (const auto& [key, _] : obj.items()) {
        bool known = false;
        for (auto a : allowed) known = known || key == a;
        if (!known) {
            const std::string path = where.empty() ? key : std::string(where) + "." + key;
            throw ValidationError(path, "unknown key");
        }
    }
}

std::string join(std::string_view where, std::string_view key) {
    return where.empty() ? std::string(key) : std::string(where) + "." + std::string(key);
}

double get_number(const json& obj, std::string_view where, const char* key) {
    const json& v = obj.at(key);
    if (!v.is_number()) throw ValidationError(join(where, key), "must be a number");
    return v.get<double>();
}

double number_or(const json& obj, std::string_view where, const char* key, double fallback) {
    return obj.contains(key) ? get_number(obj, where, key) : fallback;
}

double require_number(const json& obj, std::string_view where, const char* key) {
    if (!obj.contains(key)) throw ValidationError(join(where, key), "required");
    return get_number(obj, where, key);
}

std::uint64_t count_or(const json& obj, std::string_view where, const char* key,
                       std::uint64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    const bool ok = v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
    if (!ok) throw ValidationError(join(where, key), "must be a non-negative integer");
    return v.get<std::uint64_t>();
}

std::vector<double> parse_axis(const json& v, const std::string& where) {
    if (v.is_array()) {
        std::vector<double> out;
        for (const json& x : v) {
            if (!x.is_number()) throw ValidationError(where, "entries must be numbers");
            out.push_back(x.get<double>());
        }
        return out;
    }
    reject_unknown(v, where, {"start", "stop", "count"});
    const double start = require_number(v, where, "start");
    const double stop = require_number(v, where, "stop");
    const std::uint64_t count = count_or(v, where, "count", 0);
    if (count < 1) throw ValidationError(where + ".count", "must be at least 1");
    std::vector<double> out(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        out[i] = count == 1 ? start
                            : start + (stop - start) * static_cast<double>(i) /
                                          static_cast<double>(count - 1);
    }
    return out;
}

ModelParams parse_model(const json& m) {
    reject_unknown(m, "model", {"s0", "r", "a", "b", "sigma", "rho", "v0"});
    ModelParams p;
    p.s0 = require_number(m, "model", "s0");
    p.r = number_or(m, "model", "r", 0.0);
    p.a = require_number(m, "model", "a");
    p.b = require_number(m, "model", "b");
    p.sigma = require_number(m, "model", "sigma");
    p.rho = require_number(m, "model", "rho");
    p.v0 = require_number(m, "model", "v0");
    return validate_params(p);
}

FftConfig parse_fft(const json* f, const ModelParams& model, double maturity) {
    static const json kEmpty = json::object();
    const json& obj = f != nullptr ? *f : kEmpty;
    reject_unknown(obj, "fft", {"eta", "n", "k0", "alpha", "alpha_grid", "weighting"});

    const double eta = number_or(obj, "fft", "eta", 1.0);
    const std::uint64_t n = count_or(obj, "fft", "n", 32768);
    const double k0 = number_or(obj, "fft", "k0", forward_price(model, maturity));

    FftConfig cfg;
    cfg.grid = make_grid(eta, n, k0);
    if (obj.contains("alpha") && obj.contains("alpha_grid")) {
        throw ValidationError("fft", "give either alpha or alpha_grid, not both");
    }
    if (obj.contains("alpha_grid")) {
        const json& g = obj.at("alpha_grid");
        reject_unknown(g, "fft.alpha_grid", {"start", "step", "count"});
        cfg.alpha = AveragedAlpha{require_number(g, "fft.alpha_grid", "start"),
                                  require_number(g, "fft.alpha_grid", "step"),
                                  count_or(g, "fft.alpha_grid", "count", 0)};
    } else {
        cfg.alpha = SingleAlpha{number_or(obj, "fft", "alpha", default_alpha(model))};
    }
    if (obj.contains("weighting")) {
        const json& w = obj.at("weighting");
        if (w == "simpson") {
            cfg.weighting = Weighting::simpson;
        } else if (w == "trapezoid") {
            cfg.weighting = Weighting::trapezoid;
        } else {
            throw ValidationError("fft.weighting", "must be \"simpson\" or \"trapezoid\"");
        }
    }
    validate_fft_config(cfg);
    return cfg;
}

McConfig parse_mc(const json& m) {
    reject_unknown(m, "mc", {"steps", "paths", "repetitions", "seed", "antithetic"});
    McConfig cfg;
    cfg.steps = count_or(m, "mc", "steps", cfg.steps);
    cfg.paths = count_or(m, "mc", "paths", cfg.paths);
    cfg.repetitions = count_or(m, "mc", "repetitions", cfg.repetitions);
    cfg.seed = count_or(m, "mc", "seed", cfg.seed);
    if (m.contains("antithetic")) {
        if (!m.at("antithetic").is_boolean()) throw ValidationError("mc.antithetic", "must be a boolean");
        cfg.antithetic = m.at("antithetic").get<bool>();
    }
    validate_mc_config(cfg);
    return cfg;
}

SurfaceOptions parse_surface(const json& s) {
    reject_unknown(s, "surface", {"maturities", "method"});
    SurfaceOptions opts;
    if (!s.contains("maturities")) throw ValidationError("surface.maturities", "required");
    opts.maturities = parse_axis(s.at("maturities"), "surface.maturities");
    if (s.contains("method")) {
        const json& m = s.at("method");
        if (m == "quadrature") {
            opts.method = PricingMethod::quadrature;
        } else if (m == "fft") {
            opts.method = PricingMethod::fft;
        } else {
            throw ValidationError("surface.method", "must be \"quadrature\" or \"fft\"");
        }
    }
    return opts;
}

BenchOptions parse_bench(const json& b) {
    reject_unknown(b, "bench", {"pairs"});
    BenchOptions opts;
    if (!b.contains("pairs")) return opts;
    const json& pairs = b.at("pairs");
    if (!pairs.is_array()) throw ValidationError("bench.pairs", "must be an array");
    for (const json& pair : pairs) {
        reject_unknown(pair, "bench.pairs[]", {"n", "ts"});
        BenchPair bp{count_or(pair, "bench.pairs[]", "n", 0), count_or(pair, "bench.pairs[]", "ts", 0)};
        if (bp.n < 2 || !is_power_of_two(bp.n)) throw ValidationError("bench.pairs[].n", "must be a power of two >= 2");
        if (bp.ts < 1) throw ValidationError("bench.pairs[].ts", "must be at least 1");
        opts.pairs.push_back(bp);
    }
    return opts;
}

VerifyOptions parse_verify(const json& v) {
    reject_unknown(v, "verify", {"mc_steps", "mc_paths", "mc_repetitions", "roundtrip_quotes"});
    VerifyOptions opts;
    opts.mc_steps = count_or(v, "verify", "mc_steps", opts.mc_steps);
    opts.mc_paths = count_or(v, "verify", "mc_paths", opts.mc_paths);
    opts.mc_repetitions = count_or(v, "verify", "mc_repetitions", opts.mc_repetitions);
    opts.roundtrip_quotes = count_or(v, "verify", "roundtrip_quotes", opts.roundtrip_quotes);
    if (opts.mc_steps < 1 || opts.mc_paths < 1 || opts.mc_repetitions < 1) {
        throw ValidationError("verify", "Monte-Carlo sizes must be at least 1");
    }
    return opts;
}

}  // namespace

RunConfig parse_config(const json& doc) {
    reject_unknown(doc, "", {"model", "maturity", "strikes", "fft", "mc", "surface", "bench", "verify"});
    if (!doc.contains("model")) throw ValidationError("model", "required");

    RunConfig cfg;
    cfg.model = parse_model(doc.at("model"));
    cfg.maturity = number_or(doc, "", "maturity", 1.0);
    if (!(cfg.maturity > 0.0)) throw ValidationError("maturity", "must be positive");
    if (doc.contains("strikes")) cfg.strikes = parse_axis(doc.at("strikes"), "strikes");
    cfg.fft = parse_fft(doc.contains("fft") ? &doc.at("fft") : nullptr, cfg.model, cfg.maturity);
    if (doc.contains("mc")) cfg.mc = parse_mc(doc.at("mc"));
    if (doc.contains("surface")) cfg.surface = parse_surface(doc.at("surface"));
    if (doc.contains("bench")) cfg.bench = parse_bench(doc.at("bench"));
    if (doc.contains("verify")) cfg.verify = parse_verify(doc.at("verify"));
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("config", "cannot read " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError("config", path.string() + ": " + e.what());
    }
    return parse_config(doc);
}

FftConfig with_grid_size(const FftConfig& cfg, std::size_t n) {
    FftConfig out = cfg;
    out.grid = make_grid(cfg.grid.eta, n, cfg.grid.k0);
    return out;
}

}  // namespace normalsv::cli
