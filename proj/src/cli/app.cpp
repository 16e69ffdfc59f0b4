#include "normalsv/cli/app.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "normalsv/cli/commands.hpp"
#include "normalsv/errors.hpp"

namespace normalsv::cli {

namespace {

struct GlobalOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    DriftSign drift_sign = DriftSign::plus;
};

// Output goes to --out when given, otherwise to the caller's stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {}

    std::ostream& stream() { return path_.empty() ? fallback_ : buffer_; }

    void commit() {
        if (path_.empty()) return;
        std::ofstream file(path_, std::ios::binary | std::ios::trunc);
        if (!file) throw IoError(path_, "cannot open for writing");
        file << buffer_.str();
        file.flush();
        if (!file) throw IoError(path_, "write failed");
    }

private:
    std::string path_;
    std::ostream& fallback_;
    std::ostringstream buffer_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Call pricing under normal dynamics with CIR stochastic variance"};
    app.require_subcommand(1);

    GlobalOptions global;
    std::vector<double> strike_overrides;
    PriceMethod method = PriceMethod::fft;

    app.add_option("--config", global.config_path, "JSON run configuration")->required();
    app.add_option("--seed", global.seed, "Monte-Carlo seed (overrides mc.seed)");
    app.add_option("--out", global.out_path, "write output to this file instead of stdout");
    const std::map<std::string, DriftSign> signs{{"plus", DriftSign::plus}, {"minus", DriftSign::minus}};
    app.add_option("--drift-sign", global.drift_sign, "sign of the r*i*omega*tau term")
        ->transform(CLI::CheckedTransformer(signs, CLI::ignore_case))
        ->group("");

    CLI::App* price = app.add_subcommand("price", "price calls at the configured strikes");
    const std::map<std::string, PriceMethod> methods{
        {"fft", PriceMethod::fft}, {"mc", PriceMethod::mc}, {"quad", PriceMethod::quad}};
    price->add_option("--method", method, "fft | mc | quad")
        ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
    price->add_option("--strike", strike_overrides, "strike (repeatable; overrides config)");
    CLI::App* surface = app.add_subcommand("surface", "write a normal implied-vol surface as CSV");
    CLI::App* bench = app.add_subcommand("bench", "time FFT against Monte-Carlo");
    CLI::App* verify = app.add_subcommand("verify", "run the oracle cross-checks");
    for (CLI::App* sub : {price, surface, bench, verify}) sub->fallthrough();

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream msg;
        const int code = app.exit(e, out, msg);
        err << msg.str();
        return code == 0 ? kExitOk : kExitConfigError;
    }

    RunConfig cfg;
    try {
        cfg = load_config(global.config_path);
        if (global.seed) cfg.mc.seed = *global.seed;
        cfg.fft.drift_sign = global.drift_sign;
        if (!strike_overrides.empty()) cfg.strikes = strike_overrides;
    } catch (const Error& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }

    try {
        Sink sink(global.out_path, out);
        int code = kExitOk;
        if (price->parsed()) {
            cmd_price(cfg, method, sink.stream());
        } else if (surface->parsed()) {
            cmd_surface(cfg, sink.stream());
        } else if (bench->parsed()) {
            cmd_bench(cfg, sink.stream());
        } else if (verify->parsed()) {
            code = cmd_verify(cfg, sink.stream()) ? kExitOk : kExitVerifyFailed;
        }
        sink.commit();
        return code;
    } catch (const ValidationError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntimeError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntimeError;
    }
}

}  // namespace normalsv::cli
