#pragma once

#include <filesystem>
#include <optional>
#include <ostream>

#include "normalsv/cli/config.hpp"

namespace normalsv::cli {

enum class PriceMethod { fft, mc, quad };

/// `strike,price[,std_error]` rows for cfg.strikes.
void cmd_price(const RunConfig& cfg, PriceMethod method, std::ostream& out);

/// Builds the configured surface and writes it as CSV.
void cmd_surface(const RunConfig& cfg, std::ostream& out);

/// `method,n_or_ts,strikes,seconds` rows for each configured pair, then a
/// `fft_faster=true|false` line when at least one pair ran.
void cmd_bench(const RunConfig& cfg, std::ostream& out);

/// Runs the oracle checks; returns true iff every check passed.
bool cmd_verify(const RunConfig& cfg, std::ostream& out);

}  // namespace normalsv::cli
