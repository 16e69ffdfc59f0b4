#pragma once

#include <string>

namespace normalsv {

/// Shortest-safe decimal rendering used by every CSV writer: 17 significant
/// digits, round-trips exactly.
std::string format_number(double x);

}  // namespace normalsv
