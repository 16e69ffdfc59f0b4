#pragma once

#include <cstddef>
#include <functional>

namespace normalsv {

struct QuadratureResult {
    double value = 0.0;
    std::size_t evaluations = 0;
};

/// Adaptive Simpson rule with Richardson correction on [lo, hi].
/// The interval is first cut into `panels` pieces so that oscillatory
/// integrands are not accepted on a too-coarse first sample. Throws
/// NumericalError when more than `max_evaluations` calls would be needed.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double lo, double hi,
                                  double abs_tol, std::size_t max_evaluations,
                                  std::size_t panels = 64);

}  // namespace normalsv
