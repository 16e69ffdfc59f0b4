#include "normalsv/model.hpp"

#include <cmath>
#include <string>

#include "normalsv/errors.hpp"

namespace normalsv {

namespace {

void require_finite(const char* field, double value) {
    if (!std::isfinite(value)) {
        throw ValidationError(field, "must be finite");
    }
}

}  // namespace

ModelParams validate_params(const ModelParams& raw) {
    require_finite("s0", raw.s0);
    require_finite("r", raw.r);
    require_finite("a", raw.a);
    require_finite("b", raw.b);
    require_finite("sigma", raw.sigma);
    require_finite("rho", raw.rho);
    require_finite("v0", raw.v0);

    if (raw.a < 0.0) throw ValidationError("a", "must be non-negative");
    if (raw.b <= 0.0) throw ValidationError("b", "mean-reversion rate must be positive");
    // The closed-form characteristic function divides by sigma^2.
    if (raw.sigma <= 0.0) throw ValidationError("sigma", "must be positive");
    if (raw.rho < -1.0 || raw.rho > 1.0) throw ValidationError("rho", "out of range [-1, 1]");
    if (raw.v0 < 0.0) throw ValidationError("v0", "must be non-negative");
    return raw;
}

double feller_ratio(const ModelParams& p) {
    return 2.0 * p.a / (p.sigma * p.sigma);
}

double long_run_variance(const ModelParams& p) {
    return p.a / p.b;
}

double expected_integrated_variance(const ModelParams& p, double maturity) {
    // -expm1 keeps (1 - e^{-bT}) accurate when bT is small.
    const double decay = -std::expm1(-p.b * maturity) / p.b;
    return p.v0 * decay + (p.a / p.b) * (maturity - decay);
}

}  // namespace normalsv
