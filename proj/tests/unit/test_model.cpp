#include <gtest/gtest.h>

#include "normalsv/errors.hpp"
#include "normalsv/model.hpp"

using namespace normalsv;

namespace {

ModelParams baseline() {
    return {.s0 = -0.001, .r = 0.0, .a = 5e-7, .b = 1.0, .sigma = 0.25, .rho = -0.09, .v0 = 0.09};
}

std::string failing_field(ModelParams p) {
    try {
        validate_params(p);
    } catch (const ValidationError& e) {
        return e.field();
    }
    return "";
}

}  // namespace

TEST(ValidateParams, AcceptsBaselineParameters) {
    const ModelParams p = baseline();
    const ModelParams v = validate_params(p);
    EXPECT_EQ(v.s0, p.s0);
    EXPECT_EQ(v.a, p.a);
    EXPECT_EQ(v.rho, p.rho);
}

TEST(ValidateParams, RejectsRhoOutOfRange) {
    ModelParams p = baseline();
    p.rho = 1.5;
    EXPECT_EQ(failing_field(p), "rho");
}

TEST(ValidateParams, RejectsNegativeInitialVariance) {
    ModelParams p = baseline();
    p.v0 = -0.01;
    EXPECT_EQ(failing_field(p), "v0");
}

TEST(ValidateParams, RejectsZeroVolOfVolAndNonPositiveReversion) {
    ModelParams p = baseline();
    p.sigma = 0.0;
    EXPECT_EQ(failing_field(p), "sigma");
    p = baseline();
    p.b = 0.0;
    EXPECT_EQ(failing_field(p), "b");
    p = baseline();
    p.a = -1e-9;
    EXPECT_EQ(failing_field(p), "a");
    p = baseline();
    p.s0 = std::numeric_limits<double>::quiet_NaN();
    EXPECT_EQ(failing_field(p), "s0");
}

TEST(ValidateParams, BoundaryCorrelationsAreValid) {
    ModelParams p = baseline();
    p.rho = -1.0;
    EXPECT_NO_THROW(validate_params(p));
    p.rho = 1.0;
    EXPECT_NO_THROW(validate_params(p));
}

TEST(ValidateParams, Idempotent) {
    const ModelParams once = validate_params(baseline());
    const ModelParams twice = validate_params(once);
    EXPECT_EQ(once.s0, twice.s0);
    EXPECT_EQ(once.r, twice.r);
    EXPECT_EQ(once.a, twice.a);
    EXPECT_EQ(once.b, twice.b);
    EXPECT_EQ(once.sigma, twice.sigma);
    EXPECT_EQ(once.rho, twice.rho);
    EXPECT_EQ(once.v0, twice.v0);
}

TEST(FellerRatio, Baseline) {
    EXPECT_NEAR(feller_ratio(baseline()), 1.6e-5, 1e-18);
}

TEST(FellerRatio, BoundaryAndZero) {
    ModelParams p = baseline();
    p.a = p.sigma * p.sigma / 2.0;
    EXPECT_DOUBLE_EQ(feller_ratio(p), 1.0);
    p.a = 0.0;
    EXPECT_EQ(feller_ratio(p), 0.0);
}

TEST(FellerRatio, HomogeneousOfDegreeZero) {
    const ModelParams p = baseline();
    for (double c : {0.01, 0.5, 3.0, 1e4}) {
        ModelParams q = p;
        q.a = c * p.a;
        q.sigma = std::sqrt(c) * p.sigma;
        EXPECT_NEAR(feller_ratio(q), feller_ratio(p), 1e-15 * feller_ratio(p)) << c;
    }
}

TEST(ExpectedIntegratedVariance, MatchesClosedFormPieces) {
    const ModelParams p = baseline();
    const double decay = (1.0 - std::exp(-1.0));
    EXPECT_NEAR(expected_integrated_variance(p, 1.0), 0.09 * decay + 5e-7 * (1.0 - decay), 1e-16);
    // Long maturity: the mean of v approaches a / b.
    ModelParams q = p;
    q.a = 0.04;
    q.b = 2.0;
    q.v0 = 0.02;
    EXPECT_NEAR(expected_integrated_variance(q, 200.0) / 200.0, long_run_variance(q), 1e-4);
}
