#include "normalsv/charfn.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace normalsv {

namespace {

constexpr Complex kI{0.0, 1.0};

// exp(z) - 1 without cancellation for small |z|.
Complex expm1(Complex z) {
    const double x = z.real();
    const double y = z.imag();
    const double half_sin = std::sin(0.5 * y);
    return {std::expm1(x) * std::cos(y) - 2.0 * half_sin * half_sin, std::exp(x) * std::sin(y)};
}

// Principal log(1 + z) without cancellation for small |z|.
Complex log1p(Complex z) {
    const double x = z.real();
    const double y = z.imag();
    if (std::abs(z) > 0.5) {
        return std::log(1.0 + z);
    }
    return {0.5 * std::log1p(x * (2.0 + x) + y * y), std::atan2(y, 1.0 + x)};
}

struct Terms {
    Complex m;
    Complex d;
    Complex g;
    Complex q;  // (m - d) / sigma^2
};

// m - d and m + d multiply to -sigma^2 omega^2. Whichever of the two is
// formed without cancellation determines the other, which keeps D and C
// accurate as sigma -> 0 (where m - d is O(sigma^2)).
Terms terms(const ModelParams& p, Complex omega) {
    const double sigma2 = p.sigma * p.sigma;
    const Complex m = p.b - p.rho * p.sigma * kI * omega;
    const Complex omega2 = omega * omega;
    const Complex d = std::sqrt(m * m + sigma2 * omega2);

    Complex m_plus_d = m + d;
    Complex m_minus_d = m - d;
    Complex q;
    if (std::abs(m_plus_d) >= std::abs(m_minus_d)) {
        q = -omega2 / m_plus_d;
        m_minus_d = sigma2 * q;
    } else {
        m_plus_d = -sigma2 * omega2 / m_minus_d;
        q = m_minus_d / sigma2;
    }
    return {m, d, m_minus_d / m_plus_d, q};
}

}  // namespace

RiccatiTerms riccati_terms(const ModelParams& p, Complex omega) {
    const Terms t = terms(p, omega);
    return {t.m, t.d, t.g};
}

CharFnTerms cd_solution(const ModelParams& p, Complex omega, double tau, DriftSign sign) {
    const Terms t = terms(p, omega);
    const Complex decay = std::exp(-t.d * tau);
    const Complex one_minus_decay = -expm1(-t.d * tau);

    const Complex D = t.q * one_minus_decay / (1.0 - t.g * decay);

    // log((1 - g e^{-d tau}) / (1 - g)) = log1p(g (1 - e^{-d tau}) / (1 - g))
    const Complex log_ratio = log1p(t.g * one_minus_decay / (1.0 - t.g));
    const double drift_sign = sign == DriftSign::plus ? 1.0 : -1.0;
    const Complex C = drift_sign * p.r * kI * omega * tau + p.a * t.q * tau -
                      (2.0 * p.a / (p.sigma * p.sigma)) * log_ratio;

    return {omega, tau, t.m, t.d, t.g, C, D};
}

Complex char_fn(const ModelParams& p, Complex u, double tau, DriftSign sign) {
    const CharFnTerms cd = cd_solution(p, u, tau, sign);
    return std::exp(cd.C + cd.D * p.v0 + kI * u * p.s0);
}

OdeResidual ode_residual(const ModelParams& p, double omega, double tau, double h, DriftSign sign) {
    const CharFnTerms up = cd_solution(p, omega, tau + h, sign);
    const CharFnTerms down = cd_solution(p, omega, tau - h, sign);
    const CharFnTerms mid = cd_solution(p, omega, tau, sign);

    const Complex dC = (up.C - down.C) / (2.0 * h);
    const Complex dD = (up.D - down.D) / (2.0 * h);

    const Complex rhs_d =
        0.5 * p.sigma * p.sigma * mid.D * mid.D - mid.m * mid.D - 0.5 * omega * omega;
    const Complex rhs_c = p.r * kI * omega + p.a * mid.D;
    return {dC - rhs_c, dD - rhs_d};
}

double moment_explosion_time(const ModelParams& p, double alpha) {
    constexpr double kNever = std::numeric_limits<double>::infinity();
    if (alpha == 0.0) return kNever;

    // Along omega = -i alpha the Riccati equation for D is real:
    //   D' = sigma^2/2 D^2 - m D + alpha^2/2,  m = b - rho sigma alpha,
    // and the moment blows up when D does.
    const double m = p.b - p.rho * p.sigma * alpha;
    const double disc = m * m - p.sigma * p.sigma * alpha * alpha;

    if (disc >= 0.0 && m > 0.0) return kNever;  // D settles on the lower root
    if (disc < 0.0) {
        const double beta = std::sqrt(-disc);
        return (2.0 / beta) * (0.5 * std::numbers::pi + std::atan(m / beta));
    }
    if (disc == 0.0) return -2.0 / m;
    const double root = std::sqrt(disc);
    return std::log((m - root) / (m + root)) / root;
}

}  // namespace normalsv
