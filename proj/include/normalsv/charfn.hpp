#pragma once

#include "normalsv/model.hpp"

namespace normalsv {

/// Sign of the r*i*omega*tau term in C. `plus` solves the Riccati system
/// obtained from the pricing PDE; `minus` reproduces the printed variant
/// and exists only so the Monte-Carlo oracle can demonstrate the difference.
enum class DriftSign { plus, minus };

struct RiccatiTerms {
    Complex m;  // b - rho*sigma*i*omega
    Complex d;  // sqrt(m^2 + sigma^2 omega^2), principal branch
    Complex g;  // (m - d) / (m + d)
};

struct CharFnTerms {
    Complex omega;
    double tau = 0.0;
    Complex m;
    Complex d;
    Complex g;
    Complex C;
    Complex D;
};

struct OdeResidual {
    Complex c;
    Complex d;
};

// The characteristic-function routines accept a complex argument so that
// the damped transform can evaluate phi(v - i*alpha); the real-argument
// overloads are the usual Fourier transform of x(T).

RiccatiTerms riccati_terms(const ModelParams& p, Complex omega);
inline RiccatiTerms riccati_terms(const ModelParams& p, double omega) {
    return riccati_terms(p, Complex(omega, 0.0));
}

/// Closed-form solution (C, D) of
///   dD/dtau = sigma^2/2 D^2 - (b - rho sigma i omega) D - omega^2/2,
///   dC/dtau = r i omega + a D,      C(0) = D(0) = 0,
/// in the e^{-d tau} parameterisation.
CharFnTerms cd_solution(const ModelParams& p, Complex omega, double tau,
                        DriftSign sign = DriftSign::plus);
inline CharFnTerms cd_solution(const ModelParams& p, double omega, double tau,
                               DriftSign sign = DriftSign::plus) {
    return cd_solution(p, Complex(omega, 0.0), tau, sign);
}

/// E[exp(i u x(T))] for tau = T - t: exp(C + D v0 + i u s0).
Complex char_fn(const ModelParams& p, Complex u, double tau, DriftSign sign = DriftSign::plus);
inline Complex char_fn(const ModelParams& p, double u, double tau,
                       DriftSign sign = DriftSign::plus) {
    return char_fn(p, Complex(u, 0.0), tau, sign);
}

/// Central differences (step h in tau) of cd_solution plugged into the
/// Riccati system above. Vanishes to O(h^2) for the `plus` sign.
OdeResidual ode_residual(const ModelParams& p, double omega, double tau, double h,
                         DriftSign sign = DriftSign::plus);

/// Time at which E[exp(alpha x(t))] becomes infinite, +inf if it never does.
double moment_explosion_time(const ModelParams& p, double alpha);

}  // namespace normalsv
