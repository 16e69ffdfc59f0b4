#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace normalsv::oracle {

RiccatiState rk4_riccati(const ModelParams& p, double omega, double tau, double step) {
    using C = std::complex<double>;
    const C i(0.0, 1.0);
    const C m = p.b - p.rho * p.sigma * i * omega;
    const double half_s2 = 0.5 * p.sigma * p.sigma;
    const double half_w2 = 0.5 * omega * omega;

    auto f_d = [&](C d) { return half_s2 * d * d - m * d - half_w2; };
    auto f_c = [&](C d) { return p.r * i * omega + p.a * d; };

    const int n = std::max(1, static_cast<int>(std::ceil(tau / step - 1e-9)));
    const double h = tau / n;
    C c = 0.0;
    C d = 0.0;
    for (int k = 0; k < n; ++k) {
        const C k1d = f_d(d);
        const C k1c = f_c(d);
        const C d2 = d + 0.5 * h * k1d;
        const C k2d = f_d(d2);
        const C k2c = f_c(d2);
        const C d3 = d + 0.5 * h * k2d;
        const C k3d = f_d(d3);
        const C k3c = f_c(d3);
        const C d4 = d + h * k3d;
        const C k4d = f_d(d4);
        const C k4c = f_c(d4);
        d += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
        c += h / 6.0 * (k1c + 2.0 * k2c + 2.0 * k3c + k4c);
    }
    return {c, d};
}

std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            // Reduce j*k mod n before forming the angle to keep it small.
            const double angle =
                -2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
            acc += x[j] * std::complex<double>(std::cos(angle), std::sin(angle));
        }
        out[k] = acc;
    }
    return out;
}

double simpson(const std::function<double(double)>& f, double lo, double hi, int intervals) {
    if (intervals % 2 != 0) ++intervals;
    const double h = (hi - lo) / intervals;
    double sum = f(lo) + f(hi);
    for (int k = 1; k < intervals; ++k) {
        sum += (k % 2 == 1 ? 4.0 : 2.0) * f(lo + h * k);
    }
    return sum * h / 3.0;
}

double bachelier_by_density(double forward, double strike, double maturity, double rate,
                            double sigma) {
    const double sd = sigma * std::sqrt(maturity);
    const double lo = std::max(strike, forward - 40.0 * sd);
    const double hi = forward + 40.0 * sd;
    if (hi <= lo) return 0.0;
    auto integrand = [&](double s) {
        const double z = (s - forward) / sd;
        return (s - strike) * std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
    };
    return std::exp(-rate * maturity) * simpson(integrand, lo, hi, 200000);
}

}  // namespace normalsv::oracle
