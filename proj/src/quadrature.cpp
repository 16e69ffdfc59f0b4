#include "normalsv/quadrature.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "neumaier.hpp"
#include "normalsv/errors.hpp"

namespace normalsv {

namespace {

struct Segment {
    double lo, hi;
    double f_lo, f_mid, f_hi;
    double whole;  // Simpson estimate on [lo, hi]
    double tol;
    int depth;
};

constexpr int kMaxDepth = 60;

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double lo, double hi,
                                  double abs_tol, std::size_t max_evaluations, std::size_t panels) {
    QuadratureResult result;
    if (hi == lo) return result;
    if (panels == 0) panels = 1;

    auto eval = [&](double x) {
        if (++result.evaluations > max_evaluations) {
            throw NumericalError("adaptive Simpson did not converge within " +
                                 std::to_string(max_evaluations) + " evaluations");
        }
        const double y = f(x);
        if (!std::isfinite(y)) {
            throw NumericalError("non-finite integrand at x = " + std::to_string(x));
        }
        return y;
    };

    std::vector<Segment> stack;
    const double width = (hi - lo) / static_cast<double>(panels);
    const double panel_tol = abs_tol / static_cast<double>(panels);
    double f_left = eval(lo);
    for (std::size_t i = 0; i < panels; ++i) {
        const double a = lo + width * static_cast<double>(i);
        const double b = (i + 1 == panels) ? hi : a + width;
        const double mid = 0.5 * (a + b);
        const double f_mid = eval(mid);
        const double f_right = eval(b);
        stack.push_back({a, b, f_left, f_mid, f_right, (b - a) / 6.0 * (f_left + 4.0 * f_mid + f_right),
                         panel_tol, 0});
        f_left = f_right;
    }

    detail::NeumaierSum sum;

    while (!stack.empty()) {
        const Segment s = stack.back();
        stack.pop_back();

        const double mid = 0.5 * (s.lo + s.hi);
        const double left_mid = 0.5 * (s.lo + mid);
        const double right_mid = 0.5 * (mid + s.hi);
        const double f_lm = eval(left_mid);
        const double f_rm = eval(right_mid);
        const double left = (mid - s.lo) / 6.0 * (s.f_lo + 4.0 * f_lm + s.f_mid);
        const double right = (s.hi - mid) / 6.0 * (s.f_mid + 4.0 * f_rm + s.f_hi);
        const double delta = left + right - s.whole;

        if (s.depth >= kMaxDepth || std::abs(delta) <= 15.0 * s.tol) {
            sum.add(left + right + delta / 15.0);
            continue;
        }
        stack.push_back({mid, s.hi, s.f_mid, f_rm, s.f_hi, right, 0.5 * s.tol, s.depth + 1});
        stack.push_back({s.lo, mid, s.f_lo, f_lm, s.f_mid, left, 0.5 * s.tol, s.depth + 1});
    }

    result.value = sum.value();
    return result;
}

}  // namespace normalsv
