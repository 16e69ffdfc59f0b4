#pragma once

#include <cmath>

namespace normalsv::detail {

// Compensated (Neumaier) running sum.
class NeumaierSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        carry_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

}  // namespace normalsv::detail
