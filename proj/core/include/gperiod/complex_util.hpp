#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace gperiod {

using cplx = std::complex<double>;

// e(t) = exp(2*pi*i*t). The argument is measured in turns, not radians.
inline cplx unit_root(double turns) {
    const double a = 2.0 * std::numbers::pi * turns;
    return {std::cos(a), std::sin(a)};
}

// Neumaier-compensated accumulator; keeps exponential sums with ~1e5 terms
// near machine precision.
class KahanSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class KahanComplex {
public:
    void add(cplx z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    KahanSum re_, im_;
};

}  // namespace gperiod
