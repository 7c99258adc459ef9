#pragma once

#include <cmath>
#include <functional>

namespace sigmoidnn {

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
        abs_ += std::abs(v);
    }
    CompensatedSum& operator+=(double v) {
        add(v);
        return *this;
    }
    double value() const { return sum_ + comp_; }
    /// Sum of magnitudes of everything added; scales the rounding error.
    double magnitude() const { return abs_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
    double abs_ = 0.0;
};

/// x^k for non-negative integer k by repeated multiplication.
inline double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

/// Powers with an integer fast path; nu must be >= 0.
inline double moment_power(double x, double nu) {
    const double k = std::round(nu);
    if (k == nu && k < 64) return ipow(x, static_cast<int>(k));
    return std::pow(std::abs(x), nu) * (x < 0 && k == nu && static_cast<long>(k) % 2 ? -1.0 : 1.0);
}

struct ZetaValue {
    double value;      // upper estimate of zeta(p)
    double abs_error;  // zeta(p) lies in [value - abs_error, value]
};

/// zeta(p), p > 1: partial sum over k <= N plus the integral tail N^(1-p)/(p-1).
/// Throws ZetaDivergence for p <= 1.
ZetaValue riemann_zeta(double p, double target_error = 1e-12);

struct QuadratureResult {
    double value;
    double error;
};

/// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b], split into
/// panels of at most `panel` width. Throws QuadratureNonConvergence when the
/// estimated error exceeds tol.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double tol,
                           double panel = 1.0);

}  // namespace sigmoidnn
