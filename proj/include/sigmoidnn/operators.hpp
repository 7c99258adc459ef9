#pragma once

#include <functional>
#include <vector>

#include "sigmoidnn/density.hpp"
#include "sigmoidnn/moments.hpp"

namespace sigmoidnn {

/// Samples f(k/n) for k = na..nb. Immutable once built.
class GridSample {
public:
    /// Throws InvalidInterval on a bad (n, interval) pair, InvalidArgument on a
    /// length mismatch and NonFiniteSample on non-finite values.
    GridSample(Interval interval, int n, std::vector<double> values);

    Interval interval() const { return interval_; }
    int n() const { return n_; }
    long first_index() const { return static_cast<long>(n_) * interval_.a; }
    long last_index() const { return static_cast<long>(n_) * interval_.b; }
    const std::vector<double>& values() const { return values_; }
    /// f(k/n) for first_index() <= k <= last_index().
    double at(long k) const { return values_[static_cast<std::size_t>(k - first_index())]; }

private:
    Interval interval_;
    int n_;
    std::vector<double> values_;
};

GridSample sample_function(const std::function<double(double)>& f, int n, Interval interval);

/// F_n(f, x): normalized weighted sum. x must lie in [a, b].
double nn_operator(const GridSample& sample, const DensityKernel& kernel, double x);

/// F~_n(f, x) = sum f(k/n) phi(nx - k), without the normalizer.
double nn_operator_simplified(const GridSample& sample, const DensityKernel& kernel, double x);

/// d^s/dx^s F~_n(f, x) = n^s sum f(k/n) phi^(s)(nx - k), 0 <= s <= max_order.
double nn_operator_derivative(const GridSample& sample, const DensityKernel& kernel, int s, double x);

/// True when x lies in I_delta = [a + delta, b - delta], where the
/// simplified operator and its derivatives carry convergence guarantees.
bool in_guarantee_region(Interval interval, double delta, double x);

}  // namespace sigmoidnn
