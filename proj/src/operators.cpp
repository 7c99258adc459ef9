#include "sigmoidnn/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sigmoidnn/errors.hpp"
#include "sigmoidnn/numeric.hpp"

namespace sigmoidnn {

namespace {

// Terms with |nx - k| beyond this radius are below double resolution.
constexpr double kSkipEps = 1e-16;

void check_point(const GridSample& sample, double x) {
    const auto iv = sample.interval();
    if (!std::isfinite(x) || x < iv.a || x > iv.b) {
        std::ostringstream msg;
        msg << "x = " << x << " outside [" << iv.a << ", " << iv.b << "]";
        throw InvalidInterval(msg.str());
    }
}

struct KernelSums {
    double weighted;
    double normalizer;
};

KernelSums kernel_sums(const GridSample& sample, const DensityKernel& kernel, int s, double x) {
    check_point(sample, x);
    const double u = sample.n() * x;
    const double radius = kernel.effective_support_radius(s, kSkipEps);
    const long lo = std::max(sample.first_index(), static_cast<long>(std::ceil(u - radius)));
    const long hi = std::min(sample.last_index(), static_cast<long>(std::floor(u + radius)));
    CompensatedSum weighted, normalizer;
    for (long k = lo; k <= hi; ++k) {
        const double w = kernel.phi(s, u - static_cast<double>(k));
        weighted += sample.at(k) * w;
        normalizer += w;
    }
    return {weighted.value(), normalizer.value()};
}

}  // namespace

GridSample::GridSample(Interval interval, int n, std::vector<double> values)
    : interval_(interval), n_(n), values_(std::move(values)) {
    if (n_ < 1) throw InvalidInterval("n must be positive");
    if (interval_.a >= interval_.b) throw InvalidInterval("interval must satisfy a < b");
    const auto expected = static_cast<std::size_t>(last_index() - first_index() + 1);
    if (values_.size() != expected) {
        std::ostringstream msg;
        msg << "expected " << expected << " samples, got " << values_.size();
        throw InvalidArgument(msg.str());
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            std::ostringstream msg;
            msg << "non-finite sample at k = " << first_index() + static_cast<long>(i);
            throw NonFiniteSample(msg.str());
        }
    }
}

GridSample sample_function(const std::function<double(double)>& f, int n, Interval interval) {
    if (n < 1) throw InvalidInterval("n must be positive");
    if (interval.a >= interval.b) throw InvalidInterval("interval must satisfy a < b");
    std::vector<double> values;
    const long first = static_cast<long>(n) * interval.a;
    const long last = static_cast<long>(n) * interval.b;
    values.reserve(static_cast<std::size_t>(last - first + 1));
    for (long k = first; k <= last; ++k) values.push_back(f(static_cast<double>(k) / n));
    return GridSample(interval, n, std::move(values));
}

double nn_operator(const GridSample& sample, const DensityKernel& kernel, double x) {
    const auto sums = kernel_sums(sample, kernel, 0, x);
    if (!(sums.normalizer > 0.0)) throw DegenerateNormalizer("normalizer is not positive");
    return sums.weighted / sums.normalizer;
}

double nn_operator_simplified(const GridSample& sample, const DensityKernel& kernel, double x) {
    return kernel_sums(sample, kernel, 0, x).weighted;
}

double nn_operator_derivative(const GridSample& sample, const DensityKernel& kernel, int s, double x) {
    if (s < 0 || s > kernel.max_order()) throw OrderOutOfRange("operator derivative order out of range");
    return ipow(static_cast<double>(sample.n()), s) * kernel_sums(sample, kernel, s, x).weighted;
}

bool in_guarantee_region(Interval interval, double delta, double x) {
    return x >= interval.a + delta && x <= interval.b - delta;
}

}  // namespace sigmoidnn
