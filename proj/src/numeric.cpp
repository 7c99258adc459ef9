#include "sigmoidnn/numeric.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <sstream>

#include "sigmoidnn/errors.hpp"

namespace sigmoidnn {

ZetaValue riemann_zeta(double p, double target_error) {
    if (!(p > 1.0) || !std::isfinite(p)) {
        std::ostringstream msg;
        msg << "zeta(" << p << ") diverges";
        throw ZetaDivergence(msg.str());
    }
    // Sum_{k > N} k^-p lies between the integrals from N+1 and from N, which
    // differ by at most N^-p; choose N so that gap meets the target.
    constexpr double kMaxTerms = 1e8;
    const double n_real = std::clamp(std::ceil(std::pow(target_error, -1.0 / p)), 16.0, kMaxTerms);
    const auto n = static_cast<long>(n_real);
    CompensatedSum sum;
    for (long k = n; k >= 1; --k) sum += std::pow(static_cast<double>(k), -p);
    const double tail = std::pow(n_real, 1.0 - p) / (p - 1.0);
    return {sum.value() + tail, std::pow(n_real, -p)};
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double tol, double panel) {
    if (!(b > a)) return {0.0, 0.0};
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / panel)));
    const double width = (b - a) / panels;
    CompensatedSum total;
    double err_total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + width * i;
        const double hi = i + 1 == panels ? b : lo + width;
        double err = 0.0;
        const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            f, lo, hi, 10, 1e-14, &err);
        total += v;
        err_total += err;
    }
    if (!(err_total <= tol)) {
        std::ostringstream msg;
        msg << "quadrature error estimate " << err_total << " exceeds tolerance " << tol;
        throw QuadratureNonConvergence(msg.str());
    }
    return {total.value(), err_total};
}

}  // namespace sigmoidnn
