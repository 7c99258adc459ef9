#include "sigmoidnn/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "sigmoidnn/errors.hpp"
#include "sigmoidnn/numeric.hpp"

namespace sigmoidnn {

namespace {

constexpr double kRounding = 16.0 * std::numeric_limits<double>::epsilon();

void check_query(const DensityKernel& kernel, int s, double nu) {
    if (s < 0 || s > kernel.max_order()) throw OrderOutOfRange("moment: derivative order out of range");
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw DivergenceRisk("moment order must be finite and non-negative");
    if (nu >= kernel.moment_order_limit(s)) {
        std::ostringstream msg;
        msg << "moment order " << nu << " >= tail exponent " << kernel.moment_order_limit(s) << " for s = " << s;
        throw DivergenceRisk(msg.str());
    }
}

void check_interval(int n, Interval iv) {
    if (n < 1) throw InvalidInterval("scale n must be positive");
    if (iv.a >= iv.b) {
        std::ostringstream msg;
        msg << "empty interval [" << iv.a << ", " << iv.b << "]";
        throw InvalidInterval(msg.str());
    }
}

// Smallest radius (on a geometric ladder) whose certified shifted tail is <= eps.
double certified_radius(const DensityKernel& kernel, int s, double nu, double eps) {
    double r = std::max(1.0, kernel.effective_support_radius(s, eps));
    for (int it = 0; it < 400; ++it) {
        if (kernel.shifted_tail_bound(s, nu, r) <= eps) return r;
        r = r * 1.05 + 0.5;
    }
    throw DivergenceRisk("no truncation radius certifies the requested tail");
}

double integral_window(const DensityKernel& kernel, int nu, double tol) {
    double r = std::max(1.0, kernel.effective_support_radius(0, tol));
    for (int it = 0; it < 400; ++it) {
        if (kernel.integral_tail_bound(0, nu, r) <= tol) return r;
        r = r * 1.05 + 0.5;
    }
    throw QuadratureNonConvergence("no integration window certifies the requested tail");
}

std::complex<double> minus_i_pow(int nu) {
    switch (((nu % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, -1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, 1.0};
    }
}

// Periodic absolute sum at u with a fixed truncation radius.
double absolute_sum(const DensityKernel& kernel, int s, double nu, double u, double radius, double* magnitude) {
    CompensatedSum acc;
    const auto lo = static_cast<long>(std::ceil(u - radius));
    const auto hi = static_cast<long>(std::floor(u + radius));
    for (long k = lo; k <= hi; ++k) {
        const double t = u - static_cast<double>(k);
        acc += std::abs(kernel.phi(s, t)) * std::pow(std::abs(t), nu);
    }
    if (magnitude) *magnitude = std::max(*magnitude, acc.magnitude());
    return acc.value();
}

}  // namespace

std::string to_string(MomentMethod m) { return m == MomentMethod::DirectSum ? "direct-sum" : "poisson-fourier"; }

MomentReport truncated_moment(const DensityKernel& kernel, const MomentQuery& q) {
    check_interval(q.n, q.interval);
    if (q.s < 0 || q.s > kernel.max_order()) throw OrderOutOfRange("moment: derivative order out of range");
    if (!(q.nu >= 0.0)) throw DivergenceRisk("moment order must be non-negative");
    const double u = q.n * q.x;
    CompensatedSum acc;
    const long first = static_cast<long>(q.n) * q.interval.a;
    const long last = static_cast<long>(q.n) * q.interval.b;
    for (long k = first; k <= last; ++k) {
        const double kd = static_cast<double>(k);
        acc += kernel.phi(q.s, u - kd) * moment_power(kd - u, q.nu);
    }
    return {acc.value(), 0.0, MomentMethod::DirectSum, 0.0};
}

double telescoped_m0(const DensityKernel& kernel, int s, int n, double x, Interval iv) {
    check_interval(n, iv);
    if (kernel.scale() != 1.0) throw HypothesisViolation("telescoping identity needs an undilated kernel");
    const auto& sig = kernel.sigmoid();
    const double left = n * (x - iv.a);
    const double right = n * (x - iv.b);
    return 0.5 * (sig.eval(s, left + 1.0) + sig.eval(s, left)) - 0.5 * (sig.eval(s, right) + sig.eval(s, right - 1.0));
}

MomentReport algebraic_moment(const DensityKernel& kernel, int s, int nu, double x, double eps, double radius_scale) {
    check_query(kernel, s, nu);
    if (!(eps > 0.0)) throw DivergenceRisk("eps must be positive");
    if (!std::isfinite(x)) throw NonFiniteInput("algebraic_moment: non-finite x");
    const double radius = certified_radius(kernel, s, nu, eps) * std::max(1.0, radius_scale);
    CompensatedSum acc;
    const auto lo = static_cast<long>(std::ceil(x - radius));
    const auto hi = static_cast<long>(std::floor(x + radius));
    for (long k = lo; k <= hi; ++k) {
        const double t = x - static_cast<double>(k);
        acc += kernel.phi(s, t) * ipow(-t, nu);
    }
    const double tail = kernel.shifted_tail_bound(s, nu, radius) + kRounding * acc.magnitude();
    return {acc.value(), tail, MomentMethod::DirectSum, radius};
}

MomentReport absolute_moment(const DensityKernel& kernel, int s, double nu, int grid_resolution, double eps,
                             double radius_scale) {
    check_query(kernel, s, nu);
    if (grid_resolution < 2) grid_resolution = 2;
    const double radius = certified_radius(kernel, s, nu, eps) * std::max(1.0, radius_scale);
    double magnitude = 0.0;
    double best = -1.0, best_u = 0.0;
    for (int i = 0; i < grid_resolution; ++i) {
        const double u = static_cast<double>(i) / grid_resolution;
        const double v = absolute_sum(kernel, s, nu, u, radius, &magnitude);
        if (v > best) {
            best = v;
            best_u = u;
        }
    }
    // Golden-section refinement over the two neighbouring cells.
    const double h = 1.0 / grid_resolution;
    double lo = best_u - h, hi = best_u + h;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
    double fc = absolute_sum(kernel, s, nu, c, radius, &magnitude);
    double fd = absolute_sum(kernel, s, nu, d, radius, &magnitude);
    for (int it = 0; it < 60; ++it) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - g * (hi - lo);
            fc = absolute_sum(kernel, s, nu, c, radius, &magnitude);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + g * (hi - lo);
            fd = absolute_sum(kernel, s, nu, d, radius, &magnitude);
        }
    }
    best = std::max({best, fc, fd});
    const double tail = kernel.shifted_tail_bound(s, nu, radius) + kRounding * magnitude;
    return {best, tail, MomentMethod::DirectSum, radius};
}

std::complex<double> fourier_transform(const DensityKernel& kernel, double v, double tol, int nu) {
    if (!(tol > 0.0)) throw QuadratureNonConvergence("tolerance must be positive");
    if (nu < 0) throw OrderOutOfRange("transform derivative order must be non-negative");
    if (!std::isfinite(v)) throw NonFiniteInput("fourier_transform: non-finite frequency");
    // phi_hat^(nu)(v) = integral of (-i t)^nu phi(t) exp(-i v t) dt
    const double window = integral_window(kernel, nu, tol / 2.0);
    const auto re = integrate([&](double t) { return kernel.phi(0, t) * ipow(t, nu) * std::cos(v * t); },
                              -window, window, tol / 4.0);
    const auto im = integrate([&](double t) { return kernel.phi(0, t) * ipow(t, nu) * std::sin(v * t); },
                              -window, window, tol / 4.0);
    return minus_i_pow(nu) * std::complex<double>(re.value, -im.value);
}

MomentReport fourier_moment(const DensityKernel& kernel, int nu, double tol, double strang_fix_tol) {
    if (nu < 0) throw OrderOutOfRange("moment order must be non-negative");
    const double sf_tol = strang_fix_tol > 0.0 ? strang_fix_tol : tol;
    const double quad_tol = std::min(tol, sf_tol) / 10.0;
    for (int k = 1; k <= 3; ++k) {
        for (int j = 0; j <= nu; ++j) {
            const double mag = std::abs(fourier_transform(kernel, 2.0 * std::numbers::pi * k, quad_tol, j));
            if (mag > sf_tol) {
                std::ostringstream msg;
                msg << "|phi_hat^(" << j << ")(2 pi " << k << ")| = " << mag << " exceeds " << sf_tol;
                throw StrangFixUnverified(msg.str());
            }
        }
    }
    // i^(-nu) = (-i)^nu
    const auto value = minus_i_pow(nu) * fourier_transform(kernel, 0.0, quad_tol, nu);
    if (std::abs(value.imag()) > tol) {
        std::ostringstream msg;
        msg << "imaginary residue " << value.imag() << " exceeds " << tol;
        throw ResidualImaginary(msg.str());
    }
    return {value.real(), tol, MomentMethod::PoissonFourier, 0.0};
}

bool StrangFixReport::fourier_passed() const {
    return std::all_of(fourier.begin(), fourier.end(), [](const FourierCheck& c) { return c.passed; });
}

bool StrangFixReport::constancy_passed() const {
    return std::all_of(constancy.begin(), constancy.end(), [](const ConstancyCheck& c) { return c.passed; });
}

StrangFixReport verify_strang_fix(const DensityKernel& kernel, int k_max, int nu_max, double tol, int x_grid) {
    if (k_max < 1) throw OrderOutOfRange("k_max must be at least 1");
    if (nu_max < 0 || nu_max > kernel.max_order()) throw OrderOutOfRange("nu_max must lie in [0, max_order]");
    constexpr double kInf = std::numeric_limits<double>::infinity();
    StrangFixReport report;
    report.tol = tol;
    for (int k = -k_max; k <= k_max; ++k) {
        if (k == 0) continue;
        for (int nu = 0; nu <= nu_max; ++nu) {
            double mag = kInf;
            try {
                mag = std::abs(fourier_transform(kernel, 2.0 * std::numbers::pi * k, tol / 10.0, nu));
            } catch (const QuadratureNonConvergence&) {
            }
            report.fourier.push_back({k, nu, mag, mag <= tol});
        }
    }
    const double eps = std::max(tol * 1e-6, 1e-15);
    for (int nu = 0; nu <= nu_max; ++nu) {
        double lo = kInf, hi = -kInf;
        try {
            for (int i = 0; i < x_grid; ++i) {
                const double v = algebraic_moment(kernel, 0, nu, static_cast<double>(i) / x_grid, eps).value;
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        } catch (const DivergenceRisk&) {
            lo = -kInf;
            hi = kInf;
        }
        const double spread = hi - lo;
        report.constancy.push_back({nu, lo, hi, spread, spread <= tol});
    }
    return report;
}

double bound_constant(double exponent, int j, double delta, double C) {
    if (!(delta > 0.0)) throw InvalidInterval("delta must be positive");
    const double p = (exponent - j + 1.0) / 2.0;
    if (!(p > 1.0)) {
        std::ostringstream msg;
        msg << "(exponent - j + 1)/2 = " << p << " <= 1: zeta diverges";
        throw ZetaDivergence(msg.str());
    }
    return C * std::pow(2.0 * delta, -p) * riemann_zeta(p).value;
}

}  // namespace sigmoidnn
