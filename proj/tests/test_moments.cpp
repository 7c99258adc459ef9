#include <gtest/gtest.h>

#include <boost/math/special_functions/zeta.hpp>
#include <algorithm>
#include <cmath>

#include "sigmoidnn/errors.hpp"
#include "sigmoidnn/moments.hpp"
#include "sigmoidnn/numeric.hpp"

using namespace sigmoidnn;

namespace {
const DensityKernel& logistic() {
    static const DensityKernel kernel(make_sigmoid("logistic", 3));
    return kernel;
}
constexpr double kSecondMoment = 3.6232014674;  // 1/3 + pi^2/3
}  // namespace

TEST(Numeric, ZetaMatchesReferenceValues) {
    EXPECT_NEAR(riemann_zeta(3.0).value, 1.2020569031595943, 1e-11);
    EXPECT_NEAR(riemann_zeta(2.5).value, 1.3414872572509172, 1e-11);
    EXPECT_NEAR(riemann_zeta(1.5).value, 2.6123753486854883, 1e-11);
    EXPECT_NEAR(riemann_zeta(3.5).value, 1.12673386731705664642, 1e-11);
    for (double p : {1.1, 2.0, 4.0, 7.5}) {
        const auto z = riemann_zeta(p, 1e-10);
        const double ref = boost::math::zeta(p);
        EXPECT_GE(z.value, ref - 1e-15) << p;
        EXPECT_LE(z.value - ref, z.abs_error + 1e-15) << p;
    }
    EXPECT_THROW(riemann_zeta(1.0), ZetaDivergence);
    EXPECT_THROW(riemann_zeta(0.5), ZetaDivergence);
}

TEST(Numeric, CompensatedSumRecoversCancellation) {
    CompensatedSum s;
    s += 1e16;
    for (int i = 0; i < 1000; ++i) s += 1.0;
    s += -1e16;
    EXPECT_EQ(s.value(), 1000.0);
}

TEST(Numeric, IntegrateGaussian) {
    const auto r = integrate([](double t) { return std::exp(-t * t); }, -10.0, 10.0, 1e-12);
    EXPECT_NEAR(r.value, std::sqrt(M_PI), 1e-12);
    EXPECT_LE(r.error, 1e-12);
}

TEST(Moments, BoundConstantExample) {
    // C (2 delta)^(-p) zeta(p), p = (6 + 1) / 2 with C = 1 and delta = 0.25
    EXPECT_NEAR(bound_constant(6.0, 0, 0.25, 1.0), 12.7475385307589511, 1e-9);
    EXPECT_THROW(bound_constant(2.0, 1, 0.25, 1.0), ZetaDivergence);
}

TEST(Moments, TruncatedMomentThreeTermSum) {
    // phi(1) + phi(0) + phi(-1)
    MomentQuery q{0, 0.0, 1, 1.0, Interval{0, 2}};
    const auto r = truncated_moment(logistic(), q);
    EXPECT_NEAR(r.value, 0.611855656607887323, 1e-15);
    EXPECT_EQ(r.tail_bound, 0.0);
    EXPECT_EQ(r.method, MomentMethod::DirectSum);
}

TEST(Moments, TelescopingMatchesDirectSum) {
    const Interval I{0, 3};
    for (int s = 0; s <= 2; ++s) {
        for (int n : {10, 100}) {
            for (double x : {1.1, 1.5, 2.9}) {
                const double direct = truncated_moment(logistic(), {s, 0.0, n, x, I}).value;
                EXPECT_NEAR(telescoped_m0(logistic(), s, n, x, I), direct, 1e-12) << s << " " << n << " " << x;
            }
        }
    }
    const DensityKernel dilated(make_sigmoid("logistic", 2), 2.0);
    EXPECT_THROW(telescoped_m0(dilated, 0, 10, 1.0, I), HypothesisViolation);
}

TEST(Moments, SecondMomentOfLogistic) {
    for (int i = 0; i < 20; ++i) {
        const double x = i / 20.0;
        const auto r = algebraic_moment(logistic(), 0, 2, x, 1e-13);
        EXPECT_NEAR(r.value, kSecondMoment, 1e-3) << x;
        EXPECT_GT(r.radius, 0.0);
    }
    const auto f = fourier_moment(logistic(), 2, 1e-8, 1e-6);
    EXPECT_EQ(f.method, MomentMethod::PoissonFourier);
    EXPECT_NEAR(f.value, kSecondMoment, 1e-6);
    EXPECT_NEAR(f.value, algebraic_moment(logistic(), 0, 2, 0.0, 1e-13).value, 1e-4);
}

TEST(Moments, OddMomentsVanishAtHalfIntegers) {
    // phi is even, so A_1(phi, 0) and A_1(phi, 1/2) vanish by symmetry.
    EXPECT_NEAR(algebraic_moment(logistic(), 0, 1, 0.0, 1e-14).value, 0.0, 1e-13);
    EXPECT_NEAR(algebraic_moment(logistic(), 0, 1, 0.5, 1e-14).value, 0.0, 1e-13);
}

TEST(Moments, DivergentOrderIsRejected) {
    const auto& k = logistic();
    EXPECT_THROW(algebraic_moment(k, 0, static_cast<int>(k.moment_order_limit(0)) + 1, 0.2, 1e-10), DivergenceRisk);
}

TEST(Moments, TailCertificationSurvivesRadiusDoubling) {
    const auto& k = logistic();
    for (int s = 0; s <= 3; ++s) {
        for (int nu = 0; nu <= 3; ++nu) {
            for (double x : {0.0, 0.3, 0.77}) {
                const auto base = algebraic_moment(k, s, nu, x, 1e-12);
                const auto wide = algebraic_moment(k, s, nu, x, 1e-12, 2.0);
                EXPECT_LT(std::abs(base.value - wide.value), base.tail_bound) << s << " " << nu << " " << x;
            }
        }
        const auto m = absolute_moment(k, s, 2.0, 256, 1e-12);
        const auto mw = absolute_moment(k, s, 2.0, 256, 1e-12, 2.0);
        EXPECT_LT(std::abs(m.value - mw.value), m.tail_bound);
    }
}

TEST(Moments, TruncatedMomentsApproachTheFullMomentInTheInterior) {
    // Far from the endpoints the missing terms are below the tail of phi.
    const auto full = algebraic_moment(logistic(), 0, 1, 0.5, 1e-14).value;
    for (int n : {10, 20, 40, 80}) {
        const double x = 1.5 + 0.5 / n;
        const double trunc = truncated_moment(logistic(), {0, 1.0, n, x, Interval{0, 3}}).value;
        EXPECT_NEAR(trunc, full, std::max(std::exp(-1.2 * n), 1e-14)) << n;
    }
}

TEST(Moments, TruncatedMomentTailShrinksWithScale) {
    // |m^n_nu - A_nu| is bounded by the fitted constant for the shrunken interval.
    const auto& k = logistic();
    const double delta = 0.25;
    for (int nu = 0; nu <= 2; ++nu) {
        double prev = INFINITY;
        for (int n : {10, 20, 40, 80}) {
            const double x = 1.0 + 0.37 / n;
            const double trunc = truncated_moment(k, {0, static_cast<double>(nu), n, x, Interval{0, 3}}).value;
            const double full = algebraic_moment(k, 0, nu, n * x - std::floor(n * x), 1e-15).value;
            const double gap = std::abs(trunc - full);
            const double p = (k.tail_exponent(0) - nu + 1.0) / 2.0;
            const double bound = bound_constant(k.tail_exponent(0), nu, delta, k.decay().C[0]) * std::pow(n, -p);
            EXPECT_LE(gap, bound + 1e-12) << nu << " " << n;
            EXPECT_LE(gap, prev + 1e-15);
            prev = gap;
        }
    }
}

TEST(Moments, AbsoluteMomentOfDerivativeDecays) {
    const auto& k = logistic();
    const auto m0 = absolute_moment(k, 0, 0.0);
    EXPECT_NEAR(m0.value, 1.0, 1e-9);
    for (int s = 1; s <= 3; ++s) {
        const auto m = absolute_moment(k, s, 1.0);
        EXPECT_TRUE(std::isfinite(m.value));
        EXPECT_GT(m.value, 0.0);
    }
}

TEST(Moments, FourierTransformClosedForm) {
    // phi_hat(v) = sinc(v) * (pi v) / sinh(pi v)
    for (double v : {0.5, 1.0, 3.0}) {
        const double expected = std::sin(v) / v * (M_PI * v) / std::sinh(M_PI * v);
        const auto got = fourier_transform(logistic(), v, 1e-10);
        EXPECT_NEAR(got.real(), expected, 1e-9) << v;
        EXPECT_NEAR(got.imag(), 0.0, 1e-9) << v;
    }
}

TEST(Moments, StrangFixFourierSideHoldsForLogistic) {
    const auto report = verify_strang_fix(logistic(), 3, 2, 1e-6);
    EXPECT_TRUE(report.fourier_passed());
    EXPECT_TRUE(report.passed());
    for (const auto& c : report.constancy) EXPECT_LE(c.spread, 1e-6) << c.nu;
}

TEST(Moments, StrangFixNegativeControl) {
    const DensityKernel narrow(make_sigmoid("logistic", 2), 2.0);
    const auto report = verify_strang_fix(narrow, 3, 2, 1e-6);
    EXPECT_FALSE(report.fourier_passed());
    EXPECT_FALSE(report.constancy_passed());
    EXPECT_NO_THROW(fourier_moment(narrow, 0, 1e-8, 1e-6));
    EXPECT_THROW(fourier_moment(narrow, 1, 1e-8, 1e-6), StrangFixUnverified);

    const DensityKernel wide(make_sigmoid("logistic", 2), 0.5);
    EXPECT_TRUE(verify_strang_fix(wide, 3, 1, 1e-6).fourier_passed());
}

TEST(Moments, LowerOrderDerivativeMomentsVanish) {
    const auto& k = logistic();
    EXPECT_NEAR(algebraic_moment(k, 1, 0, 0.3, 1e-14).value, 0.0, 1e-12);
    EXPECT_NEAR(algebraic_moment(k, 1, 1, 0.3, 1e-14).value, 1.0, 1e-6);
    EXPECT_NEAR(algebraic_moment(k, 2, 0, 0.3, 1e-14).value, 0.0, 1e-12);
    EXPECT_NEAR(algebraic_moment(k, 3, 0, 0.3, 1e-14).value, 0.0, 1e-12);
}
