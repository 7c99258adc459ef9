#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <thread>

#include "sigmoidnn/density.hpp"
#include "sigmoidnn/errors.hpp"

using namespace sigmoidnn;

namespace {
const DensityKernel& logistic() {
    static const DensityKernel kernel(make_sigmoid("logistic", 3));
    return kernel;
}
}  // namespace

TEST(Density, ClosedFormValues) {
    const auto& k = logistic();
    // (sigma(1) - sigma(-1)) / 2 and (sigma(2) - sigma(0)) / 2
    EXPECT_NEAR(k.phi(0, 0.0), 0.231058578630004879, 1e-15);
    EXPECT_NEAR(k.phi(0, 1.0), 0.190398538988941222, 1e-15);
    EXPECT_GT(k.phi(0, 1.0), 0.0);
    EXPECT_EQ(k.phi(1, 0.0), 0.0);
    EXPECT_THROW(k.phi(4, 0.0), OrderOutOfRange);
}

TEST(Density, EvenNonNegativeAndUnimodal) {
    const auto& k = logistic();
    double prev = k.phi(0, 0.0);
    for (int i = 1; i <= 400; ++i) {
        const double x = 0.1 * i;
        const double v = k.phi(0, x);
        EXPECT_NEAR(v, k.phi(0, -x), 1e-16);
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, prev);
        prev = v;
    }
}

TEST(Density, DerivativesMatchCentralDifferences) {
    const auto& k = logistic();
    const double h = 1e-4;
    for (int s = 1; s <= k.max_order(); ++s) {
        for (double x = -8.0; x <= 8.0; x += 0.37) {
            const double fd = (k.phi(s - 1, x + h) - k.phi(s - 1, x - h)) / (2 * h);
            const double exact = k.phi(s, x);
            EXPECT_LE(std::abs(fd - exact) / std::max(std::abs(exact), 1e-3), 1e-6) << "s=" << s << " x=" << x;
        }
    }
}

TEST(Density, SupportRadiusForLogistic) {
    const auto& k = logistic();
    const double r12 = k.effective_support_radius(0, 1e-12);
    EXPECT_LE(r12, 35.0);
    EXPECT_LE(k.effective_support_radius(0, 1e-6), r12);
    for (double x = r12; x < r12 + 20.0; x += 0.5) EXPECT_LE(k.phi(0, x), 1e-12);
    for (int s = 1; s <= 3; ++s) {
        const double r = k.effective_support_radius(s, 1e-10);
        for (double x = r; x < r + 10.0; x += 0.25) EXPECT_LE(std::abs(k.phi(s, x)), 1e-10);
    }
}

TEST(Density, SupportRadiusMonotoneInEps) {
    const auto& k = logistic();
    for (int s = 0; s <= 3; ++s) {
        double prev = 0.0;
        for (double eps = 1e-2; eps >= 1e-16; eps /= 10.0) {
            const double r = k.effective_support_radius(s, eps);
            EXPECT_GE(r, prev);
            prev = r;
        }
    }
}

TEST(Density, PolynomialRadiusInvertsFittedBound) {
    // Without an exponential envelope the radius comes from the fitted (K, C).
    const auto sig = make_sigmoid("logistic", 2);
    const Sigmoidal bare("logistic-poly", 2, [sig](int s, double x) { return sig.eval(s, x); }, sig.decay());
    const DensityKernel k(bare);
    const auto& dc = k.decay();
    const double eps = 1e-9;
    const double expected = std::max(dc.K[1], std::pow(dc.C[1] / eps, 1.0 / (dc.beta + 1.0)));
    EXPECT_DOUBLE_EQ(k.effective_support_radius(1, eps), expected);
}

TEST(Density, PartitionOfUnity) {
    const auto& k = logistic();
    const double radius = k.effective_support_radius(0, 1e-14);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double x = dist(rng);
        double sum = 0.0;
        for (long j = static_cast<long>(std::ceil(x - radius)); j <= static_cast<long>(std::floor(x + radius)); ++j) {
            sum += k.phi(0, x - j);
        }
        EXPECT_LE(std::abs(sum - 1.0), 1e-10) << x;
    }
}

TEST(Density, DilatedKernelScalesDerivatives) {
    const DensityKernel base(make_sigmoid("logistic", 2));
    const DensityKernel wide(make_sigmoid("logistic", 2), 0.5);
    EXPECT_EQ(wide.label(), "logistic@x0.5");
    for (double x : {-3.0, 0.2, 1.7}) {
        EXPECT_NEAR(wide.phi(0, x), 0.5 * base.phi(0, 0.5 * x), 1e-16);
        EXPECT_NEAR(wide.phi(2, x), 0.125 * base.phi(2, 0.5 * x), 1e-16);
    }
    const double r = wide.effective_support_radius(0, 1e-12);
    for (double x = r; x < r + 20.0; x += 0.5) EXPECT_LE(wide.phi(0, x), 1e-12);
}

TEST(Density, RadiusCacheIsThreadSafe) {
    const DensityKernel k(make_sigmoid("logistic", 3));
    std::vector<std::vector<double>> seen(8);
    std::vector<std::thread> pool;
    for (int t = 0; t < 8; ++t) {
        pool.emplace_back([&, t] {
            for (int i = 0; i < 200; ++i) seen[t].push_back(k.effective_support_radius(i % 4, std::pow(10.0, -(i % 15))));
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& v : seen) EXPECT_EQ(v, seen.front());
}
