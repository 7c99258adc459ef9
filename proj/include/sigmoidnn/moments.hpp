#pragma once

#include <complex>
#include <string>
#include <vector>

#include "sigmoidnn/density.hpp"

namespace sigmoidnn {

/// Integer interval [a, b] with a < b.
struct Interval {
    int a = 0;
    int b = 1;
};

enum class MomentMethod { DirectSum, PoissonFourier };

std::string to_string(MomentMethod m);

struct MomentQuery {
    int s = 0;          // derivative order of the kernel
    double nu = 0.0;    // moment order
    int n = 1;          // scale
    double x = 0.0;     // evaluation point; the moment is taken at u = n x
    Interval interval;
};

struct MomentReport {
    double value = 0.0;
    /// Certified truncation error plus a rounding allowance; 0 for finite sums.
    double tail_bound = 0.0;
    MomentMethod method = MomentMethod::DirectSum;
    /// Truncation radius used (0 for finite sums).
    double radius = 0.0;
};

/// m^n_nu(phi^(s), n x) = sum_{k=na}^{nb} phi^(s)(nx - k) (k - nx)^nu. Exact finite sum.
MomentReport truncated_moment(const DensityKernel& kernel, const MomentQuery& q);

/// Closed form of m^n_0(phi^(s), n x) obtained by telescoping:
/// [s(n(x-a)+1) + s(n(x-a))]/2 - [s(n(x-b)) + s(n(x-b)-1)]/2 with s = sigma^(s).
/// Requires an undilated kernel.
double telescoped_m0(const DensityKernel& kernel, int s, int n, double x, Interval interval);

/// A_nu(phi^(s), x) = sum over all k of phi^(s)(x - k) (k - x)^nu with certified
/// tail <= eps. radius_scale multiplies the truncation radius chosen for eps.
/// Throws DivergenceRisk when nu reaches the tail exponent.
MomentReport algebraic_moment(const DensityKernel& kernel, int s, int nu, double x, double eps,
                              double radius_scale = 1.0);

/// M_nu(phi^(s)) = sup_u sum_k |phi^(s)(u - k)| |u - k|^nu, taken over a uniform
/// grid of [0, 1) followed by a golden-section refinement around the grid maximum.
MomentReport absolute_moment(const DensityKernel& kernel, int s, double nu, int grid_resolution = 1024,
                             double eps = 1e-13, double radius_scale = 1.0);

/// d^nu/dv^nu of phi_hat(v) = integral of phi(t) exp(-i v t) dt, absolute error <= tol.
std::complex<double> fourier_transform(const DensityKernel& kernel, double v, double tol, int nu = 0);

/// i^(-nu) phi_hat^(nu)(0), the Poisson-summation value of A_nu. The Fourier
/// side of the Strang-Fix conditions (k = 1..3, orders 0..nu) must hold at
/// strang_fix_tol (defaults to tol). Throws StrangFixUnverified or
/// ResidualImaginary.
MomentReport fourier_moment(const DensityKernel& kernel, int nu, double tol, double strang_fix_tol = -1.0);

struct FourierCheck {
    int k;
    int nu;
    double magnitude;  // |phi_hat^(nu)(2 pi k)|
    bool passed;
};

struct ConstancyCheck {
    int nu;
    double min;
    double max;
    double spread;
    bool passed;
};

struct StrangFixReport {
    double tol = 0.0;
    std::vector<FourierCheck> fourier;
    std::vector<ConstancyCheck> constancy;

    bool fourier_passed() const;
    bool constancy_passed() const;
    bool passed() const { return fourier_passed() && constancy_passed(); }
};

/// Two independent checks of the Strang-Fix conditions: vanishing of
/// phi_hat^(nu) at 2 pi k for 1 <= |k| <= k_max, and constancy of A_nu(x)
/// over an x grid of [0, 1). Failures are report entries.
StrangFixReport verify_strang_fix(const DensityKernel& kernel, int k_max, int nu_max, double tol,
                                  int x_grid = 64);

/// C (2 delta)^(-p) zeta(p) with p = (exponent - j + 1) / 2; the tail constant
/// of the truncated-moment expansion. Throws ZetaDivergence when p <= 1.
double bound_constant(double exponent, int j, double delta, double C);

}  // namespace sigmoidnn
