#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sigmoidnn/density.hpp"
#include "sigmoidnn/moments.hpp"
#include "sigmoidnn/operators.hpp"

namespace sigmoidnn {

/// A target function with closed-form derivatives.
class TestFunction {
public:
    using Evaluator = std::function<double(int, double)>;

    TestFunction(std::string id, int max_order, Evaluator eval);

    const std::string& id() const { return id_; }
    int max_order() const { return max_order_; }
    /// f^(i)(x); i <= max_order.
    double eval(int i, double x) const;
    std::function<double(double)> derivative(int i) const;

    /// ||f^(i)||_inf on [a, b]: grid sup plus a Lipschitz allowance from f^(i+1).
    double sup_norm(int i, Interval interval, int grid = 20000) const;

private:
    std::string id_;
    int max_order_;
    Evaluator eval_;
};

/// Corpus ids: constant, identity, square, sin, expsin (exp(-x) sin 2x).
std::vector<std::string> test_function_ids();
/// Throws UnknownFunction.
TestFunction make_test_function(const std::string& id);

struct Range {
    double lo;
    double hi;
};

/// omega(g, h) on [lo, hi]: sup over grid pairs |x - t| <= h of |g(x) - g(t)|,
/// refined near the maximizing pair. A lower estimate.
double modulus_of_continuity(const std::function<double(double)>& g, double h, Range range,
                             int grid_resolution = 4000);

/// Grid sup of |approx - target| over I_delta. A non-zero seed jitters the
/// interior grid points reproducibly.
double sup_error(const std::function<double(double)>& approx, const std::function<double(double)>& target,
                 double delta, Interval interval, int grid_resolution = 241, std::uint64_t seed = 0);

struct BoundTerms {
    double tail = 0.0;      // the zeta-constant terms
    double modulus = 0.0;   // the omega(f^(s), 1/n) term
    double total() const { return tail + modulus; }
};

/// Quantitative estimate for |d^s F~_n f - f^(s)| on I_delta.
/// s >= 1 requires beta > 2m; s = 0 uses the alpha tail of phi.
/// Throws HypothesisViolation when a precondition fails (including n delta < K_s).
BoundTerms simultaneous_bound_terms(const DensityKernel& kernel, const TestFunction& f, int s, int n, double delta,
                                    Interval interval);
double theoretical_bound_simultaneous(const DensityKernel& kernel, const TestFunction& f, int s, int n, double delta,
                                      Interval interval);

/// Verified moment data required by the Voronovskaja formula of order m.
struct VoronovskajaHypotheses {
    int m = 2;
    double leading_moment = 0.0;         // A_{0,m}
    std::vector<double> lower_moments;   // A_{0,j}, j = 1..m-1
    StrangFixReport strang_fix;
};

/// Checks alpha > 2m, the Strang-Fix conditions up to order m, A_{0,j} = 0
/// for j < m and A_{0,m} != 0, all at tolerance tol. Throws HypothesisViolation.
VoronovskajaHypotheses check_voronovskaja_hypotheses(const DensityKernel& kernel, int m, double tol = 1e-6);

/// Bound on |n^m (F~_n f - f)(x) - f^(m)(x) A_{0,m} / m!| on I_delta.
BoundTerms voronovskaja_bound_terms(const DensityKernel& kernel, const TestFunction& f, int m, int n, double delta,
                                    Interval interval);
double theoretical_bound_voronovskaja(const DensityKernel& kernel, const TestFunction& f, int m, int n, double delta,
                                      Interval interval);

struct OrderFit {
    double order = 0.0;     // negated slope of log(error) against log(n)
    double residual = 0.0;  // RMS residual of the fit
    int points = 0;
};

/// Least-squares order over (log n, log error), dropping the first entry when
/// at least three are given. NaN order when any error is non-positive.
OrderFit empirical_order(const std::vector<int>& ns, const std::vector<double>& errors);

struct ConvergenceRow {
    int s;
    int n;
    double sup_error;
    double bound;  // NaN when the bound's hypotheses fail
};

struct ConvergenceSeries {
    int s;
    OrderFit fit;
    std::string regime;  // which hypotheses the bound column relies on
    bool strictly_decreasing;
    bool bound_dominates;  // vacuously true when no bound applies
};

struct ConvergenceReport {
    std::string activation;
    std::string function;
    std::vector<ConvergenceRow> rows;  // ordered by (s, n)
    std::vector<ConvergenceSeries> series;
};

struct StudyGrid {
    Interval interval{0, 3};
    double delta = 0.25;
    int grid_resolution = 241;
    std::uint64_t seed = 0;
};

/// Sup errors of d^s F~_n f against f^(s) on I_delta for every (s, n).
ConvergenceReport convergence_study(const DensityKernel& kernel, const TestFunction& f, const std::vector<int>& s_list,
                                    const std::vector<int>& n_list, const StudyGrid& grid = {});

struct VoronovskajaRow {
    int n;
    double x;
    double scaled_residual;  // n^m (F~_n f - f)(x)
    double predicted_limit;  // f^(m)(x) A_{0,m} / m!
    double abs_deviation;
    double bound;
};

struct VoronovskajaReport {
    std::string activation;
    std::string function;
    int m = 2;
    double leading_moment = 0.0;
    std::vector<VoronovskajaRow> rows;  // ordered by (n, x)
};

VoronovskajaReport voronovskaja_study(const DensityKernel& kernel, const TestFunction& f, int m,
                                      const std::vector<int>& n_list, const std::vector<double>& x_list,
                                      const StudyGrid& grid = {}, double tol = 1e-6);

}  // namespace sigmoidnn
