#include "sigmoidnn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "sigmoidnn/errors.hpp"
#include "sigmoidnn/numeric.hpp"

namespace sigmoidnn {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kCorpusOrder = 12;

double factorial(int k) {
    double r = 1.0;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

int modulus_grid(int n, Interval iv) { return std::max(4000, 16 * n * (iv.b - iv.a)); }

std::string describe(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

TestFunction::TestFunction(std::string id, int max_order, Evaluator eval)
    : id_(std::move(id)), max_order_(max_order), eval_(std::move(eval)) {}

double TestFunction::eval(int i, double x) const {
    if (i < 0 || i > max_order_) throw OrderOutOfRange(id_ + ": derivative order out of range");
    return eval_(i, x);
}

std::function<double(double)> TestFunction::derivative(int i) const {
    if (i < 0 || i > max_order_) throw OrderOutOfRange(id_ + ": derivative order out of range");
    return [f = *this, i](double x) { return f.eval_(i, x); };
}

double TestFunction::sup_norm(int i, Interval interval, int grid) const {
    const double step = static_cast<double>(interval.b - interval.a) / grid;
    double sup = 0.0, slope = 0.0;
    const bool have_next = i + 1 <= max_order_;
    for (int j = 0; j <= grid; ++j) {
        const double x = interval.a + step * j;
        sup = std::max(sup, std::abs(eval(i, x)));
        if (have_next) slope = std::max(slope, std::abs(eval(i + 1, x)));
    }
    return sup + 0.5 * step * slope;
}

std::vector<std::string> test_function_ids() { return {"constant", "identity", "square", "sin", "expsin"}; }

TestFunction make_test_function(const std::string& id) {
    if (id == "constant") return {id, kCorpusOrder, [](int i, double) { return i == 0 ? 1.0 : 0.0; }};
    if (id == "identity") {
        return {id, kCorpusOrder, [](int i, double x) { return i == 0 ? x : (i == 1 ? 1.0 : 0.0); }};
    }
    if (id == "square") {
        return {id, kCorpusOrder, [](int i, double x) {
                    switch (i) {
                        case 0: return x * x;
                        case 1: return 2.0 * x;
                        case 2: return 2.0;
                        default: return 0.0;
                    }
                }};
    }
    if (id == "sin") {
        return {id, kCorpusOrder, [](int i, double x) {
                    switch (i % 4) {
                        case 0: return std::sin(x);
                        case 1: return std::cos(x);
                        case 2: return -std::sin(x);
                        default: return -std::cos(x);
                    }
                }};
    }
    if (id == "expsin") {
        // exp(-x) sin 2x = Im exp((-1 + 2i) x)
        return {id, kCorpusOrder, [](int i, double x) {
                    const std::complex<double> lambda(-1.0, 2.0);
                    return (std::pow(lambda, i) * std::exp(lambda * x)).imag();
                }};
    }
    throw UnknownFunction("unknown test function '" + id + "'");
}

double modulus_of_continuity(const std::function<double(double)>& g, double h, Range range, int grid_resolution) {
    if (!(h > 0.0) || !(range.hi > range.lo)) return 0.0;
    const int n = std::max(grid_resolution, 2);
    const double step = (range.hi - range.lo) / n;
    std::vector<double> vals(static_cast<std::size_t>(n) + 1);
    auto node = [&](int i) { return i == n ? range.hi : range.lo + step * i; };
    for (int i = 0; i <= n; ++i) vals[static_cast<std::size_t>(i)] = g(node(i));
    const int window = static_cast<int>(std::floor(h / step + 1e-12));

    double best = 0.0, best_x = range.lo;
    auto consider = [&](double x, double t) {
        x = std::clamp(x, range.lo, range.hi);
        if (t < range.lo || t > range.hi) return;
        const double d = std::abs(g(x) - g(t));
        if (d > best) {
            best = d;
            best_x = x;
        }
    };
    for (int i = 0; i <= n; ++i) {
        const double xi = node(i);
        for (int j = i + 1; j <= std::min(n, i + window); ++j) {
            const double d = std::abs(vals[static_cast<std::size_t>(i)] - vals[static_cast<std::size_t>(j)]);
            if (d > best) {
                best = d;
                best_x = xi;
            }
        }
        consider(xi, xi + h);
        consider(xi, xi - h);
    }
    // refinement: exact offset h around the best grid point
    const double x0 = best_x;
    for (int k = -64; k <= 64; ++k) {
        const double x = x0 + step * k / 64.0;
        consider(x, x + h);
        consider(x, x - h);
    }
    return best;
}

double sup_error(const std::function<double(double)>& approx, const std::function<double(double)>& target,
                 double delta, Interval interval, int grid_resolution, std::uint64_t seed) {
    const double lo = interval.a + delta;
    const double hi = interval.b - delta;
    if (!(hi > lo)) throw InvalidInterval("I_delta is empty");
    const int n = std::max(grid_resolution, 2);
    const double step = (hi - lo) / (n - 1);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-0.5 * step, 0.5 * step);
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
        double x = j + 1 == n ? hi : lo + step * j;
        if (seed != 0 && j > 0 && j + 1 < n) x += jitter(rng);
        worst = std::max(worst, std::abs(approx(x) - target(x)));
    }
    return worst;
}

BoundTerms simultaneous_bound_terms(const DensityKernel& kernel, const TestFunction& f, int s, int n, double delta,
                                    Interval interval) {
    const int m = kernel.max_order();
    if (s < 0 || s > m || s > f.max_order()) throw HypothesisViolation("derivative order outside [0, m]");
    const double e = kernel.tail_exponent(s);
    if (s >= 1 && !(e > 2.0 * m)) {
        throw HypothesisViolation("beta = " + describe(e) + " does not exceed 2m = " + describe(2.0 * m));
    }
    if (!(e > s + 1.0)) throw HypothesisViolation("absolute moments of order s+1 diverge");
    if (!(interval.b - interval.a > 2.0 * delta) || !(delta > 0.0)) throw HypothesisViolation("I_delta is empty");
    const auto us = static_cast<std::size_t>(s);
    if (n * delta < kernel.decay().K[us]) {
        throw HypothesisViolation("n delta = " + describe(n * delta) + " below K_s = " + describe(kernel.decay().K[us]));
    }
    BoundTerms terms;
    const double c = kernel.decay().C[us];
    for (int i = 0; i <= s; ++i) {
        const double rbar = bound_constant(e, i, delta, c);
        terms.tail += 2.0 * f.sup_norm(i, interval) / factorial(i) * rbar * std::pow(n, s - i - (e - i + 1.0) / 2.0);
    }
    const double omega = modulus_of_continuity(f.derivative(s), 1.0 / n, Range{double(interval.a), double(interval.b)},
                                               modulus_grid(n, interval));
    const auto ms = absolute_moment(kernel, s, s);
    const auto ms1 = absolute_moment(kernel, s, s + 1);
    terms.modulus = omega / factorial(s) * (ms.value + ms.tail_bound + ms1.value + ms1.tail_bound);
    return terms;
}

double theoretical_bound_simultaneous(const DensityKernel& kernel, const TestFunction& f, int s, int n, double delta,
                                      Interval interval) {
    return simultaneous_bound_terms(kernel, f, s, n, delta, interval).total();
}

VoronovskajaHypotheses check_voronovskaja_hypotheses(const DensityKernel& kernel, int m, double tol) {
    if (m < 1) throw HypothesisViolation("Voronovskaja order m must be positive");
    if (!(kernel.decay().alpha > 2.0 * m)) {
        throw HypothesisViolation("alpha = " + describe(kernel.decay().alpha) + " does not exceed 2m");
    }
    if (m > kernel.max_order()) throw HypothesisViolation("m exceeds the kernel's derivative order");
    VoronovskajaHypotheses h;
    h.m = m;
    h.strang_fix = verify_strang_fix(kernel, 3, m, tol);
    if (!h.strang_fix.passed()) throw HypothesisViolation("Strang-Fix conditions fail at tolerance " + describe(tol));
    try {
        for (int j = 1; j < m; ++j) {
            const double a = fourier_moment(kernel, j, tol).value;
            h.lower_moments.push_back(a);
            if (std::abs(a) > tol) {
                throw HypothesisViolation("A_{0," + std::to_string(j) + "} = " + describe(a) + " is not zero");
            }
        }
        h.leading_moment = fourier_moment(kernel, m, tol).value;
    } catch (const StrangFixUnverified& e) {
        throw HypothesisViolation(e.what());
    }
    if (std::abs(h.leading_moment) <= tol) {
        throw HypothesisViolation("A_{0," + std::to_string(m) + "} vanishes");
    }
    return h;
}

BoundTerms voronovskaja_bound_terms(const DensityKernel& kernel, const TestFunction& f, int m, int n, double delta,
                                    Interval interval) {
    const double alpha = kernel.decay().alpha;
    if (!(alpha > 2.0 * m)) throw HypothesisViolation("alpha does not exceed 2m");
    if (m > f.max_order()) throw HypothesisViolation("test function lacks derivative of order m");
    if (!(delta > 0.0) || !(interval.b - interval.a > 2.0 * delta)) throw HypothesisViolation("I_delta is empty");
    if (n * delta < kernel.decay().K[0]) throw HypothesisViolation("n delta below K_0");
    BoundTerms terms;
    const double c = kernel.decay().C[0];
    for (int i = 0; i <= m; ++i) {
        const double rbar = bound_constant(alpha, i, delta, c);
        terms.tail += 2.0 * f.sup_norm(i, interval) / factorial(i) * rbar * std::pow(n, m - i - (alpha - i + 1.0) / 2.0);
    }
    const double omega = modulus_of_continuity(f.derivative(m), 1.0 / n, Range{double(interval.a), double(interval.b)},
                                               modulus_grid(n, interval));
    const auto mm = absolute_moment(kernel, 0, m);
    const auto mm1 = absolute_moment(kernel, 0, m + 1);
    terms.modulus = omega / factorial(m) * (mm1.value + mm1.tail_bound + mm.value + mm.tail_bound);
    return terms;
}

double theoretical_bound_voronovskaja(const DensityKernel& kernel, const TestFunction& f, int m, int n, double delta,
                                      Interval interval) {
    check_voronovskaja_hypotheses(kernel, m);
    return voronovskaja_bound_terms(kernel, f, m, n, delta, interval).total();
}

OrderFit empirical_order(const std::vector<int>& ns, const std::vector<double>& errors) {
    OrderFit fit;
    const std::size_t first = ns.size() >= 3 ? 1 : 0;
    std::vector<double> lx, ly;
    for (std::size_t i = first; i < ns.size() && i < errors.size(); ++i) {
        if (!(errors[i] > 0.0)) {
            fit.order = kNaN;
            fit.residual = kNaN;
            fit.points = 0;
            return fit;
        }
        lx.push_back(std::log(static_cast<double>(ns[i])));
        ly.push_back(std::log(errors[i]));
    }
    fit.points = static_cast<int>(lx.size());
    if (lx.size() < 2) {
        fit.order = kNaN;
        fit.residual = kNaN;
        return fit;
    }
    const double k = static_cast<double>(lx.size());
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / k;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / k;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    const double slope = sxy / sxx;
    double rss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (my + slope * (lx[i] - mx));
        rss += r * r;
    }
    fit.order = -slope;
    fit.residual = std::sqrt(rss / k);
    return fit;
}

namespace {

void check_n_list(const std::vector<int>& n_list) {
    if (n_list.size() < 2) throw InvalidArgument("n_list needs at least two entries");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (n_list[i] < 1 || (i > 0 && n_list[i] <= n_list[i - 1])) {
            throw InvalidArgument("n_list must be strictly increasing positive integers");
        }
    }
}

}  // namespace

ConvergenceReport convergence_study(const DensityKernel& kernel, const TestFunction& f, const std::vector<int>& s_list,
                                    const std::vector<int>& n_list, const StudyGrid& grid) {
    check_n_list(n_list);
    for (int s : s_list) {
        if (s < 0 || s > kernel.max_order() || s > f.max_order()) throw OrderOutOfRange("s outside [0, m]");
    }
    ConvergenceReport report{kernel.label(), f.id(), {}, {}};
    std::vector<GridSample> samples;
    samples.reserve(n_list.size());
    for (int n : n_list) samples.push_back(sample_function(f.derivative(0), n, grid.interval));

    for (int s : s_list) {
        ConvergenceSeries series{s, {}, s == 0 ? "alpha-tail baseline" : "beta > 2m", true, true};
        std::vector<double> errors;
        for (std::size_t i = 0; i < n_list.size(); ++i) {
            const auto& sample = samples[i];
            const double err = sup_error([&](double x) { return nn_operator_derivative(sample, kernel, s, x); },
                                         f.derivative(s), grid.delta, grid.interval, grid.grid_resolution, grid.seed);
            double bound = kNaN;
            try {
                bound = theoretical_bound_simultaneous(kernel, f, s, n_list[i], grid.delta, grid.interval);
            } catch (const HypothesisViolation& e) {
                series.regime = std::string("no bound: ") + e.what();
            }
            if (!errors.empty() && !(err < errors.back())) series.strictly_decreasing = false;
            if (std::isfinite(bound) && !(err <= bound)) series.bound_dominates = false;
            errors.push_back(err);
            report.rows.push_back({s, n_list[i], err, bound});
        }
        series.fit = empirical_order(n_list, errors);
        report.series.push_back(series);
    }
    return report;
}

VoronovskajaReport voronovskaja_study(const DensityKernel& kernel, const TestFunction& f, int m,
                                      const std::vector<int>& n_list, const std::vector<double>& x_list,
                                      const StudyGrid& grid, double tol) {
    check_n_list(n_list);
    for (double x : x_list) {
        if (!in_guarantee_region(grid.interval, grid.delta, x)) {
            throw InvalidArgument("x = " + describe(x) + " lies outside I_delta");
        }
    }
    const auto hyp = check_voronovskaja_hypotheses(kernel, m, tol);
    VoronovskajaReport report{kernel.label(), f.id(), m, hyp.leading_moment, {}};
    const double mfact = factorial(m);
    for (int n : n_list) {
        const auto sample = sample_function(f.derivative(0), n, grid.interval);
        double bound = kNaN;
        try {
            bound = voronovskaja_bound_terms(kernel, f, m, n, grid.delta, grid.interval).total();
        } catch (const HypothesisViolation&) {
        }
        const double scale = ipow(static_cast<double>(n), m);
        for (double x : x_list) {
            const double scaled = scale * (nn_operator_simplified(sample, kernel, x) - f.eval(0, x));
            const double predicted = f.eval(m, x) * hyp.leading_moment / mfact;
            report.rows.push_back({n, x, scaled, predicted, std::abs(scaled - predicted), bound});
        }
    }
    return report;
}

}  // namespace sigmoidnn
