#include "sigmoidnn/sigmoids.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "sigmoidnn/errors.hpp"

namespace sigmoidnn {

Sigmoidal::Sigmoidal(std::string id, int max_order, Evaluator evaluator, DecayConstants decay,
                     std::optional<ExponentialTail> exp_tail)
    : id_(std::move(id)),
      max_order_(max_order),
      evaluator_(std::move(evaluator)),
      decay_(std::move(decay)),
      exp_tail_(std::move(exp_tail)) {
    if (max_order_ < 0) throw OrderOutOfRange("max_order must be non-negative");
}

double Sigmoidal::eval(int s, double x) const {
    if (s < 0 || s > max_order_) {
        std::ostringstream msg;
        msg << id_ << ": derivative order " << s << " outside [0, " << max_order_ << "]";
        throw OrderOutOfRange(msg.str());
    }
    if (!std::isfinite(x)) throw NonFiniteInput(id_ + ": non-finite argument");
    return evaluator_(s, x);
}

Sigmoidal Sigmoidal::with_decay(DecayConstants decay) const {
    return Sigmoidal(id_, max_order_, evaluator_, std::move(decay), exp_tail_);
}

namespace {

// sigma(x) = 1 / (1 + exp(-rate x)). With u = sigma(x) we have
// du/dx = rate u (1 - u), so every derivative is a polynomial in u.
struct LogisticFamily {
    double rate;
    std::vector<std::vector<double>> poly;  // poly[s][i]: coefficient of u^i in sigma^(s)

    LogisticFamily(double rate_, int max_order) : rate(rate_) {
        poly.push_back({0.0, 1.0});
        for (int s = 1; s <= max_order; ++s) {
            const auto& p = poly.back();
            std::vector<double> next(p.size() + 1, 0.0);
            for (std::size_t i = 1; i < p.size(); ++i) {
                const double d = rate * static_cast<double>(i) * p[i];  // coefficient of u^(i-1) in P'
                next[i] += d;
                next[i + 1] -= d;
            }
            poly.push_back(std::move(next));
        }
    }

    static double horner(const std::vector<double>& p, double u) {
        double acc = 0.0;
        for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * u + *it;
        return acc;
    }

    double operator()(int s, double x) const {
        if (s == 0) return 1.0 / (1.0 + std::exp(-rate * x));
        // sigma^(s)(-x) = (-1)^(s+1) sigma^(s)(x); evaluate on the left tail where u is small
        // and carries full relative precision.
        const double u = 1.0 / (1.0 + std::exp(rate * std::abs(x)));
        const double v = horner(poly[static_cast<std::size_t>(s)], u);
        return (x > 0.0 && s % 2 == 0) ? -v : v;
    }

    ExponentialTail envelope() const {
        ExponentialTail tail{rate, {1.0}};
        for (std::size_t s = 1; s < poly.size(); ++s) {
            double l = 0.0;
            for (double c : poly[s]) l += std::abs(c);
            tail.L.push_back(l);
        }
        return tail;
    }
};

Sigmoidal make_logistic_family(std::string id, double rate, int max_order, double beta, double alpha,
                               const ScanRange& scan) {
    auto family = std::make_shared<const LogisticFamily>(rate, max_order);
    Sigmoidal::Evaluator eval = [family](int s, double x) { return (*family)(s, x); };
    Sigmoidal raw(std::move(id), max_order, eval, DecayConstants{alpha, beta, {}, {}}, family->envelope());
    return raw.with_decay(fit_decay_constants(raw, beta, alpha, scan));
}

}  // namespace

std::vector<std::string> catalog_ids() { return {"logistic", "tanh"}; }

Sigmoidal make_sigmoid(std::string_view id, int max_order, std::optional<double> beta, std::optional<double> alpha,
                       const ScanRange& scan) {
    if (max_order < 2) throw OrderOutOfRange("max_order must be at least 2");
    const double default_exp = 2.0 * max_order + 2.0;
    const double b = beta.value_or(default_exp);
    const double a = alpha.value_or(default_exp);
    // tanh entry: (1 + tanh x) / 2 = 1 / (1 + exp(-2x))
    if (id == "logistic") return make_logistic_family("logistic", 1.0, max_order, b, a, scan);
    if (id == "tanh") return make_logistic_family("tanh", 2.0, max_order, b, a, scan);
    throw UnknownActivation("unknown activation '" + std::string(id) + "'");
}

TailFit fit_tail_constant(const std::function<double(double)>& g, double exponent, const ScanRange& scan,
                          Side side) {
    if (!(scan.k_min > 0.0) || !(scan.x_max > scan.k_min) || !(scan.step > 0.0)) {
        throw FitFailure("scan range must satisfy 0 < k_min < x_max and step > 0");
    }
    const auto count = static_cast<long>(std::floor((scan.x_max - scan.k_min) / scan.step + 1e-9));
    double best_log = -std::numeric_limits<double>::infinity();
    double best_at = scan.k_min;
    for (long i = 0; i <= count; ++i) {
        const double r = scan.k_min + static_cast<double>(i) * scan.step;
        for (double x : {-r, r}) {
            if ((side == Side::Left && x > 0) || (side == Side::Right && x < 0)) continue;
            const double gx = std::abs(g(x));
            if (gx == 0.0) continue;
            const double lp = std::log(gx) + (exponent + 1.0) * std::log(r);
            if (lp > best_log) {
                best_log = lp;
                best_at = r;
            }
        }
    }
    if (best_at >= scan.k_min + 0.9 * (scan.x_max - scan.k_min)) {
        std::ostringstream msg;
        msg << "|g(x)| |x|^" << exponent + 1.0 << " still increasing near x = " << best_at
            << "; decay too slow for the requested exponent or scan range too short";
        throw FitFailure(msg.str());
    }
    const double c = std::isfinite(best_log) ? 1.1 * std::exp(best_log) : std::numeric_limits<double>::min();
    return {scan.k_min, c};
}

DecayConstants fit_decay_constants(const Sigmoidal& sig, double beta, double alpha, const ScanRange& scan) {
    DecayConstants out{alpha, beta, {}, {}};
    const auto left = fit_tail_constant([&](double x) { return sig.eval(0, x); }, alpha, scan, Side::Left);
    out.K.push_back(left.K);
    out.C.push_back(left.C);
    for (int s = 1; s <= sig.max_order(); ++s) {
        const auto fit = fit_tail_constant([&](double x) { return sig.eval(s, x); }, beta, scan);
        out.K.push_back(fit.K);
        out.C.push_back(fit.C);
    }
    return out;
}

bool AxiomReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

const AxiomCheck* AxiomReport::find(std::string_view name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

AxiomReport verify_axioms(const Sigmoidal& sig, const SampleGrid& grid, double tol) {
    std::vector<double> xs;
    const int half = std::max(grid.points / 2, 1);
    for (int i = -half; i <= half; ++i) xs.push_back(grid.x_max * static_cast<double>(i) / half);

    double limits = std::max(sig.eval(0, -grid.x_max), 1.0 - sig.eval(0, grid.x_max));
    double monotone = 0.0, odd = 0.0, concave = 0.0, left_tail = 0.0, decay = 0.0;
    const auto& dc = sig.decay();
    const bool have_constants = dc.max_order() >= sig.max_order();

    for (double x : xs) {
        const double s0 = sig.eval(0, x);
        monotone = std::max(monotone, -sig.eval(1, x));
        odd = std::max(odd, std::abs(s0 + sig.eval(0, -x) - 1.0));
        if (x >= 0.0) concave = std::max(concave, sig.eval(2, x));
        if (!have_constants) continue;
        const double ax = std::abs(x);
        if (x <= -dc.K[0]) left_tail = std::max(left_tail, s0 - dc.C[0] * std::pow(ax, -dc.alpha - 1.0));
        for (int s = 1; s <= sig.max_order(); ++s) {
            const auto us = static_cast<std::size_t>(s);
            if (ax < dc.K[us]) continue;
            decay = std::max(decay, std::abs(sig.eval(s, x)) - dc.C[us] * std::pow(ax, -dc.beta - 1.0));
        }
    }
    if (!have_constants) {
        left_tail = std::numeric_limits<double>::infinity();
        decay = std::numeric_limits<double>::infinity();
    }

    AxiomReport report;
    auto add = [&](std::string name, double v) { report.checks.push_back({std::move(name), v <= tol, v}); };
    add("limits", limits);
    add("monotone", monotone);
    add("odd_symmetry", odd);
    add("concavity", concave);
    add("left_tail", left_tail);
    add("derivative_decay", decay);
    return report;
}

}  // namespace sigmoidnn
