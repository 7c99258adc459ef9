#include "sigmoidnn/density.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "sigmoidnn/errors.hpp"

namespace sigmoidnn {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

DensityKernel::DensityKernel(Sigmoidal sigmoid, double scale, const ScanRange& scan)
    : sigmoid_(std::move(sigmoid)), scale_(scale), cache_(std::make_shared<RadiusCache>()) {
    if (!(scale_ > 0.0) || !std::isfinite(scale_)) throw NonFiniteInput("kernel scale must be positive");
    decay_.alpha = sigmoid_.alpha();
    decay_.beta = sigmoid_.beta();
    for (int s = 0; s <= max_order(); ++s) {
        const auto fit = fit_tail_constant([&](double x) { return phi(s, x); }, tail_exponent(s), scan);
        decay_.K.push_back(fit.K);
        decay_.C.push_back(fit.C);
    }
}

std::string DensityKernel::label() const {
    if (scale_ == 1.0) return sigmoid_.id();
    std::ostringstream os;
    os << sigmoid_.id() << "@x" << scale_;
    return os.str();
}

void DensityKernel::check_order(int s) const {
    if (s < 0 || s > max_order()) {
        std::ostringstream msg;
        msg << "kernel derivative order " << s << " outside [0, " << max_order() << "]";
        throw OrderOutOfRange(msg.str());
    }
}

double DensityKernel::phi(int s, double x) const {
    check_order(s);
    if (!std::isfinite(x)) throw NonFiniteInput("phi: non-finite argument");
    const double y = -std::abs(scale_ * x);
    double v = 0.5 * (sigmoid_.eval(s, y + 1.0) - sigmoid_.eval(s, y - 1.0));
    if (x > 0.0 && s % 2 == 1) v = -v;
    return scale_ == 1.0 ? v : std::pow(scale_, s + 1) * v;
}

std::optional<DensityKernel::Envelope> DensityKernel::envelope(int s) const {
    const auto& tail = sigmoid_.exponential_tail();
    if (!tail || static_cast<int>(tail->L.size()) <= s) return std::nullopt;
    const double rate = tail->rate;
    // For |y| >= 1 both shifted arguments sit on the same side of the origin.
    const double base = s == 0 ? 0.5 * tail->L[0] * std::exp(rate)
                               : tail->L[static_cast<std::size_t>(s)] * std::cosh(rate);
    return Envelope{std::pow(scale_, s + 1) * base, rate * scale_, 1.0 / scale_};
}

double DensityKernel::effective_support_radius(int s, double eps) const {
    check_order(s);
    if (!(eps > 0.0)) throw NonFiniteInput("effective_support_radius: eps must be positive");
    const auto key = std::make_pair(s, eps);
    {
        std::lock_guard lock(cache_->mutex);
        if (auto it = cache_->values.find(key); it != cache_->values.end()) return it->second;
    }
    const double r = compute_radius(s, eps);
    std::lock_guard lock(cache_->mutex);
    return cache_->values.emplace(key, r).first->second;
}

double DensityKernel::compute_radius(int s, double eps) const {
    if (auto env = envelope(s)) {
        if (env->amplitude <= eps) return env->valid_from;
        return std::max(env->valid_from, std::log(env->amplitude / eps) / env->rate);
    }
    const auto us = static_cast<std::size_t>(s);
    return std::max(decay_.K[us], std::pow(decay_.C[us] / eps, 1.0 / (tail_exponent(s) + 1.0)));
}

double DensityKernel::shifted_tail_bound(int s, double nu, double R) const {
    check_order(s);
    if (auto env = envelope(s)) {
        // g(t) = A t^nu exp(-r t) is decreasing and r - nu/t >= r/2 for t >= 2 nu / r.
        if (R < env->valid_from || R < 2.0 * nu / env->rate || R <= 0.0) return kInf;
        const double g = env->amplitude * std::pow(R, nu) * std::exp(-env->rate * R);
        return 2.0 * (g + g / (env->rate - nu / R));
    }
    const auto us = static_cast<std::size_t>(s);
    const double e = tail_exponent(s);
    if (nu >= e || R < decay_.K[us]) return kInf;
    const double c = decay_.C[us];
    return 2.0 * (c * std::pow(R, nu - e - 1.0) + c * std::pow(R, nu - e) / (e - nu));
}

double DensityKernel::integral_tail_bound(int s, double nu, double R) const {
    check_order(s);
    if (auto env = envelope(s)) {
        if (R < env->valid_from || R < 2.0 * nu / env->rate || R <= 0.0) return kInf;
        const double g = env->amplitude * std::pow(R, nu) * std::exp(-env->rate * R);
        return 2.0 * g / (env->rate - nu / R);
    }
    const auto us = static_cast<std::size_t>(s);
    const double e = tail_exponent(s);
    if (nu >= e || R < decay_.K[us]) return kInf;
    return 2.0 * decay_.C[us] * std::pow(R, nu - e) / (e - nu);
}

}  // namespace sigmoidnn
