#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>

#include "sigmoidnn/sigmoids.hpp"

namespace sigmoidnn {

/// Density (kernel) function phi(x) = [sigma(x+1) - sigma(x-1)] / 2 and its
/// derivatives, optionally dilated to c^(s+1) phi^(s)(c x).
///
/// Every truncated sum in the library asks the kernel how far out it has to
/// go. The answer is certified: either from the exponential envelope of the
/// activation or, failing that, from polynomial tail constants fitted on
/// phi^(s) itself (exponent alpha for s = 0, beta for s >= 1).
class DensityKernel {
public:
    explicit DensityKernel(Sigmoidal sigmoid, double scale = 1.0, const ScanRange& scan = {});

    const Sigmoidal& sigmoid() const { return sigmoid_; }
    int max_order() const { return sigmoid_.max_order(); }
    double scale() const { return scale_; }
    /// Activation id, suffixed with the dilation factor when it is not 1.
    std::string label() const;

    /// phi^(s)(x). Throws OrderOutOfRange / NonFiniteInput.
    double phi(int s, double x) const;
    double operator()(double x) const { return phi(0, x); }

    /// Tail constants fitted on phi^(s): |phi^(s)(x)| <= C[s] |x|^(-e-1) for |x| >= K[s].
    const DecayConstants& decay() const { return decay_; }
    /// Tail exponent for order s (alpha when s = 0, beta otherwise).
    double tail_exponent(int s) const { return s == 0 ? decay_.alpha : decay_.beta; }

    /// Smallest certified R with |phi^(s)(x)| <= eps for |x| >= R. Memoized per (s, eps).
    double effective_support_radius(int s, double eps) const;

    /// Upper bound on sum over unit-spaced t with |t| > R of |phi^(s)(t)| |t|^nu.
    /// Infinite when R is too small for the envelope to apply.
    double shifted_tail_bound(int s, double nu, double R) const;

    /// Upper bound on the integral over |t| > R of |phi^(s)(t)| |t|^nu.
    double integral_tail_bound(int s, double nu, double R) const;

    /// Largest admissible moment order (exclusive) for derivative order s.
    double moment_order_limit(int s) const { return tail_exponent(s); }

private:
    struct Envelope {
        double amplitude;   // |phi^(s)(x)| <= amplitude * exp(-rate |x|)
        double rate;
        double valid_from;  // ... for |x| >= valid_from
    };

    std::optional<Envelope> envelope(int s) const;
    double compute_radius(int s, double eps) const;
    void check_order(int s) const;

    struct RadiusCache {
        std::mutex mutex;
        std::map<std::pair<int, double>, double> values;
    };

    Sigmoidal sigmoid_;
    double scale_;
    DecayConstants decay_;
    std::shared_ptr<RadiusCache> cache_;
};

/// Convenience overload matching the free-function style used elsewhere.
inline double phi(const DensityKernel& kernel, int s, double x) { return kernel.phi(s, x); }

}  // namespace sigmoidnn
