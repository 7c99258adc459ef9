#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sigmoidnn {

/// Tail constants for the decay conditions on a sigmoidal function.
///
/// Index 0 holds the left-tail pair for sigma itself, i.e.
/// sigma(x) <= C[0] |x|^(-alpha-1) for x <= -K[0]. Index s = 1..m holds
/// |sigma^(s)(x)| <= C[s] |x|^(-beta-1) for |x| >= K[s].
struct DecayConstants {
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<double> K;
    std::vector<double> C;

    int max_order() const { return static_cast<int>(C.size()) - 1; }
};

/// Exponential envelope |sigma^(s)(x)| <= L[s] exp(-rate |x|) (s >= 1) and
/// sigma(x) <= L[0] exp(rate x) for x <= 0. Only catalog entries with
/// exponentially fast tails carry one.
struct ExponentialTail {
    double rate = 1.0;
    std::vector<double> L;
};

struct ScanRange {
    double k_min = 1.0;
    double x_max = 100.0;
    double step = 0.01;
};

/// A sigmoidal activation together with exact derivatives up to max_order
/// and the decay metadata that downstream estimates rely on. Immutable.
class Sigmoidal {
public:
    /// Maps (s, x) to sigma^(s)(x); called only with 0 <= s <= max_order and finite x.
    using Evaluator = std::function<double(int, double)>;

    Sigmoidal(std::string id, int max_order, Evaluator evaluator, DecayConstants decay,
              std::optional<ExponentialTail> exp_tail = std::nullopt);

    const std::string& id() const { return id_; }
    int max_order() const { return max_order_; }
    double alpha() const { return decay_.alpha; }
    double beta() const { return decay_.beta; }
    const DecayConstants& decay() const { return decay_; }
    const std::optional<ExponentialTail>& exponential_tail() const { return exp_tail_; }

    /// sigma^(s)(x). Throws OrderOutOfRange or NonFiniteInput.
    double eval(int s, double x) const;
    double operator()(double x) const { return eval(0, x); }

    /// Same activation with different decay metadata.
    Sigmoidal with_decay(DecayConstants decay) const;

private:
    std::string id_;
    int max_order_;
    Evaluator evaluator_;
    DecayConstants decay_;
    std::optional<ExponentialTail> exp_tail_;
};

inline double eval_sigmoid(const Sigmoidal& sig, int s, double x) { return sig.eval(s, x); }

/// Identifiers accepted by make_sigmoid.
std::vector<std::string> catalog_ids();

/// Builds a catalog activation ("logistic" or "tanh") with derivatives up to
/// max_order. beta and alpha default to 2 * max_order + 2; decay constants
/// are fitted on `scan`. Throws UnknownActivation.
Sigmoidal make_sigmoid(std::string_view id, int max_order, std::optional<double> beta = std::nullopt,
                       std::optional<double> alpha = std::nullopt, const ScanRange& scan = {});

/// K and C such that |g(x)| <= C |x|^(-exponent-1) at every scanned point
/// of the given sides with |x| >= K. C carries a 10% safety factor.
struct TailFit {
    double K;
    double C;
};

enum class Side { Both, Left, Right };

/// Throws FitFailure when |g(x)| |x|^(exponent+1) is still growing at the end
/// of the scan range.
TailFit fit_tail_constant(const std::function<double(double)>& g, double exponent, const ScanRange& scan,
                          Side side = Side::Both);

/// Fits (K_s, C_s) for s = 1..m with exponent beta, plus the left-tail pair
/// for sigma itself with exponent alpha (index 0).
DecayConstants fit_decay_constants(const Sigmoidal& sig, double beta, double alpha, const ScanRange& scan = {});

struct SampleGrid {
    double x_max = 100.0;
    int points = 4001;
};

struct AxiomCheck {
    std::string name;
    bool passed;
    double worst_violation;
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;

    bool all_passed() const;
    const AxiomCheck* find(std::string_view name) const;
};

/// Sampled verification of the sigmoidal axioms: limits, monotonicity,
/// odd symmetry, concavity on x >= 0, left-tail decay with alpha and the
/// derivative decay with beta. Failures are report entries.
AxiomReport verify_axioms(const Sigmoidal& sig, const SampleGrid& grid = {}, double tol = 1e-12);

}  // namespace sigmoidnn
