#pragma once

#include <stdexcept>
#include <string>

namespace sigmoidnn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define SIGMOIDNN_ERROR(Name)                      \
    class Name : public Error {                    \
    public:                                        \
        using Error::Error;                        \
    }

SIGMOIDNN_ERROR(OrderOutOfRange);
SIGMOIDNN_ERROR(NonFiniteInput);
SIGMOIDNN_ERROR(FitFailure);
SIGMOIDNN_ERROR(UnknownActivation);
SIGMOIDNN_ERROR(InvalidInterval);
SIGMOIDNN_ERROR(DivergenceRisk);
SIGMOIDNN_ERROR(QuadratureNonConvergence);
SIGMOIDNN_ERROR(StrangFixUnverified);
SIGMOIDNN_ERROR(ResidualImaginary);
SIGMOIDNN_ERROR(ZetaDivergence);
SIGMOIDNN_ERROR(DegenerateNormalizer);
SIGMOIDNN_ERROR(NonFiniteSample);
SIGMOIDNN_ERROR(HypothesisViolation);
SIGMOIDNN_ERROR(InvalidArgument);
SIGMOIDNN_ERROR(UnknownFunction);
SIGMOIDNN_ERROR(ConfigError);

#undef SIGMOIDNN_ERROR

}  // namespace sigmoidnn
