#pragma once

#include <stdexcept>
#include <string>

namespace ellw2 {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define ELLW2_DEFINE_ERROR(Name)                                    \
    class Name : public Error {                                    \
    public:                                                        \
        explicit Name(const std::string& what) : Error(what) {}    \
    };

ELLW2_DEFINE_ERROR(NotSquare)            // input matrix is not square (or empty)
ELLW2_DEFINE_ERROR(NonFinite)            // NaN or infinity in input
ELLW2_DEFINE_ERROR(AsymmetricInput)      // skew exceeds the symmetry tolerance
ELLW2_DEFINE_ERROR(NoConvergence)        // eigensolver exceeded its sweep budget
ELLW2_DEFINE_ERROR(NotPSD)               // matrix fails the positive-semidefinite test
ELLW2_DEFINE_ERROR(NotPD)                // matrix fails the positive-definite test
ELLW2_DEFINE_ERROR(DimMismatch)          // operands have different dimensions
ELLW2_DEFINE_ERROR(BadExponent)          // exponent outside the supported range
ELLW2_DEFINE_ERROR(NonPositiveVariance)  // variance entry <= 0 or non-finite
ELLW2_DEFINE_ERROR(TooFewSamples)        // sample set too small for the estimator
ELLW2_DEFINE_ERROR(SizeMismatch)         // sample sets disagree in count or dimension
ELLW2_DEFINE_ERROR(TooLarge)             // problem size exceeds the supported cap
ELLW2_DEFINE_ERROR(BadDf)                // Student-t degrees of freedom <= 2
ELLW2_DEFINE_ERROR(NumericError)         // internal numerical contract violated
ELLW2_DEFINE_ERROR(ParseError)           // malformed matrix file

#undef ELLW2_DEFINE_ERROR

}  // namespace ellw2
