#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cohen {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad input: malformed text, out-of-range arguments, mismatched contexts.
/// The CLI maps these to exit code 2.
struct UsageError : Error {
    using Error::Error;
};

struct ContextMismatch : UsageError {
    ContextMismatch() : UsageError("algebra context mismatch") {}
};

struct ParseError : UsageError {
    size_t position;
    ParseError(size_t pos, const std::string& what)
        : UsageError("parse error at position " + std::to_string(pos) + ": " + what),
          position(pos) {}
};

/// Conditions a correct run never produces; the CLI maps these to exit code 3.
struct InternalError : Error {
    using Error::Error;
};

/// A weight-graded residue that is not in the Z/q-span of the left-normed
/// Lie monomial basis.  Carries the offending component as a certificate.
struct ResidueNotInLieSpan : InternalError {
    int weight;
    std::vector<uint8_t> support;
    std::string residual;  // rendered remainder, span candidate already subtracted
    ResidueNotInLieSpan(int w, std::vector<uint8_t> supp, std::string res);
};

/// Residual not cleared after the maximal weight; signals a collector bug.
struct NonTermination : InternalError {
    NonTermination() : InternalError("collection residual nonzero after maximal weight") {}
};

struct GuardExceeded : InternalError {
    using InternalError::InternalError;
};

/// Zero or more than one candidate matched in the 4-cell classification.
struct AmbiguousClassification : InternalError {
    using InternalError::InternalError;
};

/// A module map failed to commute with sq1/sq2; names the offending generator.
struct EquivarianceFailure : InternalError {
    std::string generator;
    EquivarianceFailure(const std::string& gen, const std::string& detail)
        : InternalError("equivariance failure at generator " + gen + ": " + detail),
          generator(gen) {}
};

}  // namespace cohen
