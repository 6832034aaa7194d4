#ifndef CAUSAL_CHANNELS_ERRORS_H
#define CAUSAL_CHANNELS_ERRORS_H

#include <stdexcept>
#include <string>

namespace causal_channels {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shapes, subsystem profiles or alphabets do not fit together.
struct DimensionError : Error {
    using Error::Error;
};

/// A matrix that must be Hermitian is not.
struct SymmetryError : Error {
    using Error::Error;
};

/// A matrix or map that must be positive semidefinite is not.
struct PositivityError : Error {
    using Error::Error;
};

/// An operation was called outside its documented precondition.
struct PreconditionError : Error {
    using Error::Error;
};

/// A SEP factor pair could not be rescaled into trace-nonincreasing factors.
struct ScalingError : Error {
    using Error::Error;
};

/// The object is not a member of the class the operation requires (e.g. a non-TP loop).
struct MembershipError : Error {
    using Error::Error;
};

/// A conditional distribution is not normalized or has negative entries.
struct DistributionError : Error {
    using Error::Error;
};

/// A relation that should be a strict partial order contains a cycle.
struct NotAPartialOrderError : Error {
    using Error::Error;
};

/// A wiring does not respect the supplied causal order.
struct CausalOrderError : Error {
    using Error::Error;
};

/// A classical process fails the deterministic-strategy normalization test.
struct ProcessValidityError : Error {
    using Error::Error;
};

/// Malformed user input (JSON schema violations, unreadable files).
struct InputError : Error {
    using Error::Error;
};

/// A verification pipeline finished but its checks did not pass.
struct VerificationFailure : Error {
    using Error::Error;
};

}  // namespace causal_channels

#endif
