#pragma once

#include <stdexcept>
#include <string>

namespace jumplab {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error { using Error::Error; };
struct InvalidRate : Error { using Error::Error; };
struct InvalidMeasure : Error { using Error::Error; };

/// Zero pivot in the tridiagonal elimination; the shifted operator is singular.
struct SingularSystem : Error { using Error::Error; };

/// Closed-form evaluation requested outside its validity region.
struct OutOfDomain : Error { using Error::Error; };

/// A limit formula was requested for inputs violating its hypotheses
/// (degenerate rate field, vanishing-order mismatch, pure atom measure).
struct OutOfHypothesis : Error { using Error::Error; };

/// The discrete solution violated a maximum-principle bound it should satisfy.
struct DiscretizationFailure : Error { using Error::Error; };

/// No sign change found when bracketing the fixed-point root.
struct NoRoot : Error { using Error::Error; };

struct NonConvergence : Error { using Error::Error; };

}  // namespace jumplab
