#pragma once

#include <stdexcept>
#include <string>

namespace stablewh {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Gamma-type function evaluated at a pole (non-positive integer argument).
struct PoleError : Error {
    using Error::Error;
};

/// Argument outside the validity strip/interval of a closed form.
struct DomainError : Error {
    using Error::Error;
};

/// (alpha, rho) outside the admissible parameter set.
struct InadmissibleError : Error {
    using Error::Error;
};

/// Quadrature or series failed to reach the requested tolerance.
struct NoConvergence : Error {
    using Error::Error;
};

/// Eigenvalue gap (or a ladder intensity) collapsed below resolution.
struct DegenerateError : Error {
    using Error::Error;
};

/// Operation requested in the wrong alpha regime.
struct RegimeError : Error {
    using Error::Error;
};

/// A Monte Carlo path exceeded its step budget.
struct BudgetError : Error {
    using Error::Error;
};

} // namespace stablewh
