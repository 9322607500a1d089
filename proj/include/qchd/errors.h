#ifndef QCHD_ERRORS_H
#define QCHD_ERRORS_H

#include <stdexcept>
#include <string>

namespace qchd {

/// Base class for every error raised by the toolkit.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonHermitian : Error {
    using Error::Error;
};

/// A matrix offered as a density matrix fails positivity or unit trace.
struct NotDensityMatrix : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

/// A Kraus set or stochastic matrix fails its completeness condition.
struct InvalidChannel : Error {
    using Error::Error;
};

struct ParameterOutOfRange : Error {
    using Error::Error;
};

struct AlphaOutOfRange : ParameterOutOfRange {
    using ParameterOutOfRange::ParameterOutOfRange;
};

/// a - b outside [-D(N||N'), D(N'||N)].
struct ABOutOfRange : ParameterOutOfRange {
    using ParameterOutOfRange::ParameterOutOfRange;
};

struct ROutOfRange : ParameterOutOfRange {
    using ParameterOutOfRange::ParameterOutOfRange;
};

/// A computation would exceed its configured dimension or enumeration cap.
struct BudgetExceeded : Error {
    using Error::Error;
};

struct NotPositive : Error {
    using Error::Error;
};

}  // namespace qchd

#endif
