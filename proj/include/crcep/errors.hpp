#ifndef CRCEP_ERRORS_HPP
#define CRCEP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace crcep {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mismatched lengths or block dimensions.
struct DimensionError : Error {
    using Error::Error;
};

/// Malformed or inconsistent input data (non-PD covariance, bad coefficients).
struct DataError : Error {
    using Error::Error;
};

/// A symbol or matrix is singular where an inverse is required.
struct SingularityError : Error {
    explicit SingularityError(const std::string& what, int node = -1)
        : Error(what), node_index(node) {}
    int node_index;  ///< offending node index when applicable, else -1
};

/// from_symbol received a spectrum whose coefficients leak outside the band.
struct BandViolationError : Error {
    explicit BandViolationError(const std::string& what, double leaked)
        : Error(what), max_leaked(leaked) {}
    double max_leaked;
};

/// Spectral factorization is impossible (non-positive pseudo-polynomial).
struct FactorizationError : Error {
    using Error::Error;
};

/// Positive on the discrete circle but not on the full circle: the problem
/// instance is infeasible at this half-period N; a larger N may fix it.
struct InfeasibleAtNError : FactorizationError {
    using FactorizationError::FactorizationError;
};

/// The sigma^2 (or D) update hit a near-zero denominator.
struct DegenerateScalingError : Error {
    using Error::Error;
};

/// Iteration budget exhausted without meeting the convergence test.
struct ConvergenceError : Error {
    using Error::Error;
};

}  // namespace crcep

#endif  // CRCEP_ERRORS_HPP
