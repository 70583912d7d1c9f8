#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wwc {

// Base class for all library failures.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A weight assignment violated its preconditions (non-positive weight,
// duplicate letter, wrong alphabet).
class InvalidAssignmentError : public Error {
public:
    using Error::Error;
};

// The language has no word satisfying the request (e.g. odd length where
// only even lengths are inhabited).
class EmptyLanguageError : public Error {
public:
    using Error::Error;
};

// A brute-force oracle was asked to run beyond its configured cap.
class OracleCapError : public Error {
public:
    using Error::Error;
};

// Function evaluated outside its domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// Adaptive quadrature ran out of subdivision budget. Carries the partial
// estimate and the error bound reached so far.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double partial, double bound)
        : Error(what), partial_estimate(partial), error_bound(bound) {}
    double partial_estimate;
    double error_bound;
};

// The t* probe reached its limit while the ratio sequence was still rising.
class NoConvergenceError : public Error {
public:
    using Error::Error;
};

// Weight configuration not covered by a stated asymptotic result.
class UnsupportedConfigurationError : public Error {
public:
    using Error::Error;
};

// Polynomial root scan found no sign change on (0, 1).
class NoRootError : public Error {
public:
    using Error::Error;
};

// A class probability underflowed to zero while building a sampler.
class PrecisionError : public Error {
public:
    using Error::Error;
};

// A simulation trial hit its draw cap. Carries the coverage fraction the
// trial had reached.
class TimeoutError : public Error {
public:
    TimeoutError(const std::string& what, double coverage)
        : Error(what), coverage_fraction(coverage) {}
    double coverage_fraction;
};

// Some trials finished, some did not. Carries the indices that completed.
class PartialResultError : public Error {
public:
    PartialResultError(const std::string& what, std::vector<std::uint64_t> completed)
        : Error(what), completed_trials(std::move(completed)) {}
    std::vector<std::uint64_t> completed_trials;
};

// The requested bound needs m >= 16 to be defined.
class BoundUndefinedError : public Error {
public:
    using Error::Error;
};

}  // namespace wwc
