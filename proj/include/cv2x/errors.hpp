#pragma once

#include <stdexcept>
#include <string>

namespace cv2x {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid or inconsistent configuration, including violations of A_{M,S} > B_{M,S}.
class ConfigError : public Error {
public:
    using Error::Error;
};

class UnknownScenario : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// A link distance below the path-loss singularity guard.
class DegenerateDistance : public Error {
public:
    using Error::Error;
};

// Adaptive quadrature did not reach its tolerance; carries the best estimate.
class QuadratureFailure : public Error {
public:
    QuadratureFailure(const std::string& what, double estimate, double error)
        : Error(what), estimate_(estimate), error_(error) {}

    double estimate() const noexcept { return estimate_; }
    double error() const noexcept { return error_; }

private:
    double estimate_;
    double error_;
};

class NotApplicable : public Error {
public:
    using Error::Error;
};

// (case, link) pair that has no meaning, e.g. anything for Case 3.
class InvalidCombination : public Error {
public:
    using Error::Error;
};

class DifferentiationUnstable : public Error {
public:
    using Error::Error;
};

// Interference-limited SE with no interferers at all.
class DivergentSE : public Error {
public:
    using Error::Error;
};

}  // namespace cv2x
