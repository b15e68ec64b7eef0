#pragma once

#include <stdexcept>
#include <string>

namespace stefankpp {

/// Base class for all solver-suite errors.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonPositiveParameter : public SolverError {
public:
    explicit NonPositiveParameter(const std::string& name)
        : SolverError("parameter must be strictly positive: " + name), field(name) {}
    std::string field;
};

class SpeedOutOfRange : public SolverError {
public:
    using SolverError::SolverError;
};

class NoConvergence : public SolverError {
public:
    using SolverError::SolverError;
};

class DeltaTooLarge : public SolverError {
public:
    using SolverError::SolverError;
};

class BadInitialData : public SolverError {
public:
    using SolverError::SolverError;
};

class CFLViolation : public SolverError {
public:
    using SolverError::SolverError;
};

class WindowTooShort : public SolverError {
public:
    using SolverError::SolverError;
};

class FrontCollapse : public SolverError {
public:
    using SolverError::SolverError;
};

class HoleClosed : public SolverError {
public:
    using SolverError::SolverError;
};

class MarginViolated : public SolverError {
public:
    using SolverError::SolverError;
};

class NoInterface : public SolverError {
public:
    using SolverError::SolverError;
};

class SpecInvariantViolated : public SolverError {
public:
    using SolverError::SolverError;
};

class HypothesisViolated : public SolverError {
public:
    using SolverError::SolverError;
};

class ConfigError : public SolverError {
public:
    using SolverError::SolverError;
};

} // namespace stefankpp
