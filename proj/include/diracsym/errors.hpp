#pragma once

#include <stdexcept>
#include <string>

namespace diracsym {

/// Invalid sizes, mismatched grids, bad flags or malformed schedules.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Arguments outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A physics contract was violated: wrap-around contamination, mixed-sign
/// transitions, unnormalized boundary states.
class ContractViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BoundaryContamination : public ContractViolation {
public:
    using ContractViolation::ContractViolation;
};

class EnergySignMismatch : public ContractViolation {
public:
    using ContractViolation::ContractViolation;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace diracsym
