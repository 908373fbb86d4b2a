#ifndef SPANNERFORGE_ERRORS_HPP
#define SPANNERFORGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spannerforge {

// Malformed input: bad vertex ids, unparsable files, edges outside the host graph.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Well-formed input outside the domain an operation supports (edgeless graph, m > |E|, ...).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid configuration values (q < 2, non-coprime caterpillar, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The caller broke a documented precondition, or an internal invariant failed.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Parameter derivation hit the regime where the rounding exponent collapses.
class DegenerateParameters : public DomainError {
public:
    using DomainError::DomainError;
};

// The embedded LP solver lost numerical control.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace spannerforge

#endif
