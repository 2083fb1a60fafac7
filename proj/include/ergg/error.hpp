// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace ergg {

/// Invalid model or operation arguments.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A chain whose closed forms would divide by zero (e.g. disconnection is impossible).
class DegenerateChainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Quadrature or interpolation failed to reach its tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Monte Carlo could not produce a usable sample (e.g. rejection budget exhausted).
class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ergg
