#pragma once

#include <stdexcept>
#include <string>

namespace pbandit {

// Argument outside a distribution's support or parameter space.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Operation invalid for the current state, e.g. quantile of an improper posterior.
class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Malformed call: mismatched lengths, bad arm index, invalid configuration.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace pbandit
