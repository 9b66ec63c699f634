#pragma once

#include <stdexcept>
#include <string>

namespace scrap {

// Bad input: parameters outside their domain, malformed configs, dimension mismatches.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The numerics could not deliver: step-size underflow, unbound levels, singular points.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace scrap
