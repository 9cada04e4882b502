#pragma once

#include <stdexcept>
#include <string>

namespace tcoint {

/// Input data violates a contract: unparseable files, missing values,
/// ordering violations, samples too short for the requested model.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical procedure could not produce a result: singular cross-products,
/// degenerate regressions, non-positive-definite covariances.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad parameters (lag orders, trims, replication counts) are reported as
// std::invalid_argument.

[[noreturn]] void throw_invalid(const std::string& what);

}  // namespace tcoint
