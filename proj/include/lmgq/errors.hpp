// errors.hpp — error categories shared across the library
//
// Parameter and precondition violations throw std::invalid_argument.
// Failures of the numerics themselves (e.g. a non-converging eigensolve)
// throw numeric_error, and filesystem problems throw io_error.

#pragma once

#include <stdexcept>

namespace lmgq {

struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace lmgq
