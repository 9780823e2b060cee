#pragma once

#include <stdexcept>

namespace expcurve {

// Work or memory limit exceeded before any computation started.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rejection sampling gave up (e.g. no element of the requested order exists).
struct sampling_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace expcurve
