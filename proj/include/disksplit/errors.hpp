// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace disksplit {

// Raised when an iterative scheme (series tail, quadrature doubling,
// sigma_min refinement, root bracketing) fails to reach its tolerance.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a formula hits a removable singularity of its inputs,
// e.g. a vanishing denominator in the shift formula.
struct DegenerateError : std::runtime_error {
    explicit DegenerateError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace disksplit
