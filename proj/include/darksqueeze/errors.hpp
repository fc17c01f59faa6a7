#pragma once

#include <stdexcept>
#include <string>

namespace dsq {

// Thrown when a requested mean-field point lies beyond the critical drive
// (y^2 < 0) or in an unstable region where the Gaussian frame is undefined.
struct instability_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a basis or density matrix would exceed the configured size cap.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Step-size underflow or accuracy loss inside a time integrator.
struct integrator_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Cumulant closure produced an unphysical covariance (expected only in
// unstable regions).
struct closure_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Protocol construction failed (non-dark or unstable target, degenerate
// mode pair, frame mismatch).
struct protocol_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input state (asymmetric covariance, non-orthogonal direction).
struct state_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace dsq
