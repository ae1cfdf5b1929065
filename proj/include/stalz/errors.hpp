// errors.hpp — exception taxonomy shared across the library and the CLI
#pragma once

#include <stdexcept>

namespace stalz {

// Bad user-facing configuration (file contents, CLI arguments). CLI exit code 2.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical-integrity failures: divergent drives, broken brackets, integrator
// breakdown, negative probabilities. CLI exit code 3.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rabi frequency diverges (mixing angle reached pi/2).
struct divergence_error : numeric_error {
    using numeric_error::numeric_error;
};

// Root bracket does not contain a sign change.
struct bracket_error : numeric_error {
    using numeric_error::numeric_error;
};

// Spectrum too close to degenerate for eigenframe tracking.
struct degeneracy_error : numeric_error {
    using numeric_error::numeric_error;
};

// Eigenframe could not be matched between adjacent samples.
struct tracking_error : numeric_error {
    using numeric_error::numeric_error;
};

// Filesystem failures. CLI exit code 4.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace stalz
