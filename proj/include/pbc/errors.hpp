#pragma once

#include <stdexcept>
#include <string>

namespace pbc {

// Error taxonomy mirrored by the CLI exit codes:
// config_error -> 2, math_error -> 3, size_error -> 4.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct config_error : error {
    using error::error;
};

struct math_error : error {
    using error::error;
};

struct size_error : error {
    using error::error;
};

// A blowup center that does not lie on the anticanonical curve.
struct poisson_violation : math_error {
    using math_error::math_error;
};

// A pseudo-twist length came out negative: the supplied lift is
// inconsistent with the class it claims to lift.
struct negative_length : math_error {
    using math_error::math_error;
};

// Jet data that does not describe a transverse intersection with the
// anticanonical curve.
struct not_transverse : math_error {
    using math_error::math_error;
};

} // namespace pbc
