#pragma once

#include <stdexcept>
#include <string>

namespace tatefgl {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mismatched rings, malformed windows, bad arguments.
struct specification_error : error {
    using error::error;
};

// A denominator divisible by p reached a mod-p view.
struct integrality_error : error {
    using error::error;
};

struct inhomogeneity_error : error {
    using error::error;
};

struct division_error : error {
    using error::error;
};

struct composition_error : error {
    using error::error;
};

struct reversion_error : error {
    using error::error;
};

// The truncation window cannot represent the requested result exactly.
struct truncation_error : error {
    using error::error;
};

struct rewrite_error : error {
    using error::error;
};

struct precondition_error : error {
    using error::error;
};

struct missing_rule_error : error {
    using error::error;
};

}  // namespace tatefgl
