#pragma once

#include <stdexcept>
#include <string>

namespace rml {

// Evaluation outside a function's domain (|p| >= 1, z = 0, Im tau <= 0, ...).
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error("domain error: " + what) {}
};

// Argument within 1e-10 of a pole/zero lattice of Gamma_r or of a theta zero
// that sits in a denominator.  Raised instead of returning a huge value.
struct pole_error : std::runtime_error {
    explicit pole_error(const std::string& what) : std::runtime_error("pole error: " + what) {}
};

// A truncated product/series failed to reach its tail tolerance within
// policy.max_terms.  Silent truncation is never allowed.
struct convergence_error : std::runtime_error {
    explicit convergence_error(const std::string& what) : std::runtime_error("non-convergence: " + what) {}
};

struct shape_error : std::runtime_error {
    explicit shape_error(const std::string& what) : std::runtime_error("shape error: " + what) {}
};

struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error("config error: " + what) {}
};

} // namespace rml
