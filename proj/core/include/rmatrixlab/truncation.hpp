#pragma once

#include <cstdint>

namespace rml {

enum class PrecisionMode { standard, extended };

// Truncation control for every infinite product / series in the kernel.
// An evaluation either converges (tail factor within tail_tolerance, or term
// magnitude below tail_tolerance) before max_terms, or throws
// convergence_error.
struct TruncationPolicy {
    double tail_tolerance = 1e-14;
    std::int64_t max_terms = 2'000'000;
    PrecisionMode precision_mode = PrecisionMode::standard;
};

inline const TruncationPolicy& default_policy() {
    static const TruncationPolicy p{};
    return p;
}

} // namespace rml
