#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rmatrixlab/params.hpp"
#include "rmatrixlab/rmatrix.hpp"

namespace rml {

/// Deterministic PRNG (splitmix64 core) so that sampled points are identical
/// across platforms and job counts.
class SampleRng {
  public:
    explicit SampleRng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    cplx annulus(double rlo, double rhi, double arg_lo, double arg_hi) {
        double rad = uniform(rlo, rhi);
        double th = uniform(arg_lo, arg_hi);
        return std::polar(rad, th);
    }
};

/// Machine-readable per-family sampling domain.
struct FamilyDomain {
    double q_lo = 0.3, q_hi = 0.7;       // |q|
    double p_lo = 0.05, p_hi = 0.3;      // |p|
    double z_lo = 0.3, z_hi = 0.9;       // |z| for multiplicative families
    double u_lo = 0.2, u_hi = 2.0;       // |u| scale for additive families
    double r_lo = 4.0, r_hi = 8.0;       // deformation parameter r
    double s_lo = 0.7, s_hi = 1.6;       // dynamical s
    double x_gap_min = 0.35;             // min |x_a - x_b| after shифts guard
};

struct FamilyInfo {
    std::string name;
    std::vector<int> dims;               // admissible N
    SpectralConvention convention = SpectralConvention::multiplicative;
    bool dynamical = false;
    bool has_spectral = true;
    FamilyDomain domain;
};

class Registry {
  public:
    /// Built-in registry; honors RMATRIXLAB_REGISTRY (path to a JSON override)
    /// when from_env is true.
    static Registry built_in();
    static Registry load(const std::string& json_path);
    static Registry from_env_or_default();

    const FamilyInfo& family(const std::string& name) const;
    bool has(const std::string& name) const { return families_.count(name) > 0; }
    std::vector<std::string> names() const;

    std::string to_json() const;

  private:
    std::map<std::string, FamilyInfo> families_;
};

/// A sampled parameter set for one family evaluation.
struct SampledPoint {
    cplx z1, z2, z3;                 // spectral points (z or u per convention)
    EllipticParams ell;
    DynamicalParams dyn;
    cplx r;                          // deformation parameter where applicable
};

/// Rejection-sample a pole-free point; `attempts_out` reports retries.
SampledPoint sample_point(const FamilyInfo& fam, int N, SampleRng& rng, int* attempts_out);

/// Construct a catalog matrix by family name at the sampled point.
/// `arg` overrides the spectral argument (z or u).  Dynamical coordinates may
/// be shifted via `dyn_override`.
RMatrix build_family(const std::string& family, int N, cplx arg, const SampledPoint& pt,
                     bool normalized, const DynamicalParams* dyn_override = nullptr);

} // namespace rml
