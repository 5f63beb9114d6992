#pragma once

#include <array>
#include <string>

#include "rmatrixlab/linalg.hpp"
#include "rmatrixlab/params.hpp"
#include "rmatrixlab/specfun.hpp"

namespace rml {

// Index convention: the basis of V (x) V is ordered (1,1),(1,2),...,(N,N)
// row-major; the matrix element R^{cd}_{ab} sits at row (c,d), column (a,b),
// so the printed 4x4 displays match directly.

enum class TrigVariant { uq_sl2_homog, uq_sl2_princ, uql_sl2, uql_slN, bql_sl2 };
enum class VertexForm { raw, hat, tilde };
enum class FaceForm { felder, jkos };
enum class RationalVariant { yang_slN, dy_slN, yang_soN, yang_spN };
enum class DeformedVariant { dyr_sl2, dyr_slN, dys_sl2, dys_slN, dyrs_sl2, dyr_sl2_gauge };

struct RMatrix {
    int n_dim = 2;
    Mat entries;
    std::string family;
    std::string params;   // human-readable parameter snapshot
    bool normalized = true;
};

/// Trigonometric catalog: Uq(sl2^) in both gradations, U_{q,lambda}(sl_N^),
/// and the constant B_{q,lambda}(sl2) matrix (no spectral point).
RMatrix r_trigonometric(TrigVariant variant, const SpectralPoint* point,
                        const EllipticParams& params, const DynamicalParams* dyn,
                        bool normalized = true,
                        const TruncationPolicy& policy = default_policy());

/// Vertex elliptic family.  N = 2 uses the printed eight-vertex entries; the
/// general-N constructor builds the Z_N theta-characteristic sum in log
/// coordinates (branch-sensitive powers use xi directly).
RMatrix r_elliptic_vertex(int N, const SpectralPoint& point, const EllipticParams& params,
                          VertexForm form, bool normalized = true,
                          const TruncationPolicy& policy = default_policy());

/// Same constructor in logarithmic coordinates (canonical input for N > 2).
RMatrix r_elliptic_vertex_log(int N, const LogCoords& lc, VertexForm form,
                              bool normalized = true,
                              const TruncationPolicy& policy = default_policy());

/// Face elliptic family in either printed form.
RMatrix r_elliptic_face(int N, const SpectralPoint& point, const EllipticParams& params,
                        const DynamicalParams& dyn, FaceForm form, bool normalized = true,
                        const TruncationPolicy& policy = default_policy());

/// Rational (Yangian / double Yangian) family.  kappa defaults to (N-2)/2 for
/// so and (N+2)/2 for sp when not supplied.
RMatrix r_rational(RationalVariant variant, int N, const SpectralPoint& point,
                   const cplx* kappa = nullptr, bool normalized = true,
                   const TruncationPolicy& policy = default_policy());

/// Deformed / dynamical double Yangian family.
RMatrix r_deformed_yangian(DeformedVariant variant, int N, const SpectralPoint& point,
                           const cplx* r = nullptr, const DynamicalParams* dyn = nullptr,
                           bool normalized = true,
                           const TruncationPolicy& policy = default_policy());

/// tau(z) of sec. 3.1.2 and tau_N(z); the latter takes xi to fix the branch of
/// z^{2/N-2}.
cplx tau_factor(cplx z, cplx q, const TruncationPolicy& policy = default_policy());
cplx tau_n_factor(int N, cplx xi, cplx q, const TruncationPolicy& policy = default_policy());

/// R(z) = w0 (1 (x) 1 + sum_a W_a sigma_a (x) sigma_a) for an eight-vertex
/// patterned 4x4 input.
struct EightVertexDecomposition {
    cplx w0;
    std::array<cplx, 3> W;
};

EightVertexDecomposition decompose_eight_vertex(const Mat& R);

/// Sklyanin structure constants J_ab = (W_a^2 - W_b^2)/(W_c^2 - 1) computed at
/// z1 and z2 from the c = 0 eight-vertex matrix; returns J(z1) and the maximal
/// entrywise difference |J(z1) - J(z2)|.
struct SklyaninStructure {
    Mat J;              // 3x3 antisymmetric
    double z_independence_residual;
};

SklyaninStructure sklyanin_structure(cplx z1, cplx z2, const EllipticParams& params,
                                     const TruncationPolicy& policy = default_policy());

} // namespace rml
