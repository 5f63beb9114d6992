#pragma once

#include <string>

#include "rmatrixlab/linalg.hpp"
#include "rmatrixlab/params.hpp"
#include "rmatrixlab/specfun.hpp"

namespace rml {

enum class TwistProvenance { closed_form, difference_iterate, finite_formula };

struct TwistMatrix {
    int n_dim = 2;
    Mat entries;
    TwistProvenance provenance = TwistProvenance::closed_form;
    std::string params;
};

/// Vertex twist F(z;p) of sec. 3.1.4 (eight-vertex patterned, a_F..d_F entries
/// from the +- product combinations, times rho_F).
TwistMatrix vertex_twist_sl2(cplx z, const EllipticParams& params,
                             const TruncationPolicy& policy = default_policy());

/// Face twist F(z;p,w) of sec. 3.2.3 (q-hypergeometric X block, times rho_F).
TwistMatrix face_twist_sl2(cplx z, const EllipticParams& params, const DynamicalParams& dyn,
                           const TruncationPolicy& policy = default_policy());

/// Yangian-type twist F_12(u) of sec. 4.3.2 (M-matrix of Gamma_1 ratios, times
/// the Gamma_2 normalization rho_F(u)).
TwistMatrix yangr_twist_sl2(cplx u, cplx r, const TruncationPolicy& policy = default_policy());

/// Finite twist F(w) = 1 (x) 1 + w(q - q^{-1})/(1-w) E_12 (x) E_21 of sec. 3.3.3.
TwistMatrix bql_twist_sl2(cplx q, cplx w);

/// Rational dynamical twist F' = 1 (x) 1 - sum_{a<b} 2/(x_a - x_b) E_ab (x) E_ba.
TwistMatrix dys_twist(int N, const DynamicalParams& dyn);

/// F21 = Flip F12 Flip (same scalar argument; per-family argument inversion is
/// the caller's responsibility).
Mat twist_flip(const TwistMatrix& F);

/// Gauge matrices of secs. 4.3.3 / 4.4.3: V, K_vv = V (x) V, and the evaluated
/// coboundary K_cob = D(u1) (x) D(u2) with D(u) = diag(e^{-i pi u/2r}, e^{+i pi u/2r}),
/// which conjugates R[DY_r(sl2)](u1-u2) into the gauged form with phases
/// e^{-+ i pi u / r}.
struct DyrGauges {
    Mat V;      // 2x2
    Mat K_vv;   // 4x4
    Mat K_cob;  // 4x4
};

DyrGauges dyr_gauges(cplx u1, cplx u2, cplx r);

} // namespace rml
