#pragma once

#include <vector>

#include "rmatrixlab/complexfun.hpp"
#include "rmatrixlab/errors.hpp"
#include "rmatrixlab/truncation.hpp"

namespace rml {

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Nomes p_1..p_m of a multiple infinite product; every |p_i| < 1.
struct NomeSet {
    std::vector<cplx> nomes;

    NomeSet(std::initializer_list<cplx> ps) : nomes(ps) { validate(); }
    explicit NomeSet(std::vector<cplx> ps) : nomes(std::move(ps)) { validate(); }
    void validate() const;
};

/// Rational characteristics (gamma1, gamma2) with xi and tau (Im tau > 0).
struct Characteristics {
    double gamma1 = 0;
    double gamma2 = 0;
    cplx xi{};
    cplx tau{};
};

/// Periods omega_1..omega_r of a multiple Gamma function, r in {1,2}.
struct PeriodSet {
    std::vector<cplx> periods;

    PeriodSet(std::initializer_list<cplx> ws) : periods(ws) { validate(); }
    void validate() const;
};

// ---------------------------------------------------------------------------
// Infinite q-products and theta functions
// ---------------------------------------------------------------------------

/// (z; p_1,...,p_m)_inf = prod_{n_i >= 0} (1 - z p_1^{n_1} ... p_m^{n_m}),  m <= 3.
///
/// The truncated product carries a relative tail bound <= policy.tail_tolerance,
/// derived from the geometric decay of |z p_1^{n_1} ... p_m^{n_m}|.
cplx qpoch_inf(cplx z, const NomeSet& nomes, const TruncationPolicy& policy = default_policy());

/// log of qpoch_inf, accumulated as a sum of log(1 - w) terms.  Exponentiating
/// reproduces qpoch_inf; keeping the log form avoids under/overflow in the
/// balanced normalization-factor ratios near the scaling limits.
cplx log_qpoch_inf(cplx z, const NomeSet& nomes, const TruncationPolicy& policy = default_policy());

/// Theta_p(z) = (z;p)_inf (p z^{-1};p)_inf (p;p)_inf.
cplx theta_jacobi(cplx z, cplx p, const TruncationPolicy& policy = default_policy());

cplx log_theta_jacobi(cplx z, cplx p, const TruncationPolicy& policy = default_policy());

/// true if x is within reltol of a zero p^k (k in Z) of Theta_p.
bool theta_zero_near(cplx x, cplx p, double reltol = 1e-10);

/// Jacobi theta with rational characteristics,
///   theta[g1;g2](xi,tau) = sum_m exp(i pi (m+g1)^2 tau + 2 i pi (m+g1)(xi+g2)),
/// truncated symmetrically with a Gaussian tail bound.
cplx theta_char(const Characteristics& c, const TruncationPolicy& policy = default_policy());

/// Product form of the same function via
///   theta[g1;g2](xi,tau) = (-1)^{2 g1 g2} p^{g1^2/2} z^{2 g1}
///                          Theta_p(-e^{2 i pi g2} p^{g1+1/2} z^2),
/// with p = e^{2 i pi tau}, z = e^{i pi xi}.
cplx theta_char_product(const Characteristics& c, const TruncationPolicy& policy = default_policy());

// ---------------------------------------------------------------------------
// Multiple Gamma / sine functions
// ---------------------------------------------------------------------------

/// log Gamma_r(x | omega_1..omega_r) for r in {1,2}.
///
/// r=1:  Gamma_1(x|w) = w^{x/w} / sqrt(2 pi w) * Gamma(x/w).
/// r=2:  d/ds zeta_2(x,s)|_{s=0} with zeta_2 reduced to Hurwitz-zeta kernels,
///       Euler-Maclaurin accelerated in the second summation index and
///       differentiated term-wise at s = 0.
cplx log_multiple_gamma(int r, cplx x, const PeriodSet& periods,
                        const TruncationPolicy& policy = default_policy());

cplx multiple_gamma(int r, cplx x, const PeriodSet& periods,
                    const TruncationPolicy& policy = default_policy());

/// log S_r;  S_1(x|w) = 2 sin(pi x / w),  S_2(x|w1,w2) = Gamma_2(w1+w2-x)/Gamma_2(x).
cplx log_multiple_sine(int r, cplx x, const PeriodSet& periods,
                       const TruncationPolicy& policy = default_policy());

cplx multiple_sine(int r, cplx x, const PeriodSet& periods,
                   const TruncationPolicy& policy = default_policy());

/// true if x is within tol of the lattice {-n1 w1 - ... - nr wr : ni >= 0}.
bool gamma_pole_near(cplx x, const std::vector<cplx>& periods, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Basic hypergeometric series
// ---------------------------------------------------------------------------

/// 2phi1-type series sum_n (A;q)_n (B;q)_n / ((C;q)_n (q;q)_n) z^n with the
/// nome-powers A = q^a, B = q^b, C = q^c passed directly.  Requires |q| < 1,
/// |z| < 1.
cplx q_2f1(cplx A, cplx B, cplx C, cplx q, cplx z,
           const TruncationPolicy& policy = default_policy());

} // namespace rml
