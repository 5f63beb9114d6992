#include "rmatrixlab/specfun.hpp"

#include <algorithm>
#include <cmath>

namespace rml {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kLn2Pi = 1.83787706640934548356065947281;
const cplx kI{0.0, 1.0};

struct TermBudget {
    std::int64_t left;
    explicit TermBudget(const TruncationPolicy& p) : left(p.max_terms) {}
    void spend(const char* what) {
        if (--left < 0) throw convergence_error(what);
    }
};

} // namespace

void NomeSet::validate() const {
    if (nomes.empty() || nomes.size() > 3)
        throw domain_error("NomeSet supports 1..3 nomes");
    for (const auto& p : nomes)
        if (!(std::abs(p) < 1.0)) throw domain_error("|p| must be < 1 for every nome");
}

void PeriodSet::validate() const {
    if (periods.empty() || periods.size() > 2)
        throw domain_error("PeriodSet supports order 1 or 2");
    for (const auto& w : periods)
        if (w == cplx(0.0)) throw domain_error("period must be nonzero");
    if (periods.size() == 2) {
        cplx ratio = periods[0] / periods[1];
        if (ratio.imag() == 0.0 && ratio.real() < 0.0)
            throw domain_error("omega_1/omega_2 on the negative real axis");
    }
}

namespace {

// One level of the recursive multiple product: accumulates
// sum over n of log-factors F(z p^n) while |z p^n| stays relevant.
// leaf = log(1 - w).  The tail bound uses sum_{k>n} |w||p|^k <= |w||p|^{n+1}/(1-|p|).
cplx log_qpoch_rec(cplx z, const std::vector<cplx>& ps, std::size_t level, double tol,
                   TermBudget& budget) {
    const cplx p = ps[level];
    const double ap = std::abs(p);
    cplx acc = 0.0;
    cplx w = z;
    while (true) {
        if (std::abs(w) <= tol * (1.0 - ap)) break;
        budget.spend("qpoch_inf exceeded max_terms");
        if (level == 0) {
            if (w == cplx(1.0, 0.0)) {
                // exact zero factor: the full product is 0; signal with -inf log
                return cplx(-std::numeric_limits<double>::infinity(), 0.0);
            }
            acc += std::log(1.0 - w);
        } else {
            acc += log_qpoch_rec(w, ps, level - 1, tol, budget);
        }
        w *= p;
    }
    return acc;
}

} // namespace

cplx log_qpoch_inf(cplx z, const NomeSet& nomes, const TruncationPolicy& policy) {
    if (z == cplx(0.0)) return 0.0;
    TermBudget budget(policy);
    return log_qpoch_rec(z, nomes.nomes, nomes.nomes.size() - 1, policy.tail_tolerance, budget);
}

cplx qpoch_inf(cplx z, const NomeSet& nomes, const TruncationPolicy& policy) {
    if (z == cplx(0.0)) return 1.0;
    // direct product form keeps bit-exactness of the trivial cases
    TermBudget budget(policy);
    const auto& ps = nomes.nomes;
    struct Walker {
        const std::vector<cplx>& ps;
        double tol;
        TermBudget& budget;
        cplx run(cplx z, std::size_t level) {
            const cplx p = ps[level];
            const double ap = std::abs(p);
            cplx acc = 1.0;
            cplx w = z;
            while (std::abs(w) > tol * (1.0 - ap)) {
                budget.spend("qpoch_inf exceeded max_terms");
                acc *= (level == 0) ? (1.0 - w) : run(w, level - 1);
                w *= p;
            }
            return acc;
        }
    } walker{ps, policy.tail_tolerance, budget};
    return walker.run(z, ps.size() - 1);
}

cplx theta_jacobi(cplx z, cplx p, const TruncationPolicy& policy) {
    if (z == cplx(0.0)) throw domain_error("theta_jacobi at z = 0");
    if (!(std::abs(p) < 1.0)) throw domain_error("theta_jacobi requires |p| < 1");
    NomeSet np{p};
    return qpoch_inf(z, np, policy) * qpoch_inf(p / z, np, policy) * qpoch_inf(p, np, policy);
}

cplx log_theta_jacobi(cplx z, cplx p, const TruncationPolicy& policy) {
    if (z == cplx(0.0)) throw domain_error("theta_jacobi at z = 0");
    if (!(std::abs(p) < 1.0)) throw domain_error("theta_jacobi requires |p| < 1");
    NomeSet np{p};
    return log_qpoch_inf(z, np, policy) + log_qpoch_inf(p / z, np, policy) +
           log_qpoch_inf(p, np, policy);
}

bool theta_zero_near(cplx x, cplx p, double reltol) {
    // zeros of Theta_p at x = p^k, k in Z
    const double ax = std::abs(x);
    if (ax == 0.0) return false;
    const double ap = std::abs(p);
    double k = std::log(ax) / std::log(ap);
    for (double kk : {std::floor(k), std::ceil(k)}) {
        cplx pk = std::pow(p, kk);
        if (std::abs(x - pk) <= reltol * std::max(1.0, std::abs(pk))) return true;
    }
    return false;
}

cplx theta_char(const Characteristics& c, const TruncationPolicy& policy) {
    if (!(c.tau.imag() > 0.0)) throw domain_error("theta_char requires Im tau > 0");
    // |term(m)| = exp(-pi Im(tau) (m+g1)^2 - 2 pi (m+g1) Im(xi+g2))
    const double it = c.tau.imag();
    const double iy = (c.xi + cplx(c.gamma2, 0)).imag();
    // Gaussian cut: need pi*it*m^2 - 2 pi |m| (|iy| + |g1| it) >> -log tol
    double disc = (std::abs(iy) / it + std::abs(c.gamma1) + 1.0);
    double need = std::sqrt(std::max(1.0, -std::log(policy.tail_tolerance) / (kPi * it)));
    std::int64_t M = static_cast<std::int64_t>(std::ceil(disc + need)) + 2;
    if (2 * M + 1 > policy.max_terms) throw convergence_error("theta_char exceeded max_terms");
    cplx s = 0.0;
    for (std::int64_t m = -M; m <= M; ++m) {
        cplx mg = cplx(static_cast<double>(m) + c.gamma1, 0);
        s += std::exp(kI * kPi * mg * mg * c.tau + 2.0 * kI * kPi * mg * (c.xi + c.gamma2));
    }
    return s;
}

cplx theta_char_product(const Characteristics& c, const TruncationPolicy& policy) {
    if (!(c.tau.imag() > 0.0)) throw domain_error("theta_char requires Im tau > 0");
    cplx p = std::exp(2.0 * kI * kPi * c.tau);
    cplx z = std::exp(kI * kPi * c.xi);
    cplx sign = std::pow(cplx(-1.0, 0.0), cplx(2.0 * c.gamma1 * c.gamma2, 0));
    cplx arg = -std::exp(2.0 * kI * kPi * c.gamma2) * std::pow(p, c.gamma1 + 0.5) * z * z;
    return sign * std::pow(p, 0.5 * c.gamma1 * c.gamma1) * std::pow(z, 2.0 * c.gamma1) *
           theta_jacobi(arg, p, policy);
}

bool gamma_pole_near(cplx x, const std::vector<cplx>& periods, double tol) {
    // lattice {-n1 w1 - n2 w2 : ni >= 0}; scan a bounded window
    if (periods.size() == 1) {
        cplx t = -x / periods[0];
        double n = std::round(t.real());
        return n >= -0.5 && std::abs(x + n * periods[0]) <= tol * std::max(1.0, std::abs(x));
    }
    // order 2: solve -x = n1 w1 + n2 w2 approximately over a small grid around
    // the least-squares solution
    const cplx w1 = periods[0], w2 = periods[1];
    // real 2x2 solve for (n1, n2)
    double a11 = w1.real(), a12 = w2.real(), a21 = w1.imag(), a22 = w2.imag();
    double det = a11 * a22 - a12 * a21;
    double n1c, n2c;
    if (std::abs(det) > 1e-12) {
        n1c = (-x.real() * a22 + x.imag() * a12) / det;
        n2c = (x.real() * a21 - x.imag() * a11) / det;
    } else {
        // collinear periods: project
        n1c = -(x / w1).real();
        n2c = 0.0;
    }
    for (double d1 = std::floor(n1c) - 1; d1 <= std::ceil(n1c) + 1; ++d1)
        for (double d2 = std::floor(n2c) - 1; d2 <= std::ceil(n2c) + 1; ++d2) {
            if (d1 < -0.5 || d2 < -0.5) continue;
            if (std::abs(x + d1 * w1 + d2 * w2) <= tol * std::max(1.0, std::abs(x))) return true;
        }
    return false;
}

namespace {

cplx log_gamma1(cplx x, cplx w) {
    return (x / w) * std::log(w) - 0.5 * (kLn2Pi + std::log(w)) + log_gamma(x / w);
}

// log Gamma_2 via the Hurwitz reduction
//   zeta_2(x,s|w1,w2) = sum_{n>=0} w1^{-s} zetaH(s, (x + n w2)/w1)
// Euler-Maclaurin in n, with term-wise analytic d/ds at s = 0.  Uses
//   zetaH(0,a)   = 1/2 - a
//   zetaH'(0,a)  = log Gamma(a) - log(2 pi)/2
//   zetaH(-1,a)  = -(a^2 - a + 1/6)/2
//   s zetaH(s+1,a) -> 1 - s psi(a)  as s -> 0
cplx log_gamma2(cplx x, cplx w1, cplx w2, const TruncationPolicy& policy) {
    const cplx lw1 = std::log(w1);
    auto a_of = [&](int n) { return (x + static_cast<double>(n) * w2) / w1; };
    int M = 0;
    while (true) {
        cplx a = a_of(M);
        if (a.real() >= 20.0 && std::abs(a) >= 20.0) break;
        if (++M > 100000) throw convergence_error("log_gamma2 head did not stabilize");
    }
    M = std::max(M, 8);

    cplx tot = 0.0;
    for (int n = 0; n < M; ++n) {
        cplx a = a_of(n);
        tot += -lw1 * (0.5 - a) + log_gamma(a) - 0.5 * kLn2Pi;
    }
    const cplx aM = a_of(M);
    const cplx r = w2 / w1;

    // integral term: w1^{-s} (1/r) zetaH(s-1, aM)/(s-1)
    cplx zm1 = -(aM * aM - aM + 1.0 / 6.0) / 2.0;
    cplx zpm1 = hurwitz_zeta_ds(cplx(-1.0, 0.0), aM);
    tot += (1.0 / r) * (lw1 * zm1 - zpm1 - zm1);

    // half term
    tot += 0.5 * (-lw1 * (0.5 - aM) + log_gamma(aM) - 0.5 * kLn2Pi);

    // k = 1: B2/2! r d/ds[w1^{-s} s zetaH(s+1,aM)] = r/12 (-lw1 - psi(aM))
    tot += (1.0 / 12.0) * r * (-lw1 - digamma(aM));

    // k >= 2: B_2k/(2k)! r^{2k-1} (2k-2)! zetaH(2k-1, aM)
    static const double B2k[] = {1.0 / 6,   -1.0 / 30,     1.0 / 42,     -1.0 / 30,
                                 5.0 / 66,  -691.0 / 2730, 7.0 / 6,      -3617.0 / 510};
    cplx rp = r * r * r;
    for (int k = 2; k <= 7; ++k) {
        double fact = 1.0;  // (2k)! / (2k-2)! = (2k)(2k-1)
        fact = (2.0 * k) * (2.0 * k - 1.0);
        tot += B2k[k - 1] / fact * rp * hurwitz_zeta(cplx(2.0 * k - 1.0, 0.0), aM);
        rp *= r * r;
    }
    (void)policy;
    return tot;
}

} // namespace

cplx log_multiple_gamma(int r, cplx x, const PeriodSet& periods, const TruncationPolicy& policy) {
    if (r != static_cast<int>(periods.periods.size()))
        throw domain_error("multiple_gamma order must match period count");
    if (gamma_pole_near(x, periods.periods))
        throw pole_error("multiple_gamma argument on the period lattice");
    if (r == 1) return log_gamma1(x, periods.periods[0]);
    return log_gamma2(x, periods.periods[0], periods.periods[1], policy);
}

cplx multiple_gamma(int r, cplx x, const PeriodSet& periods, const TruncationPolicy& policy) {
    return std::exp(log_multiple_gamma(r, x, periods, policy));
}

cplx log_multiple_sine(int r, cplx x, const PeriodSet& periods, const TruncationPolicy& policy) {
    if (r != static_cast<int>(periods.periods.size()))
        throw domain_error("multiple_sine order must match period count");
    if (r == 1) return std::log(2.0 * std::sin(kPi * x / periods.periods[0]));
    cplx tot = periods.periods[0] + periods.periods[1];
    return log_multiple_gamma(2, tot - x, periods, policy) -
           log_multiple_gamma(2, x, periods, policy);
}

cplx multiple_sine(int r, cplx x, const PeriodSet& periods, const TruncationPolicy& policy) {
    return std::exp(log_multiple_sine(r, x, periods, policy));
}

cplx q_2f1(cplx A, cplx B, cplx C, cplx q, cplx z, const TruncationPolicy& policy) {
    if (!(std::abs(q) < 1.0)) throw domain_error("q_2f1 requires |q| < 1");
    if (!(std::abs(z) < 1.0)) throw domain_error("q_2f1 requires |z| < 1");
    cplx s = 1.0, term = 1.0;
    cplx qa = A, qb = B, qc = C, qq = q;
    std::int64_t n = 0;
    // compensated accumulation in extended mode
    cplx comp = 0.0;
    while (n < policy.max_terms) {
        cplx den = (1.0 - qc) * (1.0 - qq);
        if (std::abs(den) < 1e-14 * std::max(1.0, std::abs((1.0 - qa) * (1.0 - qb))))
            throw pole_error("q_2f1 denominator (C;q)_n (q;q)_n vanishes");
        term *= (1.0 - qa) * (1.0 - qb) / den * z;
        if (policy.precision_mode == PrecisionMode::extended) {
            cplx y = term - comp;
            cplx t = s + y;
            comp = (t - s) - y;
            s = t;
        } else {
            s += term;
        }
        qa *= q; qb *= q; qc *= q; qq *= q;
        ++n;
        if (std::abs(term) < policy.tail_tolerance * std::max(1.0, std::abs(s)) && n > 2) return s;
    }
    throw convergence_error("q_2f1 exceeded max_terms");
}

} // namespace rml
