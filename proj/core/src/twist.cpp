#include "rmatrixlab/twist.hpp"

#include <cmath>
#include <sstream>

namespace rml {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
const cplx kI{0.0, 1.0};

std::string snap2(const char* a, cplx va, const char* b, cplx vb) {
    std::ostringstream os;
    os.precision(17);
    os << a << "=" << va << " " << b << "=" << vb;
    return os.str();
}

} // namespace

TwistMatrix vertex_twist_sl2(cplx z, const EllipticParams& params, const TruncationPolicy& pol) {
    const cplx q = params.q, p = params.p;
    if (!(std::abs(p) < 1.0)) throw domain_error("vertex twist requires |p| < 1");
    const cplx sp = std::sqrt(p);
    NomeSet np{p}, npq{p, q * q * q * q};
    auto ratio = [&](cplx num, cplx den) {
        cplx d = qpoch_inf(den, np, pol);
        if (std::abs(d) < 1e-13) throw pole_error("vertex twist product denominator");
        return qpoch_inf(num, np, pol) / d;
    };
    const cplx apd = ratio(-sp * q * z, -sp / q * z);
    const cplx amd = ratio(sp * q * z, sp / q * z);
    const cplx bpc = ratio(-p * q * z, -p / q * z);
    const cplx bmc = ratio(p * q * z, p / q * z);
    Mat F = Mat::Zero(4, 4);
    F(0, 0) = F(3, 3) = (apd + amd) / 2.0;
    F(0, 3) = F(3, 0) = (apd - amd) / 2.0;
    F(1, 1) = F(2, 2) = (bpc + bmc) / 2.0;
    F(1, 2) = F(2, 1) = (bpc - bmc) / 2.0;
    const cplx z2 = z * z;
    cplx lrho = log_qpoch_inf(p * z2, npq, pol) + log_qpoch_inf(p * std::pow(q, 4) * z2, npq, pol) -
                2.0 * log_qpoch_inf(p * q * q * z2, npq, pol);
    F *= std::exp(lrho);
    return {2, F, TwistProvenance::closed_form, snap2("z", z, "p", p)};
}

TwistMatrix face_twist_sl2(cplx z, const EllipticParams& params, const DynamicalParams& dyn,
                           const TruncationPolicy& pol) {
    const cplx q = params.q, p = params.p;
    const cplx w = dyn.w(0, 1, q);
    if (std::abs(w - 1.0) < 1e-10 || std::abs(w - p) < 1e-10)
        throw pole_error("face twist at degenerate w");
    const cplx arg = p * z / (q * q);
    if (!(std::abs(arg) < 1.0)) throw domain_error("face twist needs |p q^{-2} z| < 1");
    const cplx qm = q - 1.0 / q;
    Mat F = Mat::Zero(4, 4);
    F(0, 0) = F(3, 3) = 1.0;
    F(1, 1) = q_2f1(w * q * q, q * q, w, p, arg, pol);
    F(1, 2) = w * qm / (1.0 - w) * q_2f1(w * q * q, p * q * q, p * w, p, arg, pol);
    F(2, 1) = z * (p / w) * qm / (1.0 - p / w) *
              q_2f1(p / w * q * q, p * q * q, p * p / w, p, arg, pol);
    F(2, 2) = q_2f1(p / w * q * q, q * q, p / w, p, arg, pol);
    NomeSet npq{p, q * q * q * q};
    cplx lrho = log_qpoch_inf(p * z, npq, pol) + log_qpoch_inf(p * std::pow(q, 4) * z, npq, pol) -
                2.0 * log_qpoch_inf(p * q * q * z, npq, pol);
    F *= std::exp(lrho);
    return {2, F, TwistProvenance::difference_iterate, snap2("z", z, "w", w)};
}

TwistMatrix yangr_twist_sl2(cplx u, cplx r, const TruncationPolicy& pol) {
    PeriodSet w2r{2.0 * r};
    auto lg1 = [&](cplx x) { return log_multiple_gamma(1, x, w2r, pol); };
    const cplx bp = std::exp(lg1(u + r - 1.0) - lg1(u + r + 1.0));
    const cplx bm = std::exp(lg1(u + 2.0 * r - 1.0) - lg1(u + 2.0 * r + 1.0));
    PeriodSet w2{cplx(2.0, 0.0), r};
    auto lg2 = [&](cplx x) { return log_multiple_gamma(2, x, w2, pol); };
    const cplx lrho = 2.0 * lg2(u + 1.0 + r) - lg2(u + r) - lg2(u + 2.0 + r);
    Mat F = Mat::Zero(4, 4);
    F(0, 0) = F(3, 3) = 1.0;
    F(1, 1) = F(2, 2) = (bp + bm) / 2.0;
    F(1, 2) = F(2, 1) = (bp - bm) / 2.0;
    F *= std::exp(lrho);
    return {2, F, TwistProvenance::closed_form, snap2("u", u, "r", r)};
}

TwistMatrix bql_twist_sl2(cplx q, cplx w) {
    if (std::abs(w - 1.0) < 1e-10) throw pole_error("bql twist at w = 1");
    Mat F = Mat::Identity(4, 4);
    F(1, 2) = w * (q - 1.0 / q) / (1.0 - w);
    return {2, F, TwistProvenance::finite_formula, snap2("q", q, "w", w)};
}

TwistMatrix dys_twist(int N, const DynamicalParams& dyn) {
    dyn.validate();
    Mat F = Mat::Identity(N * N, N * N);
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b) {
            const cplx gap = dyn.x[a] - dyn.x[b];
            if (std::abs(gap) < 1e-10) throw pole_error("dys twist: coincident coordinates");
            F(a * N + b, b * N + a) -= 2.0 / gap;
        }
    return {N, F, TwistProvenance::finite_formula, "x[...]"};
}

Mat twist_flip(const TwistMatrix& F) { return r21(F.entries, F.n_dim); }

DyrGauges dyr_gauges(cplx u1, cplx u2, cplx r) {
    DyrGauges g;
    g.V = Mat(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    g.V << s, s, -s, s;
    g.K_vv = kron(g.V, g.V);
    auto D = [&](cplx u) {
        Mat d = Mat::Zero(2, 2);
        d(0, 0) = std::exp(-kI * kPi * u / (2.0 * r));
        d(1, 1) = std::exp(kI * kPi * u / (2.0 * r));
        return d;
    };
    g.K_cob = kron(D(u1), D(u2));
    return g;
}

} // namespace rml
