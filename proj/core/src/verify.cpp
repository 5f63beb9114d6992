#include "rmatrixlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include <json.hpp>

#include "rmatrixlab/modes.hpp"
#include "rmatrixlab/serialize.hpp"

namespace rml {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
const cplx kI{0.0, 1.0};

std::string hash_params(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

std::uint64_t derive_seed(std::uint64_t seed, const std::string& id) {
    std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ull;
    for (unsigned char c : id) h = (h ^ c) * 1099511628211ull;
    return h;
}

cplx pair_arg(SpectralConvention conv, cplx a, cplx b) {
    return conv == SpectralConvention::multiplicative ? a / b : a - b;
}

std::string spec_id(const CheckSpec& spec) {
    std::ostringstream os;
    switch (spec.kind) {
        case CheckKind::ybe: os << "ybe"; break;
        case CheckKind::dybe: os << "dybe"; break;
        case CheckKind::matrix_property: os << "prop" << static_cast<int>(*spec.property); break;
        case CheckKind::twist_conjugation: os << "twist" << static_cast<int>(*spec.twist); break;
        case CheckKind::limit: os << "limit" << static_cast<int>(*spec.limit); break;
        case CheckKind::specfun: os << "specfun"; break;
        case CheckKind::centrality: os << "central"; break;
        case CheckKind::sklyanin: os << "sklyanin"; break;
    }
    os << ":" << spec.family;
    if (spec.N) os << ":N" << spec.N;
    return os.str();
}

void maybe_inject_fault(const CheckSpec& spec, const std::string& id, Mat& M) {
    if (spec.fault && spec.fault->check_id == id && M.rows() > 1)
        M(0, 1) += spec.fault->epsilon;
}

} // namespace

CheckResult check_ybe(const Registry& reg, const CheckSpec& spec) {
    const FamilyInfo& fam = reg.family(spec.family);
    const int N = spec.N;
    CheckResult out;
    out.id = spec_id(spec);
    out.kind = "ybe";
    out.family = spec.family;
    out.tol = spec.tol;
    SampleRng rng(derive_seed(spec.seed, out.id));
    double worst = 0.0;
    std::string snap;
    for (int k = 0; k < spec.points; ++k) {
        int retries = 0;
        SampledPoint pt = sample_point(fam, N, rng, &retries);
        out.retries += retries;
        cplx a12 = pair_arg(fam.convention, pt.z1, pt.z2);
        cplx a13 = pair_arg(fam.convention, pt.z1, pt.z3);
        cplx a23 = pair_arg(fam.convention, pt.z2, pt.z3);
        Mat R12 = build_family(spec.family, N, a12, pt, false).entries;
        Mat R13 = build_family(spec.family, N, a13, pt, false).entries;
        Mat R23 = build_family(spec.family, N, a23, pt, false).entries;
        maybe_inject_fault(spec, out.id, R12);
        Mat L = embed_pair(R12, 1, 2, N) * embed_pair(R13, 1, 3, N) * embed_pair(R23, 2, 3, N);
        Mat Rr = embed_pair(R23, 2, 3, N) * embed_pair(R13, 1, 3, N) * embed_pair(R12, 1, 2, N);
        double scale = std::max(1.0, max_abs(L));
        worst = std::max(worst, max_abs(L - Rr) / scale);
        if (k == 0) snap = build_family(spec.family, N, a12, pt, false).params;
    }
    out.samples = spec.points;
    out.params_hash = hash_params(snap);
    out.residual = worst;
    out.pass = worst <= spec.tol;
    return out;
}

namespace {

// factor with a dynamical shift on the spectator space `shift_site`:
// sum over basis vectors e_c of that space of R(arg, x + 2 eta e_c) projected
// on e_c.
Mat dybe_factor(const std::string& family, int N, cplx arg, const SampledPoint& pt, int site_a,
                int site_b, int shift_site, int eta) {
    const int dim = N * N * N;
    Mat M = Mat::Zero(dim, dim);
    for (int c = 0; c < N; ++c) {
        DynamicalParams dyn = pt.dyn;
        if (eta != 0) dyn.x[c] += 2.0 * eta;
        Mat R = build_family(family, N, arg, pt, false, &dyn).entries;
        Mat full = embed_pair(R, site_a, site_b, N);
        // project the spectator index on c
        auto idx = [&](int i, int j, int k) { return (i * N + j) * N + k; };
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                for (int ip = 0; ip < N; ++ip)
                    for (int jp = 0; jp < N; ++jp) {
                        int row = 0, col = 0;
                        if (shift_site == 3) {
                            row = idx(i, j, c);
                            col = idx(ip, jp, c);
                        } else if (shift_site == 1) {
                            row = idx(c, i, j);
                            col = idx(c, ip, jp);
                        } else {
                            row = idx(i, c, j);
                            col = idx(ip, c, jp);
                        }
                        M(row, col) += full(row, col);
                    }
    }
    return M;
}

double dybe_residual_at(const std::string& family, int N, const SampledPoint& pt,
                        SpectralConvention conv, int eta) {
    cplx a12 = pair_arg(conv, pt.z1, pt.z2);
    cplx a13 = pair_arg(conv, pt.z1, pt.z3);
    cplx a23 = pair_arg(conv, pt.z2, pt.z3);
    Mat R12s = dybe_factor(family, N, a12, pt, 1, 2, 3, eta);
    Mat R13 = dybe_factor(family, N, a13, pt, 1, 3, 2, 0);
    Mat R23s = dybe_factor(family, N, a23, pt, 2, 3, 1, eta);
    Mat R23 = dybe_factor(family, N, a23, pt, 2, 3, 1, 0);
    Mat R13s = dybe_factor(family, N, a13, pt, 1, 3, 2, eta);
    Mat R12 = dybe_factor(family, N, a12, pt, 1, 2, 3, 0);
    Mat L = R12s * R13 * R23s;
    Mat R = R23 * R13s * R12;
    return max_abs(L - R) / std::max(1.0, max_abs(L));
}

} // namespace

ShiftConvention calibrate_shift(const Registry& reg, const std::string& family, int N,
                                std::uint64_t seed) {
    const FamilyInfo& fam = reg.family(family);
    SampleRng rng(derive_seed(seed, "calibrate:" + family));
    int retries = 0;
    SampledPoint pt = sample_point(fam, N, rng, &retries);
    double plus = dybe_residual_at(family, N, pt, fam.convention, +1);
    double minus = dybe_residual_at(family, N, pt, fam.convention, -1);
    if (plus < 1e-6 && minus > 1e-2) return {+1};
    if (minus < 1e-6 && plus > 1e-2) return {-1};
    throw domain_error("shift convention undetermined for " + family);
}

CheckResult check_dybe(const Registry& reg, const CheckSpec& spec, ShiftConvention conv) {
    const FamilyInfo& fam = reg.family(spec.family);
    const int N = spec.N;
    CheckResult out;
    out.id = spec_id(spec);
    out.kind = "dybe";
    out.family = spec.family;
    out.tol = spec.tol;
    SampleRng rng(derive_seed(spec.seed, out.id));
    double worst = 0.0;
    std::string snap;
    for (int k = 0; k < spec.points; ++k) {
        int retries = 0;
        SampledPoint pt = sample_point(fam, N, rng, &retries);
        out.retries += retries;
        worst = std::max(worst, dybe_residual_at(spec.family, N, pt, fam.convention, conv.eta));
        if (k == 0) snap = build_family(spec.family, N, pair_arg(fam.convention, pt.z1, pt.z2), pt, false).params;
    }
    out.samples = spec.points;
    out.params_hash = hash_params(snap);
    out.residual = worst;
    out.pass = worst <= spec.tol;
    out.note = conv.eta > 0 ? "eta=+1" : "eta=-1";
    return out;
}

namespace {

struct PropCtx {
    SampleRng rng;
    explicit PropCtx(std::uint64_t s) : rng(s) {}
    EllipticParams ell(double qlo = 0.35, double qhi = 0.6, double plo = 0.08, double phi = 0.25) {
        EllipticParams e;
        e.q = rng.uniform(qlo, qhi);
        e.p = rng.uniform(plo, phi);
        return e;
    }
    cplx zpt() { return rng.annulus(0.4, 0.85, 0.08, 0.9); }
};

double prop_residual(MatrixProperty prop, int N, PropCtx& ctx, const TruncationPolicy& pol) {
    switch (prop) {
        case MatrixProperty::unitarity: {
            EllipticParams e = ctx.ell();
            cplx z = ctx.zpt();
            if (N == 2) {
                Mat R = r_elliptic_vertex(2, SpectralPoint::z(z), e, VertexForm::raw, true, pol).entries;
                Mat S = r_elliptic_vertex(2, SpectralPoint::z(1.0 / z), e, VertexForm::raw, true, pol).entries;
                return max_abs(R * r21(S, 2) - Mat::Identity(4, 4));
            }
            LogCoords lc{LogCoords::xi_of(z), LogCoords::zeta_of(e.q), LogCoords::tau_of(e.p)};
            Mat R = r_elliptic_vertex_log(N, lc, VertexForm::hat, true, pol).entries;
            LogCoords lcm{-lc.xi, lc.zeta, lc.tau};
            Mat S = r_elliptic_vertex_log(N, lcm, VertexForm::hat, true, pol).entries;
            return max_abs(R * r21(S, N) - Mat::Identity(N * N, N * N));
        }
        case MatrixProperty::crossing_sl2: {
            EllipticParams e = ctx.ell();
            cplx z = ctx.zpt();
            Mat R21t1 = partial_transpose(
                r21(r_elliptic_vertex(2, SpectralPoint::z(1.0 / z), e, VertexForm::raw, true, pol)
                        .entries, 2), 1, 2);
            Mat Rm = r_elliptic_vertex(2, SpectralPoint::z(-z / e.q), e, VertexForm::raw, true, pol)
                         .entries;
            Mat s1 = Mat::Zero(2, 2);
            s1(0, 1) = s1(1, 0) = 1.0;
            Mat C = kron(s1, Mat::Identity(2, 2));
            return max_abs(R21t1 - C * Rm * C);
        }
        case MatrixProperty::crossing_slN: {
            EllipticParams e = ctx.ell();
            cplx z = ctx.zpt();
            LogCoords lc{LogCoords::xi_of(z), LogCoords::zeta_of(e.q), LogCoords::tau_of(e.p)};
            Mat A = partial_transpose(r_elliptic_vertex_log(N, lc, VertexForm::hat, true, pol).entries, 2, N);
            LogCoords lcc{-static_cast<double>(N) * lc.zeta - lc.xi, lc.zeta, lc.tau};
            Mat B = partial_transpose(
                r21(r_elliptic_vertex_log(N, lcc, VertexForm::hat, true, pol).entries, N), 2, N);
            return max_abs(A * B - Mat::Identity(N * N, N * N));
        }
        case MatrixProperty::antisymmetry_sl2: {
            EllipticParams e = ctx.ell();
            cplx z = ctx.zpt();
            Mat L = r_elliptic_vertex(2, SpectralPoint::z(-z), e, VertexForm::raw, true, pol).entries;
            Mat R = r_elliptic_vertex(2, SpectralPoint::z(z), e, VertexForm::raw, true, pol).entries;
            Mat s3 = Mat::Zero(2, 2);
            s3(0, 0) = 1.0;
            s3(1, 1) = -1.0;
            Mat C = kron(s3, Mat::Identity(2, 2));
            return max_abs(L + C * R * C);
        }
        case MatrixProperty::antisymmetry_slN: {
            EllipticParams e = ctx.ell();
            cplx z = ctx.zpt();
            LogCoords lc{LogCoords::xi_of(z), LogCoords::zeta_of(e.q), LogCoords::tau_of(e.p)};
            LogCoords lcm{lc.xi + 1.0, lc.zeta, lc.tau};   // -z with the canonical branch
            Mat L = r_elliptic_vertex_log(N, lcm, VertexForm::hat, true, pol).entries;
            Mat R = r_elliptic_vertex_log(N, lc, VertexForm::hat, true, pol).entries;
            Mat g = Mat::Zero(N, N);
            for (int i = 0; i < N; ++i) g(i, i) = std::exp(2.0 * kI * kPi * (i + 1.0) / N);
            cplx om = std::exp(2.0 * kI * kPi / static_cast<double>(N));
            Mat C1 = kron(g.inverse(), Mat::Identity(N, N));
            Mat C2 = kron(g, Mat::Identity(N, N));
            return max_abs(L - om * C1 * R * C2);
        }
        case MatrixProperty::quasiperiodicity_sl2: {
            EllipticParams e = ctx.ell();
            cplx z = ctx.zpt();
            Mat L = r_elliptic_vertex(2, SpectralPoint::z(-std::sqrt(e.p) * z), e, VertexForm::tilde,
                                      true, pol).entries;
            Mat Rinv = r21(r_elliptic_vertex(2, SpectralPoint::z(1.0 / z), e, VertexForm::tilde,
                                             true, pol).entries, 2).inverse();
            Mat s1 = Mat::Zero(2, 2);
            s1(0, 1) = s1(1, 0) = 1.0;
            Mat C = kron(s1, Mat::Identity(2, 2));
            return max_abs(L - C * Rinv * C);
        }
        case MatrixProperty::quasiperiodicity_slN: {
            EllipticParams e = ctx.ell();
            cplx z = ctx.zpt();
            LogCoords lc{LogCoords::xi_of(z), LogCoords::zeta_of(e.q), LogCoords::tau_of(e.p)};
            LogCoords lcm{lc.xi + lc.tau + 1.0, lc.zeta, lc.tau};  // -p^{1/2} z
            Mat L = r_elliptic_vertex_log(N, lcm, VertexForm::tilde, true, pol).entries;
            LogCoords lci{-lc.xi, lc.zeta, lc.tau};
            Mat Rinv = r21(r_elliptic_vertex_log(N, lci, VertexForm::tilde, true, pol).entries, N)
                           .inverse();
            Mat gh = Mat::Zero(N, N), h = Mat::Zero(N, N);
            for (int i = 0; i < N; ++i) gh(i, i) = std::exp(kI * kPi * (i + 1.0) / N);
            for (int i = 0; i < N; ++i) h(i, (i + 1) % N) = 1.0;
            Mat GH = kron(gh * h * gh, Mat::Identity(N, N));
            return max_abs(L - GH.inverse() * Rinv * GH);
        }
        case MatrixProperty::transpose_inverse_exchange: {
            EllipticParams e = ctx.ell();
            cplx z = ctx.zpt();
            Mat A = partial_transpose(
                        r_elliptic_vertex(2, SpectralPoint::z(z), e, VertexForm::tilde, true, pol)
                            .entries, 2, 2).inverse();
            Mat B = partial_transpose(
                r_elliptic_vertex(2, SpectralPoint::z(e.q * e.q * z), e, VertexForm::tilde, true,
                                  pol).entries.inverse(), 2, 2);
            return max_abs(A - B);
        }
        case MatrixProperty::zN_symmetry: {
            EllipticParams e = ctx.ell();
            cplx z = ctx.zpt();
            Mat R = (N == 2) ? r_elliptic_vertex(2, SpectralPoint::z(z), e, VertexForm::raw, false, pol).entries
                             : r_elliptic_vertex(N, SpectralPoint::z(z), e, VertexForm::raw, false, pol).entries;
            double worst = 0.0;
            for (int s = 1; s < N; ++s)
                for (int a = 0; a < N; ++a)
                    for (int b = 0; b < N; ++b)
                        for (int c = 0; c < N; ++c)
                            for (int d = 0; d < N; ++d)
                                worst = std::max(
                                    worst,
                                    std::abs(R(((c + s) % N) * N + (d + s) % N,
                                               ((a + s) % N) * N + (b + s) % N) -
                                             R(c * N + d, a * N + b)));
            return worst;
        }
        case MatrixProperty::tau_periodicity: {
            EllipticParams e = ctx.ell();
            cplx z = ctx.zpt();
            double worst = std::abs(tau_factor(z * e.q * e.q, e.q, pol) - tau_factor(z, e.q, pol));
            if (N > 2) {
                cplx xi = LogCoords::xi_of(z);
                cplx zeta = LogCoords::zeta_of(e.q);
                worst = std::max(worst, std::abs(tau_n_factor(N, xi + static_cast<double>(N) * zeta, e.q, pol) -
                                                 tau_n_factor(N, xi, e.q, pol)));
                worst = std::max(worst, std::abs(tau_n_factor(N, -xi, e.q, pol) -
                                                 1.0 / tau_n_factor(N, xi, e.q, pol)));
            }
            return worst;
        }
    }
    throw domain_error("unknown matrix property");
}

} // namespace

CheckResult check_matrix_property(const Registry& reg, const CheckSpec& spec) {
    (void)reg;
    CheckResult out;
    out.id = spec_id(spec);
    out.kind = "matrix_property";
    out.family = spec.family;
    out.tol = spec.tol;
    PropCtx ctx(derive_seed(spec.seed, out.id));
    TruncationPolicy pol;
    double worst = 0.0;
    for (int k = 0; k < spec.points; ++k)
        worst = std::max(worst, prop_residual(*spec.property, spec.N, ctx, pol));
    out.samples = spec.points;
    out.params_hash = hash_params(out.id);
    out.residual = worst;
    out.pass = worst <= spec.tol;
    return out;
}

namespace {

double twist_conjugation_residual(TwistKind kind, int N, PropCtx& ctx, const TruncationPolicy& pol) {
    switch (kind) {
        case TwistKind::vertex: {
            EllipticParams e = ctx.ell();
            cplx z = ctx.zpt();
            TwistMatrix F12 = vertex_twist_sl2(z, e, pol);
            Mat F21 = r21(vertex_twist_sl2(1.0 / z, e, pol).entries, 2);
            Mat R = r_trigonometric(TrigVariant::uq_sl2_princ, nullptr, e, nullptr, true, pol)
                        .entries;  // placeholder, replaced below
            SpectralPoint zp = SpectralPoint::z(z);
            R = r_trigonometric(TrigVariant::uq_sl2_princ, &zp, e, nullptr, true, pol).entries;
            Mat tgt = r_elliptic_vertex(2, zp, e, VertexForm::tilde, true, pol).entries;
            return max_abs(F21 * R * F12.entries.inverse() - tgt);
        }
        case TwistKind::face: {
            EllipticParams e = ctx.ell();
            // |p/q^2| < |z| < |q^2/p| keeps both F(z) and F(1/z) convergent
            double lo = std::abs(e.p / (e.q * e.q));
            cplx z = ctx.rng.annulus(std::min(0.92, lo + 0.25 * (1.0 / lo - lo)), 0.95, 0.1, 0.8);
            DynamicalParams dyn = DynamicalParams::from_s(ctx.rng.uniform(0.5, 1.2));
            TwistMatrix F12 = face_twist_sl2(z, e, dyn, pol);
            Mat F21 = r21(face_twist_sl2(1.0 / z, e, dyn, pol).entries, 2);
            SpectralPoint zp = SpectralPoint::z(z);
            Mat R = r_trigonometric(TrigVariant::uq_sl2_homog, &zp, e, nullptr, true, pol).entries;
            Mat tgt = r_elliptic_face(2, zp, e, dyn, FaceForm::jkos, true, pol).entries;
            return max_abs(F21 * R * F12.entries.inverse() - tgt);
        }
        case TwistKind::yangr: {
            cplx u = cplx(ctx.rng.uniform(0.3, 1.4), ctx.rng.uniform(-0.2, 0.2));
            cplx r = ctx.rng.uniform(4.0, 8.0);
            TwistMatrix F12 = yangr_twist_sl2(u, r, pol);
            Mat F21 = r21(yangr_twist_sl2(-u, r, pol).entries, 2);
            SpectralPoint up = SpectralPoint::u(u);
            Mat R = r_rational(RationalVariant::dy_slN, 2, up, nullptr, true, pol).entries;
            Mat tgt = r_deformed_yangian(DeformedVariant::dyr_sl2, 2, up, &r, nullptr, true, pol)
                          .entries;
            return max_abs(F21 * R * F12.entries.inverse() - tgt);
        }
        case TwistKind::bql: {
            EllipticParams e = ctx.ell();
            DynamicalParams dyn = DynamicalParams::from_s(ctx.rng.uniform(0.5, 1.4));
            cplx w = dyn.w(0, 1, e.q);
            TwistMatrix F12 = bql_twist_sl2(e.q, w);
            Mat F21 = r21(F12.entries, 2);
            SpectralPoint z0 = SpectralPoint::z(0.0);
            Mat R = r_trigonometric(TrigVariant::uq_sl2_homog, &z0, e, nullptr, true, pol).entries;
            Mat tgt = r_trigonometric(TrigVariant::bql_sl2, nullptr, e, &dyn, true, pol).entries;
            return max_abs(F21 * R * F12.entries.inverse() - tgt);
        }
        case TwistKind::dys: {
            DynamicalParams dyn;
            dyn.N = N;
            for (int a = 0; a < N; ++a)
                dyn.x.push_back(cplx(ctx.rng.uniform(-1.5, 1.5), 0.0));
            for (int a = 0; a < N; ++a)
                for (int b = a + 1; b < N; ++b)
                    if (std::abs(dyn.x[a] - dyn.x[b]) < 0.4) dyn.x[b] -= 0.6;
            cplx u = cplx(ctx.rng.uniform(0.3, 1.6), ctx.rng.uniform(-0.3, 0.3));
            TwistMatrix F = dys_twist(N, dyn);
            Mat F21 = r21(F.entries, N);
            SpectralPoint up = SpectralPoint::u(u);
            Mat R = r_rational(RationalVariant::dy_slN, N, up, nullptr, true, pol).entries;
            Mat tgt = r_deformed_yangian(N == 2 ? DeformedVariant::dys_sl2 : DeformedVariant::dys_slN,
                                         N, up, nullptr, &dyn, true, pol).entries;
            return max_abs(F21 * R * F.entries.inverse() - tgt);
        }
    }
    throw domain_error("unknown twist kind");
}

} // namespace

CheckResult check_twist_conjugation(const Registry& reg, const CheckSpec& spec) {
    (void)reg;
    CheckResult out;
    out.id = spec_id(spec);
    out.kind = "twist_conjugation";
    out.family = spec.family;
    out.tol = spec.tol;
    PropCtx ctx(derive_seed(spec.seed, out.id));
    TruncationPolicy pol;
    double worst = 0.0;
    for (int k = 0; k < spec.points; ++k)
        worst = std::max(worst, twist_conjugation_residual(*spec.twist, spec.N, ctx, pol));
    out.samples = spec.points;
    out.params_hash = hash_params(out.id);
    out.residual = worst;
    out.pass = worst <= spec.tol;
    return out;
}

CheckResult check_twist_difference_equation(const Registry& reg, const CheckSpec& spec) {
    (void)reg;
    CheckResult out;
    out.id = spec_id(spec);
    out.kind = "twist_difference_equation";
    out.family = spec.family;
    out.tol = spec.tol;
    PropCtx ctx(derive_seed(spec.seed, out.id));
    TruncationPolicy pol;
    double worst = 0.0;
    for (int k = 0; k < spec.points; ++k) {
        if (spec.family == "face") {
            EllipticParams e = ctx.ell();
            cplx z = ctx.rng.annulus(0.3, 0.6, 0.1, 0.8);
            DynamicalParams dyn = DynamicalParams::from_s(ctx.rng.uniform(0.5, 1.2));
            cplx w = dyn.w(0, 1, e.q);
            Mat lhs = face_twist_sl2(e.p * z, e, dyn, pol).entries;
            Mat D1 = Mat::Zero(4, 4), D2 = Mat::Zero(4, 4), D3 = Mat::Zero(4, 4);
            D1.diagonal() << 1.0, 1.0, w, w;
            D2.diagonal() << 1.0, 1.0, 1.0 / w, 1.0 / w;
            cplx sq = std::sqrt(e.q);
            D3.diagonal() << sq, 1.0 / sq, 1.0 / sq, sq;
            SpectralPoint pz = SpectralPoint::z(e.p * z);
            Mat R = r_trigonometric(TrigVariant::uq_sl2_homog, &pz, e, nullptr, true, pol).entries;
            Mat rhs = D1 * face_twist_sl2(z, e, dyn, pol).entries * D2 * D3 * R;
            worst = std::max(worst, max_abs(lhs - rhs));
        } else {
            cplx u = cplx(ctx.rng.uniform(0.3, 1.4), ctx.rng.uniform(-0.2, 0.2));
            cplx r = ctx.rng.uniform(4.0, 8.0);
            Mat lhs = yangr_twist_sl2(u, r, pol).entries;
            Mat A = Mat::Zero(4, 4);
            A.diagonal() << std::exp(-kI * kPi / 2.0), std::exp(-kI * kPi / 2.0),
                std::exp(kI * kPi / 2.0), std::exp(kI * kPi / 2.0);
            // Ad((-1)^{-h0/2} (x) 1) = conjugation by diag(e^{-i pi/2}, e^{i pi/2}) (x) 1
            Mat P = Mat::Zero(2, 2);
            P(0, 0) = std::exp(-kI * kPi / 2.0);
            P(1, 1) = std::exp(kI * kPi / 2.0);
            Mat C = kron(P, Mat::Identity(2, 2));
            SpectralPoint up = SpectralPoint::u(u);
            Mat R = r_rational(RationalVariant::dy_slN, 2, up, nullptr, true, pol).entries;
            Mat rhs = C * yangr_twist_sl2(u - r, r, pol).entries * C.inverse() * R;
            worst = std::max(worst, max_abs(lhs - rhs));
        }
    }
    out.samples = spec.points;
    out.params_hash = hash_params(out.id);
    out.residual = worst;
    out.pass = worst <= spec.tol;
    return out;
}

CheckResult check_limit(const Registry& reg, const CheckSpec& spec) {
    (void)reg;
    CheckResult out;
    out.id = spec_id(spec);
    out.kind = "limit";
    out.family = spec.family;
    out.tol = spec.tol;
    TruncationPolicy pol;
    if (spec.schedule.empty()) throw config_error("limit check needs a schedule");
    auto push = [&](double x, double resid) { out.table.emplace_back(x, resid); };
    switch (*spec.limit) {
        case LimitKind::p_to_0_face: {
            cplx z = 0.45, q = 0.5;
            DynamicalParams dyn = DynamicalParams::from_s(0.9);
            EllipticParams e0;
            e0.q = q;
            SpectralPoint zp = SpectralPoint::z(z);
            Mat tgt = r_trigonometric(TrigVariant::uql_sl2, &zp, e0, &dyn, true, pol).entries;
            for (double p : spec.schedule) {
                EllipticParams e;
                e.q = q;
                e.p = p;
                Mat R = r_elliptic_face(2, zp, e, dyn, FaceForm::jkos, true, pol).entries;
                push(p, max_abs(R - tgt));
            }
            break;
        }
        case LimitKind::r_to_inf_dyr: {
            cplx u = 0.45;
            SpectralPoint up = SpectralPoint::u(u);
            Mat tgt = r_rational(RationalVariant::dy_slN, 2, up, nullptr, true, pol).entries;
            for (double r : spec.schedule) {
                cplx rc = r;
                Mat R = r_deformed_yangian(DeformedVariant::dyr_sl2, 2, up, &rc, nullptr, true, pol)
                            .entries;
                push(r, max_abs(R - tgt));
            }
            break;
        }
        case LimitKind::s_to_inf_dyrs: {
            cplx u = 0.45, r = 5.0;
            SpectralPoint up = SpectralPoint::u(u);
            Mat tgt = r_deformed_yangian(DeformedVariant::dyr_sl2_gauge, 2, up, &r, nullptr, true,
                                         pol).entries;
            for (double sig : spec.schedule) {
                DynamicalParams dyn = DynamicalParams::from_s(cplx(0.0, sig));
                Mat R = r_deformed_yangian(DeformedVariant::dyrs_sl2, 2, up, &r, &dyn, true, pol)
                            .entries;
                push(sig, max_abs(R - tgt));
            }
            break;
        }
        case LimitKind::scaling_vertex: {
            const double u = 0.6, r = 5.0;
            cplx rc = r;
            SpectralPoint up = SpectralPoint::u(u);
            Mat dyr = r_deformed_yangian(DeformedVariant::dyr_sl2, 2, up, &rc, nullptr, true, pol)
                          .entries;
            DyrGauges g = dyr_gauges(0.0, 0.0, r);
            Mat tgt = g.K_vv * dyr * g.K_vv.inverse();
            cplx fitted{};
            for (double q : spec.schedule) {
                EllipticParams e;
                e.q = q;
                e.p = std::pow(q, 2.0 * r);
                SpectralPoint zp = SpectralPoint::z(std::pow(cplx(q, 0), u));
                Mat R = r_elliptic_vertex(2, zp, e, VertexForm::raw, true, pol).entries;
                fitted = fit_scalar(R, tgt);
                push(q, max_abs(R - fitted * tgt));
            }
            std::ostringstream os;
            os.precision(12);
            os << "fitted scalar " << fitted.real() << (fitted.imag() < 0 ? "-" : "+")
               << std::abs(fitted.imag()) << "i; tan(pi u/2) = " << std::tan(kPi * u / 2.0);
            out.note = os.str();
            break;
        }
        case LimitKind::scaling_face_p0: {
            const double u = 0.45, s = 1.1;
            DynamicalParams dyn = DynamicalParams::from_s(s);
            SpectralPoint up = SpectralPoint::u(u);
            Mat tgt = r_deformed_yangian(DeformedVariant::dys_sl2, 2, up, nullptr, &dyn, true, pol)
                          .entries;
            for (double q : spec.schedule) {
                EllipticParams e;
                e.q = q;
                SpectralPoint zp = SpectralPoint::z(std::pow(cplx(q, 0), 2.0 * u));
                DynamicalParams dq = DynamicalParams::from_s(s);
                Mat R = r_trigonometric(TrigVariant::uql_sl2, &zp, e, &dq, true, pol).entries;
                push(q, max_abs(R - tgt));
            }
            break;
        }
        case LimitKind::scaling_face_full: {
            const double u = 0.45, s = 1.1, r = 5.0;
            cplx rc = r;
            DynamicalParams dyn = DynamicalParams::from_s(s);
            SpectralPoint up = SpectralPoint::u(u);
            Mat tgt = r_deformed_yangian(DeformedVariant::dyrs_sl2, 2, up, &rc, &dyn, true, pol)
                          .entries;
            for (double q : spec.schedule) {
                EllipticParams e;
                e.q = q;
                e.p = std::pow(q, 2.0 * r);
                SpectralPoint zp = SpectralPoint::z(std::pow(cplx(q, 0), 2.0 * u));
                Mat R = r_elliptic_face(2, zp, e, dyn, FaceForm::jkos, true, pol).entries;
                push(q, max_abs(R - tgt));
            }
            break;
        }
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < out.table.size(); ++i)
        if (!(out.table[i].second < out.table[i - 1].second)) decreasing = false;
    out.residual = out.table.empty() ? 0.0 : out.table.back().second;
    out.samples = static_cast<int>(out.table.size());
    out.params_hash = hash_params(out.id);
    out.pass = decreasing && out.residual <= spec.tol;
    if (!decreasing) out.note += (out.note.empty() ? "" : "; ") + std::string("not strictly decreasing");
    return out;
}

CheckResult check_sklyanin(const Registry& reg, const CheckSpec& spec) {
    (void)reg;
    CheckResult out;
    out.id = spec_id(spec);
    out.kind = "sklyanin";
    out.family = spec.family;
    out.tol = spec.tol;
    PropCtx ctx(derive_seed(spec.seed, out.id));
    double worst = 0.0;
    for (int k = 0; k < spec.points; ++k) {
        EllipticParams e = ctx.ell();
        cplx z1 = ctx.zpt(), z2 = ctx.zpt();
        auto s = sklyanin_structure(z1, z2, e);
        worst = std::max(worst, s.z_independence_residual);
        // antisymmetry is structural; verify anyway
        worst = std::max(worst, max_abs(s.J + s.J.transpose()));
    }
    out.samples = spec.points;
    out.params_hash = hash_params(out.id);
    out.residual = worst;
    out.pass = worst <= spec.tol;
    return out;
}

CheckResult check_centrality(const Registry& reg, const CheckSpec& spec) {
    (void)reg;
    CheckResult out;
    out.id = spec_id(spec);
    out.kind = "centrality";
    out.family = spec.family;
    out.tol = spec.tol;
    PropCtx ctx(derive_seed(spec.seed, out.id));
    double worst = 0.0;
    for (int k = 0; k < spec.points; ++k) {
        if (spec.family == "qdet_yangian") {
            cplx u = cplx(ctx.rng.uniform(0.5, 1.5), ctx.rng.uniform(-0.2, 0.2));
            cplx a = cplx(ctx.rng.uniform(-0.4, 0.4), 0.0);
            auto res = qdet_numeric(QdetKind::yangian_slN, spec.N, SpectralPoint::u(u), a, nullptr);
            worst = std::max(worst, res.scalarity_residual);
        } else if (spec.family == "qdet_elliptic") {
            EllipticParams e = ctx.ell();
            cplx z = ctx.rng.annulus(0.45, 0.7, 0.15, 0.7);
            cplx a = ctx.rng.annulus(1.1, 1.5, 0.1, 0.5);
            auto res = qdet_numeric(QdetKind::elliptic_sl2, 2, SpectralPoint::z(z), a, &e);
            worst = std::max(worst, res.scalarity_residual);
        } else {
            // so/sp central element C^{ij}(u)
            cplx u = cplx(ctx.rng.uniform(0.6, 1.6), ctx.rng.uniform(-0.2, 0.2));
            cplx a = cplx(ctx.rng.uniform(-0.3, 0.3), 0.0);
            bool sp = spec.family == "central_sp";
            auto res = so_sp_central_check(spec.N, u, a, sp);
            worst = std::max(worst, std::max(res.off_diagonal_residual, res.diagonal_spread));
        }
    }
    out.samples = spec.points;
    out.params_hash = hash_params(out.id);
    out.residual = worst;
    out.pass = worst <= spec.tol;
    return out;
}

CheckResult check_specfun(const CheckSpec& spec) {
    CheckResult out;
    out.id = spec_id(spec);
    out.kind = "specfun";
    out.family = spec.family;
    out.tol = spec.tol;
    SampleRng rng(derive_seed(spec.seed, out.id));
    TruncationPolicy pol;
    double worst = 0.0;
    for (int k = 0; k < spec.points; ++k) {
        // theta quasi-periodicity
        cplx z = rng.annulus(0.3, 0.9, 0.1, 2.8);
        cplx p = rng.uniform(0.1, 0.45);
        worst = std::max(worst, std::abs(theta_jacobi(p * z, p, pol) +
                                         theta_jacobi(z, p, pol) / z));
        worst = std::max(worst, std::abs(theta_jacobi(1.0 / z, p, pol) +
                                         theta_jacobi(z, p, pol) / z));
        // theta_char shift laws and series/product agreement
        Characteristics c{1.0 / 3.0, 0.5, cplx(rng.uniform(-0.3, 0.3), rng.uniform(0.02, 0.3)),
                          cplx(rng.uniform(-0.2, 0.2), rng.uniform(0.8, 1.6))};
        worst = std::max(worst, std::abs(theta_char(c, pol) - theta_char_product(c, pol)));
        Characteristics cs = c;
        cs.gamma1 += 1.0;
        worst = std::max(worst, std::abs(theta_char(cs, pol) - theta_char(c, pol)));
        // Gamma_2 recursions
        cplx x = cplx(rng.uniform(0.5, 1.6), rng.uniform(-0.2, 0.2));
        cplx w1 = rng.uniform(1.5, 3.0), w2 = rng.uniform(1.0, 2.5);
        PeriodSet ws{w1, w2};
        PeriodSet w2only{w2}, w1only{w1};
        cplx lhs = std::exp(log_multiple_gamma(2, x + w1, ws, pol) -
                            log_multiple_gamma(2, x, ws, pol) +
                            log_multiple_gamma(1, x, w2only, pol));
        worst = std::max(worst, std::abs(lhs - 1.0));
        lhs = std::exp(log_multiple_gamma(2, x + w2, ws, pol) - log_multiple_gamma(2, x, ws, pol) +
                       log_multiple_gamma(1, x, w1only, pol));
        worst = std::max(worst, std::abs(lhs - 1.0));
        // S2 recursion and reflection
        lhs = std::exp(log_multiple_sine(2, x + w1, ws, pol) - log_multiple_sine(2, x, ws, pol) +
                       log_multiple_sine(1, x, w2only, pol));
        worst = std::max(worst, std::abs(lhs - 1.0));
        cplx refl = multiple_sine(2, x, ws, pol) * multiple_sine(2, -x, ws, pol) +
                    4.0 * std::sin(kPi * x / w1) * std::sin(kPi * x / w2);
        worst = std::max(worst, std::abs(refl));
    }
    out.samples = spec.points;
    out.params_hash = hash_params(out.id);
    out.residual = worst;
    out.pass = worst <= spec.tol;
    return out;
}

std::vector<CheckSpec> default_suite(std::uint64_t seed) {
    std::vector<CheckSpec> v;
    auto add = [&](CheckSpec s) {
        s.seed = seed;
        v.push_back(std::move(s));
    };
    // criterion 1: special-function functional equations
    add({CheckKind::specfun, "appendixA", 0, 20, seed, 1e-8});
    // criterion 2: ordinary YBE
    for (auto [fam, Ns] : std::vector<std::pair<std::string, std::vector<int>>>{
             {"uq_sl2_homog", {2}}, {"uq_sl2_princ", {2}}, {"elliptic_vertex", {2, 3}},
             {"yang_sl", {2, 3, 4}}, {"yang_so", {3, 4}}, {"yang_sp", {2, 4}},
             {"dy_sl", {2, 3}}, {"dyr_sl", {2, 3}}, {"dyr_sl2_gauge", {2}}})
        for (int N : Ns) {
            CheckSpec s{CheckKind::ybe, fam, N, 20, seed, 1e-8};
            add(s);
        }
    // criterion 3: dynamical YBE
    for (auto [fam, Ns] : std::vector<std::pair<std::string, std::vector<int>>>{
             {"elliptic_face", {2, 3}}, {"uql", {2, 3}}, {"dys_sl", {2, 3}}, {"dyrs_sl2", {2}}})
        for (int N : Ns) {
            CheckSpec s{CheckKind::dybe, fam, N, 10, seed, 1e-7};
            add(s);
        }
    // criterion 4: matrix symmetry suite
    auto prop = [&](MatrixProperty p, const char* fam, int N) {
        CheckSpec s{CheckKind::matrix_property, fam, N, 5, seed, 1e-8};
        s.property = p;
        add(s);
    };
    prop(MatrixProperty::unitarity, "elliptic_vertex", 2);
    prop(MatrixProperty::unitarity, "elliptic_vertex", 3);
    prop(MatrixProperty::crossing_sl2, "elliptic_vertex", 2);
    prop(MatrixProperty::crossing_slN, "elliptic_vertex", 3);
    prop(MatrixProperty::antisymmetry_sl2, "elliptic_vertex", 2);
    prop(MatrixProperty::antisymmetry_slN, "elliptic_vertex", 3);
    prop(MatrixProperty::quasiperiodicity_sl2, "elliptic_vertex", 2);
    prop(MatrixProperty::quasiperiodicity_slN, "elliptic_vertex", 3);
    prop(MatrixProperty::transpose_inverse_exchange, "elliptic_vertex", 2);
    prop(MatrixProperty::zN_symmetry, "elliptic_vertex", 2);
    prop(MatrixProperty::zN_symmetry, "elliptic_vertex", 3);
    prop(MatrixProperty::tau_periodicity, "elliptic_vertex", 3);
    // criterion 5: twist conjugations + difference equations
    auto tw = [&](TwistKind t, const char* fam, int N) {
        CheckSpec s{CheckKind::twist_conjugation, fam, N, 10, seed, 1e-8};
        s.twist = t;
        add(s);
    };
    tw(TwistKind::vertex, "vertex", 2);
    tw(TwistKind::face, "face", 2);
    tw(TwistKind::yangr, "yangr", 2);
    tw(TwistKind::bql, "bql", 2);
    tw(TwistKind::dys, "dys", 2);
    tw(TwistKind::dys, "dys", 3);
    // difference equations reuse the twist_conjugation kind with a marker family
    {
        CheckSpec s{CheckKind::twist_conjugation, "face_diffeq", 2, 5, seed, 1e-8};
        s.twist = TwistKind::face;
        add(s);
        CheckSpec s2{CheckKind::twist_conjugation, "yangr_diffeq", 2, 5, seed, 1e-8};
        s2.twist = TwistKind::yangr;
        add(s2);
    }
    // criterion 6: Sklyanin z-independence
    add({CheckKind::sklyanin, "elliptic_vertex", 2, 15, seed, 1e-9});
    // criterion 8: centrality
    {
        CheckSpec s{CheckKind::centrality, "qdet_yangian", 2, 4, seed, 1e-9};
        add(s);
        s.N = 3;
        add(s);
        CheckSpec e{CheckKind::centrality, "qdet_elliptic", 2, 4, seed, 1e-9};
        add(e);
        CheckSpec so{CheckKind::centrality, "central_so", 3, 4, seed, 1e-9};
        add(so);
        so.N = 4;
        add(so);
        CheckSpec sp{CheckKind::centrality, "central_sp", 2, 4, seed, 1e-9};
        add(sp);
        sp.N = 4;
        add(sp);
    }
    // criterion 9: limits
    auto lim = [&](LimitKind k, const char* fam, std::vector<double> sched, double tol) {
        CheckSpec s{CheckKind::limit, fam, 2, 0, seed, tol};
        s.limit = k;
        s.schedule = std::move(sched);
        add(s);
    };
    lim(LimitKind::p_to_0_face, "face_p0", {1e-2, 1e-3, 1e-4, 1e-6}, 1e-5);
    lim(LimitKind::r_to_inf_dyr, "dyr_r_inf", {10, 100, 1000, 10000}, 1e-3);
    lim(LimitKind::scaling_vertex, "vertex_scaling", {0.90, 0.95, 0.98, 0.99}, 1e-4);
    lim(LimitKind::scaling_face_p0, "face_scaling_p0", {0.90, 0.95, 0.98, 0.99}, 1e-2);
    lim(LimitKind::scaling_face_full, "face_scaling_full", {0.90, 0.95, 0.98, 0.99}, 5e-2);
    lim(LimitKind::s_to_inf_dyrs, "dyrs_s_inf", {10, 40, 160, 640}, 1e-3);
    return v;
}

namespace {

CheckResult dispatch(const Registry& reg, const CheckSpec& spec) {
    switch (spec.kind) {
        case CheckKind::ybe: return check_ybe(reg, spec);
        case CheckKind::dybe: {
            ShiftConvention conv = calibrate_shift(reg, spec.family, spec.N, spec.seed);
            return check_dybe(reg, spec, conv);
        }
        case CheckKind::matrix_property: return check_matrix_property(reg, spec);
        case CheckKind::twist_conjugation:
            if (spec.family.ends_with("_diffeq")) return check_twist_difference_equation(reg, spec);
            return check_twist_conjugation(reg, spec);
        case CheckKind::limit: return check_limit(reg, spec);
        case CheckKind::specfun: return check_specfun(spec);
        case CheckKind::centrality: return check_centrality(reg, spec);
        case CheckKind::sklyanin: return check_sklyanin(reg, spec);
    }
    throw config_error("unknown check kind");
}

} // namespace

VerificationReport run_suite(const Registry& reg, const std::vector<CheckSpec>& specs,
                             std::uint64_t seed, int jobs) {
    VerificationReport report;
    report.seed = seed;
    report.jobs = jobs;
    report.checks.resize(specs.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < specs.size(); ++i) {
            try {
                report.checks[i] = dispatch(reg, specs[i]);
            } catch (const std::exception& ex) {
                CheckResult r;
                r.id = spec_id(specs[i]);
                r.kind = "error";
                r.family = specs[i].family;
                r.pass = false;
                r.note = ex.what();
                report.checks[i] = r;
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= specs.size()) return;
                try {
                    report.checks[i] = dispatch(reg, specs[i]);
                } catch (const std::exception& ex) {
                    CheckResult r;
                    r.id = spec_id(specs[i]);
                    r.kind = "error";
                    r.family = specs[i].family;
                    r.pass = false;
                    r.note = ex.what();
                    report.checks[i] = r;
                }
            }
        };
        std::vector<std::future<void>> fs;
        for (int j = 0; j < jobs; ++j) fs.push_back(std::async(std::launch::async, worker));
        for (auto& f : fs) f.get();
    }
    return report;
}

std::string report_to_json(const VerificationReport& report, bool with_environment) {
    nlohmann::ordered_json j;
    if (with_environment) {
        j["environment"] = {{"tool", "rmatrixlab"},
                            {"version", "0.1.0"},
                            {"seed", report.seed},
                            {"jobs", report.jobs}};
    }
    nlohmann::ordered_json checks = nlohmann::json::array();
    for (const auto& c : report.checks) {
        nlohmann::ordered_json e;
        e["id"] = c.id;
        e["kind"] = c.kind;
        e["family"] = c.family;
        e["params_hash"] = c.params_hash;
        e["samples"] = c.samples;
        e["retries"] = c.retries;
        e["residual"] = format_double(c.residual);
        e["tol"] = format_double(c.tol);
        e["verdict"] = c.pass ? "pass" : "fail";
        if (!c.note.empty()) e["note"] = c.note;
        if (!c.table.empty()) {
            nlohmann::ordered_json t = nlohmann::json::array();
            for (auto [x, r] : c.table) t.push_back({format_double(x), format_double(r)});
            e["table"] = t;
        }
        checks.push_back(e);
    }
    j["checks"] = checks;
    return j.dump(2);
}

std::string report_to_csv(const VerificationReport& report) {
    std::ostringstream os;
    os << "check_id,family,params_hash,residual,tol,verdict\n";
    for (const auto& c : report.checks)
        os << c.id << "," << c.family << "," << c.params_hash << "," << format_double(c.residual)
           << "," << format_double(c.tol) << "," << (c.pass ? "pass" : "fail") << "\n";
    return os.str();
}

} // namespace rml
