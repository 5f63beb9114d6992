#include "rmatrixlab/rmatrix.hpp"

#include <cmath>
#include <sstream>

namespace rml {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
const cplx kI{0.0, 1.0};

std::string snap(std::initializer_list<std::pair<const char*, cplx>> kv) {
    std::ostringstream os;
    os.precision(17);
    bool first = true;
    for (const auto& [k, v] : kv) {
        if (!first) os << " ";
        first = false;
        os << k << "=" << v.real();
        if (v.imag() != 0.0) os << (v.imag() > 0 ? "+" : "") << v.imag() << "i";
    }
    return os.str();
}

void require_away_from_theta_zero(cplx x, cplx p, const char* what) {
    if (theta_zero_near(x, p)) throw pole_error(std::string(what) + " hits a theta zero");
}

cplx theta(cplx z, cplx p, const TruncationPolicy& pol) { return theta_jacobi(z, p, pol); }

// log of the Uq(sl2^) normalization rho(z) = q^{-1/2}(q^2 z;q^4)^2 / ((z;q^4)(q^4 z;q^4))
cplx log_rho_uq(cplx z, cplx q, const TruncationPolicy& pol) {
    NomeSet n4{q * q * q * q};
    return -0.5 * std::log(q) + 2.0 * log_qpoch_inf(q * q * z, n4, pol) -
           log_qpoch_inf(z, n4, pol) - log_qpoch_inf(q * q * q * q * z, n4, pol);
}

// log of the U_{q,lambda}(sl_N^) normalization (eq. for rho in sec. 3.3.4)
cplx log_rho_uql(int N, cplx z, cplx q, const TruncationPolicy& pol) {
    cplx q2N = std::pow(q, 2.0 * N);
    NomeSet n{q2N};
    return -static_cast<double>(N - 1) / N * std::log(q) +
           log_qpoch_inf(q * q * z, n, pol) + log_qpoch_inf(std::pow(q, 2.0 * N - 2.0) * z, n, pol) -
           log_qpoch_inf(z, n, pol) - log_qpoch_inf(q2N * z, n, pol);
}

Mat uq_matrix(cplx z, cplx q, bool principal) {
    // principal gradation replaces z -> z^2 in the diagonal entries and puts a
    // single factor z on both exchange entries
    cplx zz = principal ? z * z : z;
    cplx den = 1.0 - q * q * zz;
    if (std::abs(den) < 1e-10) throw pole_error("Uq matrix at a zero of 1 - q^2 z");
    Mat R = Mat::Zero(4, 4);
    R(0, 0) = R(3, 3) = 1.0;
    R(1, 1) = R(2, 2) = q * (1.0 - zz) / den;
    if (principal) {
        R(1, 2) = R(2, 1) = z * (1.0 - q * q) / den;
    } else {
        R(1, 2) = (1.0 - q * q) / den;
        R(2, 1) = z * (1.0 - q * q) / den;
    }
    return R;
}

} // namespace

cplx tau_factor(cplx z, cplx q, const TruncationPolicy& pol) {
    NomeSet n4{q * q * q * q};
    cplx z2 = z * z;
    return (1.0 / z) * qpoch_inf(q * z2, n4, pol) * qpoch_inf(q * q * q / z2, n4, pol) /
           (qpoch_inf(q / z2, n4, pol) * qpoch_inf(q * q * q * z2, n4, pol));
}

cplx tau_n_factor(int N, cplx xi, cplx q, const TruncationPolicy& pol) {
    cplx z = std::exp(kI * kPi * xi);
    cplx q2N = std::pow(q, 2.0 * N);
    // z^{2/N - 2} through the log coordinate
    cplx power = std::exp(kI * kPi * xi * (2.0 / N - 2.0));
    return power * theta(q * z * z, q2N, pol) / theta(q / (z * z), q2N, pol);
}

RMatrix r_trigonometric(TrigVariant variant, const SpectralPoint* point,
                        const EllipticParams& params, const DynamicalParams* dyn,
                        bool normalized, const TruncationPolicy& pol) {
    const cplx q = params.q;
    if (!(std::abs(q) < 1.0)) throw domain_error("r_trigonometric requires |q| < 1");

    switch (variant) {
        case TrigVariant::uq_sl2_homog:
        case TrigVariant::uq_sl2_princ: {
            if (!point) throw domain_error("missing spectral point");
            const cplx z = point->value;
            const bool princ = variant == TrigVariant::uq_sl2_princ;
            Mat R = uq_matrix(z, q, princ);
            if (normalized) R *= std::exp(log_rho_uq(princ ? z * z : z, q, pol));
            return {2, R, princ ? "uq_sl2_princ" : "uq_sl2_homog", snap({{"z", z}, {"q", q}}),
                    normalized};
        }
        case TrigVariant::bql_sl2: {
            if (!dyn) throw domain_error("bql_sl2 needs dynamical data");
            const cplx w = dyn->w(0, 1, q);
            if (std::abs(w - 1.0) < 1e-10) throw pole_error("bql_sl2 at w = 1");
            Mat R = Mat::Zero(4, 4);
            R(0, 0) = R(3, 3) = 1.0;
            R(1, 1) = q;
            R(1, 2) = (1.0 - q * q) / (1.0 - w);
            R(2, 1) = -w * (1.0 - q * q) / (1.0 - w);
            R(2, 2) = q * (1.0 - w * q * q) * (1.0 - w / (q * q)) / ((1.0 - w) * (1.0 - w));
            if (normalized) R *= std::pow(q, -0.5);
            return {2, R, "bql_sl2", snap({{"q", q}, {"w", w}}), normalized};
        }
        case TrigVariant::uql_sl2:
        case TrigVariant::uql_slN: {
            if (!point || !dyn) throw domain_error("uql needs spectral point and dynamical data");
            const int N = (variant == TrigVariant::uql_sl2) ? 2 : dyn->N;
            const cplx z = point->value;
            cplx den = 1.0 - q * q * z;
            if (std::abs(den) < 1e-10) throw pole_error("uql at a zero of 1 - q^2 z");
            Mat R = Mat::Zero(N * N, N * N);
            for (int a = 0; a < N; ++a) R(a * N + a, a * N + a) = 1.0;
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b) {
                    if (a == b) continue;
                    const cplx w = dyn->w(a, b, q);
                    if (std::abs(w - 1.0) < 1e-10) throw pole_error("uql at w_ab = 1");
                    R(a * N + b, b * N + a) = (1.0 - q * q) * (1.0 - w * z) / (den * (1.0 - w));
                    if (a < b)
                        R(a * N + a, b * N + b) = q * (1.0 - z) / den;
                    else
                        R(a * N + a, b * N + b) = q * (1.0 - z) / den * (1.0 - w * q * q) *
                                                  (1.0 - w / (q * q)) / ((1.0 - w) * (1.0 - w));
                }
            if (normalized)
                R *= std::exp(N == 2 ? log_rho_uq(z, q, pol) : log_rho_uql(N, z, q, pol));
            return {N, R, N == 2 ? "uql_sl2" : "uql_slN", snap({{"z", z}, {"q", q}}), normalized};
        }
    }
    throw domain_error("unknown trigonometric variant");
}

namespace {

// eight-vertex entries of eq:RAqp (unnormalized, c(z) = 1)
void raqp_entries(cplx z, cplx q, cplx p, const TruncationPolicy& pol, cplx& a, cplx& b, cplx& c,
                  cplx& d) {
    const cplx p2 = p * p;
    const cplx z2 = z * z;
    require_away_from_theta_zero(p * q * q * z2, p2, "R[A_qp(sl2)] denominator");
    require_away_from_theta_zero(q * q, p2, "R[A_qp(sl2)] denominator");
    require_away_from_theta_zero(p * z2, p2, "R[A_qp(sl2)] denominator");
    a = (1.0 / z) * theta(q * q * z2, p2, pol) * theta(p * q * q, p2, pol) /
        (theta(p * q * q * z2, p2, pol) * theta(q * q, p2, pol));
    d = -(std::sqrt(p) / (q * z2)) * theta(z2, p2, pol) * theta(q * q * z2, p2, pol) /
        (theta(p * z2, p2, pol) * theta(p * q * q * z2, p2, pol));
    b = q * (1.0 / z) * theta(z2, p2, pol) * theta(p * q * q, p2, pol) /
        (theta(p * z2, p2, pol) * theta(q * q, p2, pol));
    c = 1.0;
}

// log of eq:normAqp
cplx log_norm_raqp(cplx z, cplx q, cplx p, const TruncationPolicy& pol) {
    const cplx p2 = p * p;
    const cplx z2 = z * z;
    const cplx q4 = q * q * q * q;
    NomeSet np{p}, np2{p2}, npq{p, q4};
    cplx lg = log_qpoch_inf(p2, np2, pol) - 2.0 * log_qpoch_inf(p, np, pol);
    lg += log_theta_jacobi(p * z2, p2, pol) + log_theta_jacobi(q * q, p2, pol) -
          log_theta_jacobi(q * q * z2, p2, pol);
    lg += log_qpoch_inf(q4 / z2, npq, pol) + log_qpoch_inf(q * q * z2, npq, pol) +
          log_qpoch_inf(p / z2, npq, pol) + log_qpoch_inf(p * q * q * z2, npq, pol);
    lg -= log_qpoch_inf(q4 * z2, npq, pol) + log_qpoch_inf(q * q / z2, npq, pol) +
          log_qpoch_inf(p * z2, npq, pol) + log_qpoch_inf(p * q * q / z2, npq, pol);
    return lg;
}

// log of the general-N vertex normalization printed in sec. 3.1.3
cplx log_norm_belavin(int N, cplx z, cplx q, cplx p, const TruncationPolicy& pol) {
    const cplx z2 = z * z;
    const cplx q2N = std::pow(q, 2.0 * N);
    const cplx q2Nm2 = std::pow(q, 2.0 * N - 2.0);
    NomeSet n{p, q2N};
    cplx lg = log_qpoch_inf(q2N / z2, n, pol) + log_qpoch_inf(q * q * z2, n, pol) +
              log_qpoch_inf(p / z2, n, pol) + log_qpoch_inf(p * q2Nm2 * z2, n, pol);
    lg -= log_qpoch_inf(q2N * z2, n, pol) + log_qpoch_inf(q * q / z2, n, pol) +
          log_qpoch_inf(p * z2, n, pol) + log_qpoch_inf(p * q2Nm2 / z2, n, pol);
    return lg;
}

Mat g_matrix(int N) {
    Mat g = Mat::Zero(N, N);
    for (int i = 0; i < N; ++i) g(i, i) = std::exp(2.0 * kI * kPi * (i + 1.0) / N);
    return g;
}

Mat g_half(int N) {
    Mat g = Mat::Zero(N, N);
    for (int i = 0; i < N; ++i) g(i, i) = std::exp(kI * kPi * (i + 1.0) / N);
    return g;
}

Mat h_matrix(int N) {
    Mat h = Mat::Zero(N, N);
    for (int i = 0; i < N; ++i) h(i, (i + 1) % N) = 1.0;
    return h;
}

// Z_N theta-characteristic sum with the closed normalization
//   rho_printed(z) * Theta_p(q^2)/Theta_p(q^2 z^2) * e^{-i pi xi / N} * sum_W
// (the last two factors make the printed sec. 3.1.3 identities hold strictly;
// at N = 2 dropping e^{-i pi xi/2} reproduces eq:RAqp x eq:normAqp exactly).
Mat belavin_matrix(int N, const LogCoords& lc, bool normalized, bool with_branch_power,
                   const TruncationPolicy& pol) {
    const cplx z = lc.z(), q = lc.q(), p = lc.p();
    if (!(std::abs(q) < 1.0) || !(std::abs(p) < 1.0))
        throw domain_error("belavin requires |q| < 1, |p| < 1");
    Mat g = g_matrix(N), h = h_matrix(N);
    Mat R = Mat::Zero(N * N, N * N);
    for (int a1 = 0; a1 < N; ++a1)
        for (int a2 = 0; a2 < N; ++a2) {
            Characteristics num{0.5 + static_cast<double>(a1) / N,
                                0.5 + static_cast<double>(a2) / N, lc.xi + lc.zeta / static_cast<double>(N), lc.tau};
            Characteristics den = num;
            den.xi = lc.zeta / static_cast<double>(N);
            cplx dv = theta_char(den, pol);
            if (std::abs(dv) < 1e-13) throw pole_error("belavin W denominator vanishes");
            cplx W = theta_char(num, pol) / (static_cast<double>(N) * dv);
            Mat I = Mat::Identity(N, N);
            for (int k = 0; k < a2; ++k) I = g * I;
            for (int k = 0; k < a1; ++k) I = I * h;
            Mat Iinv = I.inverse();
            R += W * kron(I, Iinv);
        }
    require_away_from_theta_zero(q * q * z * z, p, "belavin normalization");
    R *= theta(q * q, p, pol) / theta(q * q * z * z, p, pol);
    if (with_branch_power) R *= std::exp(-kI * kPi * lc.xi / static_cast<double>(N));
    if (normalized) R *= std::exp(log_norm_belavin(N, z, q, p, pol));
    return R;
}

} // namespace

RMatrix r_elliptic_vertex_log(int N, const LogCoords& lc, VertexForm form, bool normalized,
                              const TruncationPolicy& pol) {
    Mat R = belavin_matrix(N, lc, normalized, /*with_branch_power=*/true, pol);
    std::string fam = "elliptic_vertex_sl" + std::to_string(N);
    if (form == VertexForm::raw)
        return {N, R, fam, snap({{"xi", lc.xi}, {"zeta", lc.zeta}, {"tau", lc.tau}}), normalized};
    Mat gh = g_half(N);
    Mat G = kron(gh, gh);
    Mat Rh = G * R * G.inverse();
    if (form == VertexForm::hat)
        return {N, Rh, fam + "_hat", snap({{"xi", lc.xi}, {"zeta", lc.zeta}, {"tau", lc.tau}}),
                normalized};
    // tilde: tau_N evaluated at q^{1/2} z^{-1}, i.e. xi-coordinate zeta/2 - xi
    Rh *= tau_n_factor(N, lc.zeta / 2.0 - lc.xi, lc.q(), pol);
    return {N, Rh, fam + "_tilde", snap({{"xi", lc.xi}, {"zeta", lc.zeta}, {"tau", lc.tau}}),
            normalized};
}

RMatrix r_elliptic_vertex(int N, const SpectralPoint& point, const EllipticParams& params,
                          VertexForm form, bool normalized, const TruncationPolicy& pol) {
    params.validate();
    const cplx z = point.value, q = params.q, p = params.p;
    if (N == 2) {
        cplx a, b, c, d;
        raqp_entries(z, q, p, pol, a, b, c, d);
        Mat R = Mat::Zero(4, 4);
        R(0, 0) = R(3, 3) = a;
        R(1, 1) = R(2, 2) = b;
        R(1, 2) = R(2, 1) = c;
        R(0, 3) = R(3, 0) = d;
        if (normalized) R *= std::exp(log_norm_raqp(z, q, p, pol));
        std::string fam = "elliptic_vertex_sl2";
        if (form == VertexForm::raw)
            return {2, R, fam, snap({{"z", z}, {"q", q}, {"p", p}}), normalized};
        if (form == VertexForm::tilde) {
            R *= tau_factor(std::sqrt(q) / z, q, pol);
            return {2, R, fam + "_tilde", snap({{"z", z}, {"q", q}, {"p", p}}), normalized};
        }
        // hat: g^{1/2} conjugation (flips the sign of the corner entries)
        R(0, 3) = -R(0, 3);
        R(3, 0) = -R(3, 0);
        return {2, R, fam + "_hat", snap({{"z", z}, {"q", q}, {"p", p}}), normalized};
    }
    // general N needs log coordinates; Cartesian z is accepted away from the cut
    if (z.real() <= 0.0 && std::abs(z.imag()) < 1e-12 * std::abs(z))
        throw domain_error("branch: N > 2 requires log coordinates for z on the cut");
    LogCoords lc{LogCoords::xi_of(z), LogCoords::zeta_of(q), LogCoords::tau_of(p)};
    return r_elliptic_vertex_log(N, lc, form, normalized, pol);
}

namespace {

// log of rho(z;p) for the face family (N = 2 printed form generalizes with q^{2N})
cplx log_rho_face(int N, cplx z, cplx q, cplx p, const TruncationPolicy& pol) {
    const cplx q2N = std::pow(q, 2.0 * N);
    const cplx q2Nm2 = std::pow(q, 2.0 * N - 2.0);
    NomeSet n{q2N, p};
    cplx lg = -static_cast<double>(N - 1) / N * std::log(q);
    lg += log_qpoch_inf(q * q * z, n, pol) + log_qpoch_inf(q2Nm2 * z, n, pol) -
          log_qpoch_inf(z, n, pol) - log_qpoch_inf(q2N * z, n, pol);
    lg += log_qpoch_inf(p / z, n, pol) + log_qpoch_inf(p * q2N / z, n, pol) -
          log_qpoch_inf(p * q * q / z, n, pol) - log_qpoch_inf(p * q2Nm2 / z, n, pol);
    return lg;
}

} // namespace

RMatrix r_elliptic_face(int N, const SpectralPoint& point, const EllipticParams& params,
                        const DynamicalParams& dyn, FaceForm form, bool normalized,
                        const TruncationPolicy& pol) {
    params.validate();
    dyn.validate();
    const cplx z = point.value, q = params.q, p = params.p;
    NomeSet np{p};
    require_away_from_theta_zero(q * q * z, p, "face denominator Theta_p(q^2 z)");
    const cplx tz = theta(z, p, pol);
    const cplx tq2z = theta(q * q * z, p, pol);
    const cplx tq2 = theta(q * q, p, pol);
    Mat R = Mat::Zero(N * N, N * N);
    for (int a = 0; a < N; ++a) R(a * N + a, a * N + a) = 1.0;
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            if (a == b) continue;
            const cplx w = dyn.w(a, b, q);
            require_away_from_theta_zero(w, p, "face denominator Theta_p(w_ab)");
            // exchange entries are common to both printed forms
            R(a * N + b, b * N + a) = tq2 / theta(w, p, pol) * theta(w * z, p, pol) / tq2z;
            if (form == FaceForm::felder) {
                R(a * N + a, b * N + b) =
                    q * q * theta(w / (q * q), p, pol) / theta(w, p, pol) * tz / tq2z;
            } else {
                cplx coeff;
                if (a < b)
                    coeff = q * qpoch_inf(p / w * q * q, np, pol) *
                            qpoch_inf(p / (w * q * q), np, pol) /
                            (qpoch_inf(p / w, np, pol) * qpoch_inf(p / w, np, pol));
                else
                    coeff = q * qpoch_inf(q * q / w, np, pol) *
                            qpoch_inf(1.0 / (q * q * w), np, pol) /
                            (qpoch_inf(1.0 / w, np, pol) * qpoch_inf(1.0 / w, np, pol));
                R(a * N + a, b * N + b) = coeff * tz / tq2z;
            }
        }
    if (normalized) R *= std::exp(log_rho_face(N, z, q, p, pol));
    std::string fam = "elliptic_face_sl" + std::to_string(N);
    fam += form == FaceForm::felder ? "_felder" : "_jkos";
    return {N, R, fam, snap({{"z", z}, {"q", q}, {"p", p}}), normalized};
}

RMatrix r_rational(RationalVariant variant, int N, const SpectralPoint& point, const cplx* kappa,
                   bool normalized, const TruncationPolicy& pol) {
    const cplx u = point.value;
    Mat P = flip_op(N);
    Mat I = Mat::Identity(N * N, N * N);
    switch (variant) {
        case RationalVariant::yang_slN: {
            if (std::abs(u) < 1e-10) throw pole_error("yang_slN at u = 0");
            Mat R = I + P / u;
            return {N, R, "yang_sl" + std::to_string(N), snap({{"u", u}}), normalized};
        }
        case RationalVariant::dy_slN: {
            if (std::abs(u + 1.0) < 1e-10) throw pole_error("dy_slN at u = -1");
            Mat R = Mat::Zero(N * N, N * N);
            for (int a = 0; a < N; ++a) {
                R(a * N + a, a * N + a) = 1.0;
                for (int b = 0; b < N; ++b) {
                    if (a == b) continue;
                    R(a * N + a, b * N + b) += u / (u + 1.0);
                    R(a * N + b, b * N + a) += 1.0 / (u + 1.0);
                }
            }
            if (normalized) {
                PeriodSet wN{cplx(static_cast<double>(N), 0)};
                cplx lr = log_multiple_gamma(1, u, wN, pol) +
                          log_multiple_gamma(1, u + static_cast<double>(N), wN, pol) -
                          log_multiple_gamma(1, u + 1.0, wN, pol) -
                          log_multiple_gamma(1, u + static_cast<double>(N) - 1.0, wN, pol);
                R *= std::exp(lr);
            }
            return {N, R, "dy_sl" + std::to_string(N), snap({{"u", u}}), normalized};
        }
        case RationalVariant::yang_soN:
        case RationalVariant::yang_spN: {
            const bool sp = variant == RationalVariant::yang_spN;
            if (sp && N % 2 != 0) throw domain_error("sp requires even N");
            cplx kap = kappa ? *kappa
                             : cplx(sp ? (N + 2.0) / 2.0 : (N - 2.0) / 2.0, 0.0);
            if (std::abs(u) < 1e-10 || std::abs(u + kap) < 1e-10)
                throw pole_error("yang so/sp at a pole of R(u)");
            std::vector<double> eps(N, 1.0);
            if (sp)
                for (int i = N / 2; i < N; ++i) eps[i] = -1.0;
            Mat K = Mat::Zero(N * N, N * N);
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j)
                    K += eps[i] * eps[j] *
                         kron(elem(N - 1 - j, N - 1 - i, N), elem(j, i, N));
            Mat R = I + P / u - K / (u + kap);
            return {N, R, (sp ? "yang_sp" : "yang_so") + std::to_string(N), snap({{"u", u}, {"kappa", kap}}),
                    normalized};
        }
    }
    throw domain_error("unknown rational variant");
}

namespace {

cplx sin_r(cplx x, cplx r) { return std::sin(kPi * x / r); }

Mat m_form(cplx bp, cplx bm) {
    Mat M = Mat::Zero(4, 4);
    M(0, 0) = M(3, 3) = 1.0;
    M(1, 1) = M(2, 2) = (bp + bm) / 2.0;
    M(1, 2) = M(2, 1) = (bp - bm) / 2.0;
    return M;
}

// log rho(u,r) of eq:factnorm via log Gamma_2 with periods (r, 2)
cplx log_rho_dyr(cplx u, cplx r, const TruncationPolicy& pol) {
    PeriodSet w{r, cplx(2.0, 0.0)};
    auto lg2 = [&](cplx x) { return log_multiple_gamma(2, x, w, pol); };
    return 2.0 * lg2(r + 1.0 - u) + lg2(2.0 + u) + lg2(u) - 2.0 * lg2(u + 1.0) - lg2(r - u) -
           lg2(r + 2.0 - u);
}

cplx log_rho_dy(int N, cplx u, const TruncationPolicy& pol) {
    PeriodSet wN{cplx(static_cast<double>(N), 0)};
    return log_multiple_gamma(1, u, wN, pol) +
           log_multiple_gamma(1, u + static_cast<double>(N), wN, pol) -
           log_multiple_gamma(1, u + 1.0, wN, pol) -
           log_multiple_gamma(1, u + static_cast<double>(N) - 1.0, wN, pol);
}

} // namespace

RMatrix r_deformed_yangian(DeformedVariant variant, int N, const SpectralPoint& point,
                           const cplx* r_in, const DynamicalParams* dyn, bool normalized,
                           const TruncationPolicy& pol) {
    const cplx u = point.value;
    switch (variant) {
        case DeformedVariant::dyr_sl2: {
            if (!r_in) throw domain_error("dyr_sl2 needs r");
            const cplx r = *r_in;
            cplx den = sin_r(u + 1.0, r);
            if (std::abs(den) < 1e-10) throw pole_error("dyr_sl2 at sin(pi(u+1)/r) = 0");
            cplx bp = std::cos(kPi * (u - 1.0) / (2.0 * r)) / std::cos(kPi * (u + 1.0) / (2.0 * r));
            cplx bm = std::sin(kPi * (u - 1.0) / (2.0 * r)) / std::sin(kPi * (u + 1.0) / (2.0 * r));
            Mat R = m_form(bp, bm);
            if (normalized) R *= std::exp(log_rho_dyr(u, r, pol));
            return {2, R, "dyr_sl2", snap({{"u", u}, {"r", r}}), normalized};
        }
        case DeformedVariant::dyr_sl2_gauge: {
            if (!r_in) throw domain_error("dyr_sl2_gauge needs r");
            const cplx r = *r_in;
            cplx den = sin_r(u + 1.0, r);
            if (std::abs(den) < 1e-10) throw pole_error("dyr_sl2_gauge pole");
            Mat R = Mat::Zero(4, 4);
            R(0, 0) = R(3, 3) = 1.0;
            R(1, 1) = R(2, 2) = sin_r(u, r) / den;
            // s -> i.infinity limit of eq:Rdyrs; the phase is e^{-+ i pi u / r}
            R(1, 2) = std::exp(-kI * kPi * u / r) * sin_r(1.0, r) / den;
            R(2, 1) = std::exp(kI * kPi * u / r) * sin_r(1.0, r) / den;
            if (normalized) R *= std::exp(log_rho_dyr(u, r, pol));
            return {2, R, "dyr_sl2_gauge", snap({{"u", u}, {"r", r}}), normalized};
        }
        case DeformedVariant::dyr_slN: {
            if (!r_in) throw domain_error("dyr_slN needs r");
            const cplx r = *r_in;
            cplx su = sin_r(u, r), s1 = sin_r(1.0, r), su1 = sin_r(u + 1.0, r);
            if (std::abs(su1) < 1e-10 || std::abs(su) < 1e-10)
                throw pole_error("dyr_slN sin denominator");
            Mat S = Mat::Zero(N * N, N * N);
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b) {
                    if (a == b) {
                        S(a * N + a, a * N + a) =
                            std::cos(kPi * u / r) / su + std::cos(kPi / r) / s1;
                        continue;
                    }
                    const double d = static_cast<double>(((b - a) % N + N) % N);
                    S(a * N + a, b * N + b) = std::exp(kI * kPi / r) / s1 *
                                              std::exp(-2.0 * kI * kPi * d / (static_cast<double>(N) * r));
                    S(a * N + b, b * N + a) = std::exp(kI * kPi * u / r) / su *
                                              std::exp(-2.0 * kI * kPi * d * u / (static_cast<double>(N) * r));
                }
            Mat R = -(su * s1 / su1) * S;
            if (normalized) {
                PeriodSet w{r, cplx(static_cast<double>(N), 0)};
                auto ls2 = [&](cplx x) { return log_multiple_sine(2, x, w, pol); };
                R *= std::exp(ls2(-u) + ls2(1.0 + u) - ls2(u) - ls2(1.0 - u));
            }
            return {N, R, "dyr_sl" + std::to_string(N), snap({{"u", u}, {"r", r}}), normalized};
        }
        case DeformedVariant::dys_sl2:
        case DeformedVariant::dys_slN: {
            if (!dyn) throw domain_error("dys needs dynamical data");
            const int n = (variant == DeformedVariant::dys_sl2) ? 2 : dyn->N;
            if (std::abs(u + 1.0) < 1e-10) throw pole_error("dys at u = -1");
            Mat R = Mat::Zero(n * n, n * n);
            for (int a = 0; a < n; ++a) R(a * n + a, a * n + a) = 1.0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    if (a == b) continue;
                    const cplx gap = dyn->x[a] - dyn->x[b];
                    if (std::abs(gap) < 1e-10) throw pole_error("dys coincident coordinates");
                    if (a < b)
                        R(a * n + a, b * n + b) = u / (u + 1.0);
                    else
                        R(a * n + a, b * n + b) = (1.0 - 4.0 / (gap * gap)) * u / (u + 1.0);
                    R(a * n + b, b * n + a) = (1.0 + 2.0 * u / gap) / (u + 1.0);
                }
            if (normalized) R *= std::exp(log_rho_dy(n, u, pol));
            return {n, R, "dys_sl" + std::to_string(n), snap({{"u", u}}), normalized};
        }
        case DeformedVariant::dyrs_sl2: {
            if (!r_in || !dyn) throw domain_error("dyrs_sl2 needs r and dynamical data");
            const cplx r = *r_in;
            const cplx s = dyn->s_sl2();
            cplx den = sin_r(u + 1.0, r), ss = sin_r(s, r);
            if (std::abs(den) < 1e-10 || std::abs(ss) < 1e-10)
                throw pole_error("dyrs_sl2 sin denominator");
            PeriodSet wr{r};
            auto g1 = [&](cplx x) { return log_multiple_gamma(1, x, wr, pol); };
            cplx b = std::exp(2.0 * g1(r - s) - g1(r - s + 1.0) - g1(r - s - 1.0)) *
                     sin_r(u, r) / den;
            cplx bp = std::exp(2.0 * g1(s) - g1(s + 1.0) - g1(s - 1.0)) * sin_r(u, r) / den;
            cplx c = sin_r(s + u, r) / ss * sin_r(1.0, r) / den;
            cplx cp = sin_r(s - u, r) / ss * sin_r(1.0, r) / den;
            Mat R = Mat::Zero(4, 4);
            R(0, 0) = R(3, 3) = 1.0;
            R(1, 1) = b;
            R(1, 2) = c;
            R(2, 1) = cp;
            R(2, 2) = bp;
            if (normalized) R *= std::exp(log_rho_dyr(u, r, pol));
            return {2, R, "dyrs_sl2", snap({{"u", u}, {"r", r}, {"s", s}}), normalized};
        }
    }
    throw domain_error("unknown deformed variant");
}

EightVertexDecomposition decompose_eight_vertex(const Mat& R) {
    if (R.rows() != 4 || R.cols() != 4) throw shape_error("decompose_eight_vertex expects 4x4");
    // eight-vertex sparsity: only (11,11),(11,22),(12,12),(12,21),(21,12),(21,21),(22,11),(22,22)
    static const int allowed[][2] = {{0, 0}, {0, 3}, {1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 0}, {3, 3}};
    double scale = max_abs(R);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            bool ok = false;
            for (auto& ij : allowed)
                if (ij[0] == i && ij[1] == j) ok = true;
            if (!ok && std::abs(R(i, j)) > 1e-12 * scale)
                throw shape_error("input violates the eight-vertex sparsity pattern");
        }
    const cplx a = R(0, 0), b = R(1, 1), c = R(1, 2), d = R(0, 3);
    if (std::abs(a + b) < 1e-12 * scale) throw domain_error("singular decomposition: a + b = 0");
    EightVertexDecomposition dec;
    dec.w0 = (a + b) / 2.0;
    dec.W = {(c + d) / (a + b), (c - d) / (a + b), (a - b) / (a + b)};
    return dec;
}

SklyaninStructure sklyanin_structure(cplx z1, cplx z2, const EllipticParams& params,
                                     const TruncationPolicy& pol) {
    if (params.central_charge != 0.0)
        throw domain_error("sklyanin_structure is defined at c = 0");
    auto J_at = [&](cplx z) {
        RMatrix R = r_elliptic_vertex(2, SpectralPoint::z(z), params, VertexForm::raw,
                                      /*normalized=*/false, pol);
        auto dec = decompose_eight_vertex(R.entries);
        Mat J = Mat::Zero(3, 3);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                if (a == b) continue;
                int g = 3 - a - b;
                cplx den = dec.W[g] * dec.W[g] - 1.0;
                if (std::abs(den) < 1e-12) throw domain_error("degenerate: W_gamma^2 = 1");
                J(a, b) = (dec.W[a] * dec.W[a] - dec.W[b] * dec.W[b]) / den;
            }
        return J;
    };
    Mat J1 = J_at(z1), J2 = J_at(z2);
    return {J1, max_abs(J1 - J2)};
}

} // namespace rml
