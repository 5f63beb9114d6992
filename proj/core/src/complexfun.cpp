#include "rmatrixlab/complexfun.hpp"

#include <array>
#include <cmath>

namespace rml {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kLn2Pi = 1.83787706640934548356065947281;

// Lanczos, g = 607/128, 15 coefficients.
constexpr double kLanczosG = 4.7421875;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

cplx log_gamma_core(cplx z) {
    // valid for Re z > 0
    cplx sum = kLanczos[0];
    for (int k = 1; k < 15; ++k) sum += kLanczos[k] / (z + cplx(k - 1, 0));
    cplx t = z + (kLanczosG - 0.5);
    return (z - 0.5) * std::log(t) - t + 0.5 * kLn2Pi + std::log(sum);
}

// Bernoulli numbers B_2..B_24
constexpr std::array<double, 12> kB2k = {
    1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730,
    7.0 / 6, -3617.0 / 510, 43867.0 / 798, -174611.0 / 330, 854513.0 / 138, -236364091.0 / 2730,
};

} // namespace

cplx log_gamma(cplx z) {
    if (z.real() < 0.5) {
        // reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
        return std::log(kPi / std::sin(kPi * z)) - log_gamma(1.0 - z);
    }
    return log_gamma_core(z);
}

cplx gamma_fn(cplx z) { return std::exp(log_gamma(z)); }

cplx digamma(cplx z) {
    if (z.real() < 0.5) {
        // psi(z) = psi(1-z) - pi cot(pi z)
        return digamma(1.0 - z) - kPi / std::tan(kPi * z);
    }
    cplx acc = 0.0;
    while (z.real() < 12.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    cplx inv = 1.0 / z, inv2 = inv * inv;
    cplx s = std::log(z) - 0.5 * inv;
    cplx p = inv2;
    for (int k = 0; k < 8; ++k) {
        s -= kB2k[k] / (2.0 * (k + 1)) * p;
        p *= inv2;
    }
    return s + acc;
}

namespace {

// Euler-Maclaurin pieces shared by hurwitz_zeta and hurwitz_zeta_ds.
// zeta(s,a) = sum_{n<M} (a+n)^{-s} + w^{1-s}/(s-1) + w^{-s}/2
//           + sum_k B_2k/(2k)! (s)_{2k-1} w^{-s-2k+1},   w = a+M.
struct EmSetup {
    int M;
    cplx w;
};

EmSetup em_setup(cplx a) {
    int M = 0;
    cplx w = a;
    while ((w.real() < 18.0 || std::abs(w) < 18.0) && M < 4000) {
        w += 1.0;
        ++M;
    }
    return {M, w};
}

// Pochhammer (s)_m and its s-derivative.
void pochhammer(cplx s, int m, cplx& val, cplx& dval) {
    val = 1.0;
    dval = 0.0;
    for (int j = 0; j < m; ++j) {
        dval = dval * (s + cplx(j, 0)) + val;
        val *= s + cplx(j, 0);
    }
}

constexpr int kEmOrder = 11;

} // namespace

cplx hurwitz_zeta(cplx s, cplx a) {
    auto [M, w] = em_setup(a);
    cplx sum = 0.0;
    for (int n = 0; n < M; ++n) sum += std::exp(-s * std::log(a + cplx(n, 0)));
    cplx lw = std::log(w);
    sum += std::exp((1.0 - s) * lw) / (s - 1.0);
    sum += 0.5 * std::exp(-s * lw);
    for (int k = 1; k <= kEmOrder; ++k) {
        cplx poch, dpoch;
        pochhammer(s, 2 * k - 1, poch, dpoch);
        double fact = 1.0;
        for (int j = 2; j <= 2 * k; ++j) fact *= j;
        sum += kB2k[k - 1] / fact * poch * std::exp(-(s + cplx(2 * k - 1, 0)) * lw);
    }
    return sum;
}

cplx hurwitz_zeta_ds(cplx s, cplx a) {
    auto [M, w] = em_setup(a);
    cplx sum = 0.0;
    for (int n = 0; n < M; ++n) {
        cplx la = std::log(a + cplx(n, 0));
        sum += -la * std::exp(-s * la);
    }
    cplx lw = std::log(w);
    // d/ds [w^{1-s}/(s-1)] = w^{1-s} (-lw/(s-1) - 1/(s-1)^2)
    sum += std::exp((1.0 - s) * lw) * (-lw / (s - 1.0) - 1.0 / ((s - 1.0) * (s - 1.0)));
    sum += 0.5 * (-lw) * std::exp(-s * lw);
    for (int k = 1; k <= kEmOrder; ++k) {
        cplx poch, dpoch;
        pochhammer(s, 2 * k - 1, poch, dpoch);
        double fact = 1.0;
        for (int j = 2; j <= 2 * k; ++j) fact *= j;
        cplx e = std::exp(-(s + cplx(2 * k - 1, 0)) * lw);
        sum += kB2k[k - 1] / fact * (dpoch * e + poch * (-lw) * e);
    }
    return sum;
}

} // namespace rml
