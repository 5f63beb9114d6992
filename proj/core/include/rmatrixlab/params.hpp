#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "rmatrixlab/errors.hpp"
#include "rmatrixlab/linalg.hpp"

namespace rml {

enum class SpectralConvention { multiplicative, additive };

struct SpectralPoint {
    SpectralConvention convention = SpectralConvention::multiplicative;
    cplx value{};

    static SpectralPoint z(cplx v) { return {SpectralConvention::multiplicative, v}; }
    static SpectralPoint u(cplx v) { return {SpectralConvention::additive, v}; }
};

/// Deformation parameter q, elliptic nome p (= q^{2r} when r is given) and the
/// central charge c entering p* = p q^{-2c}.
struct EllipticParams {
    cplx q{};
    cplx p{};
    std::optional<cplx> r;
    double central_charge = 0.0;

    void validate() const {
        if (!(std::abs(q) < 1.0)) throw domain_error("EllipticParams: |q| must be < 1");
        if (!(std::abs(p) < 1.0)) throw domain_error("EllipticParams: |p| must be < 1");
        if (r) {
            cplx expect = std::pow(q, 2.0 * (*r));
            if (std::abs(expect - p) > 1e-12 * std::max(1.0, std::abs(p)))
                throw domain_error("EllipticParams: p != q^{2r}");
        }
    }
    cplx p_star() const { return p * std::pow(q, -2.0 * central_charge); }
};

/// Dynamical coordinates x_a (only differences enter; w_ab = q^{x_a - x_b}).
/// For sl2 the scalar s with w = q^{2s} corresponds to x = (2s, 0).
struct DynamicalParams {
    int N = 2;
    std::vector<cplx> x;

    static DynamicalParams from_s(cplx s) { return {2, {2.0 * s, cplx(0.0)}}; }
    static DynamicalParams from_w(cplx w, cplx q) {
        // x1 - x2 = log_q w (principal branch)
        return {2, {std::log(w) / std::log(q), cplx(0.0)}};
    }
    /// x_a = 2 s_a - 2 s_{a-1}, s_0 = s_N = 0.
    static DynamicalParams from_face_s(const std::vector<cplx>& s_inner) {
        const int N = static_cast<int>(s_inner.size()) + 1;
        std::vector<cplx> x(N);
        for (int a = 0; a < N; ++a) {
            cplx sa = (a < N - 1) ? s_inner[a] : cplx(0.0);
            cplx sprev = (a > 0) ? s_inner[a - 1] : cplx(0.0);
            x[a] = 2.0 * sa - 2.0 * sprev;
        }
        return {N, x};
    }
    cplx w(int a, int b, cplx q) const { return std::pow(q, x[a] - x[b]); }
    cplx s_sl2() const { return (x[0] - x[1]) / 2.0; }
    DynamicalParams shifted(int coordinate, double amount) const {
        DynamicalParams d = *this;
        d.x[coordinate] += amount;
        return d;
    }
    void validate() const {
        if (static_cast<int>(x.size()) != N) throw domain_error("DynamicalParams: |x| != N");
    }
};

/// Logarithmic coordinates for branch-sensitive families:
/// z = e^{i pi xi}, q = e^{i pi zeta}, p = e^{2 i pi tau}.
struct LogCoords {
    cplx xi{};
    cplx zeta{};
    cplx tau{};

    static constexpr double pi = 3.14159265358979323846264338328;
    cplx z() const { return std::exp(cplx(0, pi) * xi); }
    cplx q() const { return std::exp(cplx(0, pi) * zeta); }
    cplx p() const { return std::exp(cplx(0, 2 * pi) * tau); }
    static cplx xi_of(cplx z) { return std::log(z) / cplx(0, pi); }
    static cplx zeta_of(cplx q) { return std::log(q) / cplx(0, pi); }
    static cplx tau_of(cplx p) { return std::log(p) / cplx(0, 2 * pi); }
};

} // namespace rml
