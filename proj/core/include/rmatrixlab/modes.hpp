#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <vector>

#include "rmatrixlab/linalg.hpp"
#include "rmatrixlab/params.hpp"

namespace rml {

// ---------------------------------------------------------------------------
// Exact coefficients: Gaussian rationals times a polynomial in the symbol kappa
// ---------------------------------------------------------------------------

using Rational = boost::multiprecision::cpp_rational;

struct GaussRat {
    Rational re{0}, im{0};

    bool is_zero() const { return re == 0 && im == 0; }
    GaussRat operator+(const GaussRat& o) const { return {re + o.re, im + o.im}; }
    GaussRat operator-(const GaussRat& o) const { return {re - o.re, im - o.im}; }
    GaussRat operator*(const GaussRat& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussRat operator-() const { return {-re, -im}; }
    GaussRat inverse() const {
        Rational n = re * re + im * im;
        return {re / n, -im / n};
    }
    bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
    std::string str() const;
};

/// Dense polynomial in the symbolic constant kappa.
struct PolyK {
    std::vector<GaussRat> c;   // c[k] * kappa^k

    static PolyK zero() { return {}; }
    static PolyK constant(GaussRat g);
    static PolyK kappa();
    bool is_zero() const;
    int degree() const { return static_cast<int>(c.size()) - 1; }
    void trim();
    PolyK operator+(const PolyK& o) const;
    PolyK operator-(const PolyK& o) const;
    PolyK operator*(const PolyK& o) const;
    PolyK operator-() const;
    bool operator==(const PolyK& o) const;
    std::string str() const;
};

/// Quotient of two PolyK with exact Euclidean reduction; used where a field is
/// required (row reduction, span membership).
PolyK poly_gcd(PolyK a, PolyK b);
PolyK poly_divexact(const PolyK& a, const PolyK& b);

// ---------------------------------------------------------------------------
// Free polynomials over the mode generators T^{ij}_{(n)}
// ---------------------------------------------------------------------------

/// Generator T^{ij}_{(n)} with n >= 1 (T_{(0)} = delta is substituted eagerly).
struct GeneratorSymbol {
    int i = 0, j = 0, n = 1;
    auto operator<=>(const GeneratorSymbol&) const = default;
};

using Monomial = std::vector<GeneratorSymbol>;   // ordered product, possibly empty

int monomial_weight(const Monomial& m);

/// Exact-coefficient noncommutative polynomial.
struct FreePoly {
    std::map<Monomial, PolyK> terms;

    bool is_zero() const { return terms.empty(); }
    void add(const Monomial& m, PolyK c);
    FreePoly operator+(const FreePoly& o) const;
    FreePoly operator-(const FreePoly& o) const;
    FreePoly scaled(const PolyK& c) const;
    int weight() const;
    std::string str() const;
};

/// product of the (already substituted) symbols T^{ij}_{(n)}; n < 0 gives 0,
/// n = 0 gives delta_ij.
FreePoly t_symbol(int i, int j, int n);
FreePoly fp_mul(const FreePoly& a, const FreePoly& b);

enum class Algebra { sl, so, sp };
enum class RelationSource { rll_derived, closed_form };
enum class ClosedFormVariant { coefficient, paper_literal };

struct RelationSet {
    Algebra algebra = Algebra::sl;
    int N = 2;
    int max_order = 3;
    RelationSource source = RelationSource::rll_derived;
    std::vector<FreePoly> relations;   // each means "expression = 0"

    std::string to_text() const;
    std::string to_json() const;
};

/// Mechanical expansion of R12(u-v) T1(u) T2(v) - T2(v) T1(u) R12(u-v) after
/// clearing denominators: (u-v) for sl, (u-v)(u-v+kappa) for so/sp.  Returns
/// every nonzero coefficient relation of mode weight <= max_order.
RelationSet expand_rll(Algebra algebra, int N, int max_order);

/// Termwise instantiation of the closed-form mode identities.  The default
/// `coefficient` variant writes the identities in the coefficient form that
/// the RLL expansion produces; `paper_literal` transcribes the printed so/sp
/// display verbatim (boundary instantiations of which are not RLL
/// consequences; see compare report flags).
RelationSet closed_form_relations(Algebra algebra, int N, int max_order,
                                  ClosedFormVariant variant = ClosedFormVariant::coefficient);

enum class SpanVerdict { equal, a_subset_of_b, b_subset_of_a, incomparable };

struct SpanCompareReport {
    SpanVerdict verdict = SpanVerdict::equal;
    std::vector<std::size_t> witnesses_a_not_in_b;   // indices into A.relations
    std::vector<std::size_t> witnesses_b_not_in_a;
    std::string summary() const;
};

/// Exact rational row-reduction span comparison over Q(i)(kappa).
SpanCompareReport compare_relation_spans(const RelationSet& A, const RelationSet& B);

// ---------------------------------------------------------------------------
// Numeric centrality checks in evaluation representations
// ---------------------------------------------------------------------------

enum class QdetKind { yangian_slN, elliptic_sl2 };

struct QdetResult {
    Mat qdet;                  // N x N quantum-space matrix
    cplx scalar;               // tr/N
    double scalarity_residual; // || qdet - scalar * I ||_maxabs
};

/// Quantum determinant in the evaluation representation L(u) = R(u - a)
/// (Yangian, auxiliary space first) or L(z) = Rtilde(z/a) (elliptic, c = 0).
QdetResult qdet_numeric(QdetKind kind, int N, const SpectralPoint& spectral, cplx a,
                        const EllipticParams* params);

struct CentralCheckResult {
    double off_diagonal_residual;
    double diagonal_spread;
};

/// so/sp central element C^{ij}(u) = sum_k eps_i eps_k T^{kbar ibar}(u-kappa) T^{kj}(u).
CentralCheckResult so_sp_central_check(int N, cplx u, cplx a, bool sp);

} // namespace rml
