#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rmatrixlab/registry.hpp"
#include "rmatrixlab/rmatrix.hpp"
#include "rmatrixlab/twist.hpp"

namespace rml {

enum class CheckKind { ybe, dybe, matrix_property, twist_conjugation, limit, specfun, centrality, sklyanin };

enum class MatrixProperty {
    unitarity,
    crossing_sl2,
    crossing_slN,
    antisymmetry_sl2,
    antisymmetry_slN,
    quasiperiodicity_sl2,
    quasiperiodicity_slN,
    transpose_inverse_exchange,
    zN_symmetry,
    tau_periodicity,
};

enum class TwistKind { vertex, face, yangr, bql, dys };

enum class LimitKind {
    scaling_vertex,
    scaling_face_p0,
    scaling_face_full,
    p_to_0_face,
    r_to_inf_dyr,
    s_to_inf_dyrs,
};

/// Sign of the dynamical weight shift x_a -> x_a + eta * 2 delta_{ac}.
struct ShiftConvention {
    int eta = +1;
};

struct FaultInjection {
    std::string check_id;   // which check to corrupt
    double epsilon = 1e-3;  // entry perturbation
};

struct CheckSpec {
    CheckKind kind = CheckKind::ybe;
    std::string family;      // registry family tag
    int N = 2;
    int points = 20;
    std::uint64_t seed = 7;
    double tol = 1e-8;
    std::optional<MatrixProperty> property;
    std::optional<TwistKind> twist;
    std::optional<LimitKind> limit;
    std::vector<double> schedule;      // limit schedules
    std::optional<FaultInjection> fault;
};

struct CheckResult {
    std::string id;
    std::string kind;
    std::string family;
    std::string params_hash;
    int samples = 0;
    int retries = 0;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::string note;
    std::vector<std::pair<double, double>> table;   // limit convergence tables
};

struct VerificationReport {
    std::uint64_t seed = 0;
    int jobs = 1;
    std::vector<CheckResult> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

/// Ordinary YBE: R12 R13 R23 = R23 R13 R12 with (z1/z2, z1/z3, z2/z3) or
/// additive differences.  Residual is the max-abs entry norm of LHS - RHS,
/// relative to max(1, |LHS|).
CheckResult check_ybe(const Registry& reg, const CheckSpec& spec);

/// Dynamical YBE in evaluated block form with the calibrated shift sign.
CheckResult check_dybe(const Registry& reg, const CheckSpec& spec, ShiftConvention conv = {});

/// Calibrate the shift sign: exactly one eta must pass at the probe point.
ShiftConvention calibrate_shift(const Registry& reg, const std::string& family, int N,
                                std::uint64_t seed);

CheckResult check_matrix_property(const Registry& reg, const CheckSpec& spec);

CheckResult check_twist_conjugation(const Registry& reg, const CheckSpec& spec);

/// Difference equations printed for the face and yangr twists.
CheckResult check_twist_difference_equation(const Registry& reg, const CheckSpec& spec);

CheckResult check_limit(const Registry& reg, const CheckSpec& spec);

CheckResult check_sklyanin(const Registry& reg, const CheckSpec& spec);

/// Quantum-determinant / so-sp centrality checks (numeric, evaluation reps).
CheckResult check_centrality(const Registry& reg, const CheckSpec& spec);

/// Appendix-A functional-equation sub-suite (theta, Gamma_2, S_2 identities).
CheckResult check_specfun(const CheckSpec& spec);

/// The default campaign: every acceptance-facing check at registry domains.
std::vector<CheckSpec> default_suite(std::uint64_t seed);

/// Execute a campaign; `jobs` caps concurrency (results independent of it).
VerificationReport run_suite(const Registry& reg, const std::vector<CheckSpec>& specs,
                             std::uint64_t seed, int jobs = 1);

/// Report serialization.
std::string report_to_json(const VerificationReport& report, bool with_environment = true);
std::string report_to_csv(const VerificationReport& report);

} // namespace rml
