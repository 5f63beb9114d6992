#include "rmatrixlab/registry.hpp"

#include <cstdlib>
#include <fstream>

#include <json.hpp>

namespace rml {

using nlohmann::json;

namespace {

FamilyInfo make(const std::string& name, std::vector<int> dims, SpectralConvention conv,
                bool dynamical, bool has_spectral = true) {
    FamilyInfo f;
    f.name = name;
    f.dims = std::move(dims);
    f.convention = conv;
    f.dynamical = dynamical;
    f.has_spectral = has_spectral;
    return f;
}

} // namespace

Registry Registry::built_in() {
    Registry reg;
    auto add = [&](FamilyInfo f) { reg.families_[f.name] = std::move(f); };
    add(make("uq_sl2_homog", {2}, SpectralConvention::multiplicative, false));
    add(make("uq_sl2_princ", {2}, SpectralConvention::multiplicative, false));
    add(make("uql", {2, 3}, SpectralConvention::multiplicative, true));
    add(make("bql_sl2", {2}, SpectralConvention::multiplicative, true, false));
    add(make("elliptic_vertex", {2, 3}, SpectralConvention::multiplicative, false));
    add(make("elliptic_vertex_hat", {2, 3}, SpectralConvention::multiplicative, false));
    add(make("elliptic_vertex_tilde", {2, 3}, SpectralConvention::multiplicative, false));
    add(make("elliptic_face", {2, 3}, SpectralConvention::multiplicative, true));
    add(make("elliptic_face_felder", {2, 3}, SpectralConvention::multiplicative, true));
    add(make("yang_sl", {2, 3, 4}, SpectralConvention::additive, false));
    add(make("yang_so", {3, 4}, SpectralConvention::additive, false));
    add(make("yang_sp", {2, 4}, SpectralConvention::additive, false));
    add(make("dy_sl", {2, 3}, SpectralConvention::additive, false));
    add(make("dyr_sl", {2, 3}, SpectralConvention::additive, false));
    add(make("dyr_sl2_gauge", {2}, SpectralConvention::additive, false));
    add(make("dys_sl", {2, 3}, SpectralConvention::additive, true));
    add(make("dyrs_sl2", {2}, SpectralConvention::additive, true));
    return reg;
}

Registry Registry::load(const std::string& json_path) {
    std::ifstream in(json_path);
    if (!in) throw config_error("cannot open registry file: " + json_path);
    json j = json::parse(in);
    Registry reg = built_in();
    for (auto& [name, spec] : j.items()) {
        if (!reg.families_.count(name))
            throw config_error("registry override for unknown family: " + name);
        FamilyInfo& f = reg.families_[name];
        for (auto& [key, val] : spec.items()) {
            if (key == "q") { f.domain.q_lo = val.at(0); f.domain.q_hi = val.at(1); }
            else if (key == "p") { f.domain.p_lo = val.at(0); f.domain.p_hi = val.at(1); }
            else if (key == "z") { f.domain.z_lo = val.at(0); f.domain.z_hi = val.at(1); }
            else if (key == "u") { f.domain.u_lo = val.at(0); f.domain.u_hi = val.at(1); }
            else if (key == "r") { f.domain.r_lo = val.at(0); f.domain.r_hi = val.at(1); }
            else if (key == "s") { f.domain.s_lo = val.at(0); f.domain.s_hi = val.at(1); }
            else if (key == "x_gap_min") { f.domain.x_gap_min = val; }
            else throw config_error("unknown registry key '" + key + "' for family " + name);
        }
    }
    return reg;
}

Registry Registry::from_env_or_default() {
    if (const char* path = std::getenv("RMATRIXLAB_REGISTRY")) return load(path);
    return built_in();
}

const FamilyInfo& Registry::family(const std::string& name) const {
    auto it = families_.find(name);
    if (it == families_.end()) throw config_error("unknown family: " + name);
    return it->second;
}

std::vector<std::string> Registry::names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : families_) out.push_back(k);
    return out;
}

std::string Registry::to_json() const {
    json j;
    for (const auto& [name, f] : families_) {
        j[name] = {
            {"q", {f.domain.q_lo, f.domain.q_hi}},   {"p", {f.domain.p_lo, f.domain.p_hi}},
            {"z", {f.domain.z_lo, f.domain.z_hi}},   {"u", {f.domain.u_lo, f.domain.u_hi}},
            {"r", {f.domain.r_lo, f.domain.r_hi}},   {"s", {f.domain.s_lo, f.domain.s_hi}},
            {"x_gap_min", f.domain.x_gap_min},
        };
    }
    return j.dump(2);
}

SampledPoint sample_point(const FamilyInfo& fam, int N, SampleRng& rng, int* attempts_out) {
    const auto& d = fam.domain;
    for (int attempt = 0; attempt < 500; ++attempt) {
        SampledPoint pt;
        pt.ell.q = rng.uniform(d.q_lo, d.q_hi);
        pt.ell.p = rng.uniform(d.p_lo, d.p_hi);
        pt.r = rng.uniform(d.r_lo, d.r_hi);
        if (fam.convention == SpectralConvention::multiplicative) {
            // small phases keep the principal logs of all pairwise ratios
            // consistent (no winding), which branch-sensitive families need
            pt.z1 = rng.annulus(d.z_lo, d.z_hi, 0.05, 0.95);
            pt.z2 = rng.annulus(d.z_lo, d.z_hi, 0.05, 0.95);
            pt.z3 = rng.annulus(d.z_lo, d.z_hi, 0.05, 0.95);
        } else {
            auto pick = [&] { return cplx(rng.uniform(-d.u_hi, d.u_hi), rng.uniform(-0.4, 0.4)); };
            pt.z1 = pick();
            pt.z2 = pick();
            pt.z3 = pick();
        }
        // dynamical coordinates; keep gaps away from 0 and +-2 (shift collisions)
        pt.dyn.N = N;
        pt.dyn.x.resize(N);
        bool ok = true;
        for (int a = 0; a < N; ++a)
            pt.dyn.x[a] = cplx(rng.uniform(-1.6, 1.6), rng.uniform(-0.15, 0.15));
        for (int a = 0; a < N && ok; ++a)
            for (int b = a + 1; b < N && ok; ++b) {
                cplx gap = pt.dyn.x[a] - pt.dyn.x[b];
                for (double bad : {0.0, 2.0, -2.0, 4.0, -4.0})
                    if (std::abs(gap - bad) < d.x_gap_min) ok = false;
            }
        // spectral separations (pole collisions in YBE arguments)
        if (fam.convention == SpectralConvention::multiplicative) {
            for (cplx ratio : {pt.z1 / pt.z2, pt.z1 / pt.z3, pt.z2 / pt.z3})
                if (std::abs(ratio - 1.0) < 0.05 || std::abs(ratio) < 0.08 ||
                    std::abs(ratio) > 12.0)
                    ok = false;
        } else {
            for (cplx diff : {pt.z1 - pt.z2, pt.z1 - pt.z3, pt.z2 - pt.z3})
                if (std::abs(diff) < 0.08 || std::abs(diff + 1.0) < 0.08 ||
                    std::abs(diff - 1.0) < 0.08)
                    ok = false;
        }
        if (!ok) continue;
        // family-specific pole probe: try building at all three pairwise args
        try {
            if (fam.has_spectral) {
                cplx a12 = fam.convention == SpectralConvention::multiplicative ? pt.z1 / pt.z2
                                                                                : pt.z1 - pt.z2;
                cplx a13 = fam.convention == SpectralConvention::multiplicative ? pt.z1 / pt.z3
                                                                                : pt.z1 - pt.z3;
                cplx a23 = fam.convention == SpectralConvention::multiplicative ? pt.z2 / pt.z3
                                                                                : pt.z2 - pt.z3;
                (void)build_family(fam.name, N, a12, pt, false);
                (void)build_family(fam.name, N, a13, pt, false);
                (void)build_family(fam.name, N, a23, pt, false);
            } else {
                (void)build_family(fam.name, N, 0.0, pt, false);
            }
        } catch (const std::exception&) {
            continue;
        }
        if (attempts_out) *attempts_out += attempt;
        return pt;
    }
    throw convergence_error("sample_point: could not find a pole-free point");
}

RMatrix build_family(const std::string& family, int N, cplx arg, const SampledPoint& pt,
                     bool normalized, const DynamicalParams* dyn_override) {
    const DynamicalParams& dyn = dyn_override ? *dyn_override : pt.dyn;
    const SpectralPoint zp = SpectralPoint::z(arg);
    const SpectralPoint up = SpectralPoint::u(arg);
    if (family == "uq_sl2_homog")
        return r_trigonometric(TrigVariant::uq_sl2_homog, &zp, pt.ell, nullptr, normalized);
    if (family == "uq_sl2_princ")
        return r_trigonometric(TrigVariant::uq_sl2_princ, &zp, pt.ell, nullptr, normalized);
    if (family == "uql")
        return r_trigonometric(N == 2 ? TrigVariant::uql_sl2 : TrigVariant::uql_slN, &zp, pt.ell,
                               &dyn, normalized);
    if (family == "bql_sl2")
        return r_trigonometric(TrigVariant::bql_sl2, nullptr, pt.ell, &dyn, normalized);
    if (family == "elliptic_vertex")
        return r_elliptic_vertex(N, zp, pt.ell, VertexForm::raw, normalized);
    if (family == "elliptic_vertex_hat")
        return r_elliptic_vertex(N, zp, pt.ell, VertexForm::hat, normalized);
    if (family == "elliptic_vertex_tilde")
        return r_elliptic_vertex(N, zp, pt.ell, VertexForm::tilde, normalized);
    if (family == "elliptic_face")
        return r_elliptic_face(N, zp, pt.ell, dyn, FaceForm::jkos, normalized);
    if (family == "elliptic_face_felder")
        return r_elliptic_face(N, zp, pt.ell, dyn, FaceForm::felder, normalized);
    if (family == "yang_sl") return r_rational(RationalVariant::yang_slN, N, up, nullptr, normalized);
    if (family == "yang_so") return r_rational(RationalVariant::yang_soN, N, up, nullptr, normalized);
    if (family == "yang_sp") return r_rational(RationalVariant::yang_spN, N, up, nullptr, normalized);
    if (family == "dy_sl") return r_rational(RationalVariant::dy_slN, N, up, nullptr, normalized);
    if (family == "dyr_sl")
        return r_deformed_yangian(N == 2 ? DeformedVariant::dyr_sl2 : DeformedVariant::dyr_slN, N,
                                  up, &pt.r, nullptr, normalized);
    if (family == "dyr_sl2_gauge")
        return r_deformed_yangian(DeformedVariant::dyr_sl2_gauge, 2, up, &pt.r, nullptr,
                                  normalized);
    if (family == "dys_sl")
        return r_deformed_yangian(N == 2 ? DeformedVariant::dys_sl2 : DeformedVariant::dys_slN, N,
                                  up, nullptr, &dyn, normalized);
    if (family == "dyrs_sl2")
        return r_deformed_yangian(DeformedVariant::dyrs_sl2, 2, up, &pt.r, &dyn, normalized);
    throw config_error("build_family: unknown family " + family);
}

} // namespace rml
