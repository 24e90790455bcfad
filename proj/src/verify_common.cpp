#include <cmath>

#include "ices/gaussian.hpp"
#include "ices/verify.hpp"

namespace ices::verify {

const char* tier_name(Tier t) {
    switch (t) {
        case Tier::strict: return "strict";
        case Tier::standard: return "standard";
        case Tier::quadrature: return "quadrature";
        case Tier::pinned: return "pinned";
        case Tier::info: return "info";
    }
    return "unknown";
}

double Tolerances::of(Tier t, double pinned) const {
    switch (t) {
        case Tier::strict: return strict;
        case Tier::standard: return standard;
        case Tier::quadrature: return quadrature;
        default: return pinned;
    }
}

ResidualRecord make_record(std::string claim, nlohmann::json params, double residual, std::string norm_basis,
                           Tier tier, double tolerance) {
    ResidualRecord r;
    r.claim = std::move(claim);
    r.params = std::move(params);
    r.residual = residual;
    r.norm_basis = std::move(norm_basis);
    r.tier = tier;
    r.tolerance = tolerance;
    r.pass = std::isfinite(residual) && residual >= 0.0 && residual <= tolerance;
    return r;
}

void apply_tolerances(ResidualRecord& rec, const Tolerances& tol) {
    rec.tolerance = tol.of(rec.tier, rec.tolerance);
    rec.pass = std::isfinite(rec.residual) && rec.residual >= 0.0 && rec.residual <= rec.tolerance;
}

nlohmann::json ray_json(const RayMatrix& m) { return {{"A", m.A}, {"B", m.B}, {"C", m.C}, {"D", m.D}}; }

nlohmann::json complex_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

const char* state_kind_name(StateKind k) {
    switch (k) {
        case StateKind::icms: return "icms";
        case StateKind::imcs: return "imcs";
        case StateKind::ices: return "ices";
        case StateKind::kappa: return "kappa";
    }
    return "unknown";
}

FockState build_state(StateKind kind, const StateLabel& label, const FockSpace& space, states::Method method) {
    const FresnelParams p = gaussian::fresnel_params_from_ray(label.ray);
    switch (kind) {
        case StateKind::icms: return states::icms(space, fock::Mode::a, label.x, p);
        case StateKind::imcs: return states::imcs(space, fock::Mode::a, label.x, p);
        case StateKind::ices: return states::ices(space, {label.z, label.x, p}, method);
        case StateKind::kappa: return states::ices_conjugate(space, {label.z, label.x, p}, method);
    }
    throw std::logic_error("unreachable");
}

}  // namespace ices::verify
