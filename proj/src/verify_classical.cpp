#include <algorithm>
#include <cmath>
#include <random>

#include "ices/gaussian.hpp"
#include "ices/numerics.hpp"
#include "ices/verify.hpp"

namespace ices::verify {

namespace {

using numerics::GaussianIntegralSpec;

const double kPi = std::acos(-1.0);
constexpr int kInputLevels = 40;

std::vector<double> uniform_grid(double half_width, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = -half_width + 2.0 * half_width * i / (n - 1);
    return g;
}

cplx psi_at(const CVec& c, double x) {
    const auto h = numerics::hermite_functions(x, static_cast<int>(c.size()) - 1);
    cplx acc = 0.0;
    for (int n = 0; n < c.size(); ++n) acc += c(n) * h[n];
    return acc;
}

// relative L2 distance minimised over one global phase
double phase_free_l2(const std::vector<cplx>& ref, const std::vector<cplx>& got) {
    cplx overlap = 0.0;
    double nref = 0.0;
    for (size_t i = 0; i < ref.size(); ++i) {
        overlap += std::conj(got[i]) * ref[i];
        nref += std::norm(ref[i]);
    }
    const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : 1.0;
    double d = 0.0;
    for (size_t i = 0; i < ref.size(); ++i) d += std::norm(ref[i] - phase * got[i]);
    return std::sqrt(d / nref);
}

double decay_rate(const GaussianIntegralSpec& s) {
    const double pxx = (s.zeta + s.f + s.g).real();
    const double pyy = (s.zeta - s.f - s.g).real();
    const double pxy = -(s.f - s.g).imag();
    const double mean = 0.5 * (pxx + pyy);
    const double rad = std::sqrt(0.25 * (pxx - pyy) * (pxx - pyy) + pxy * pxy);
    return -(mean + rad);
}

// half-width where exp(-mu r^2 + c r) has fallen below e^{-40}
double box_for(double mu, double c) { return (c + std::sqrt(c * c + 160.0 * mu)) / (2.0 * mu); }

cplx quadrature_2d(const GaussianIntegralSpec& s) {
    const double L = box_for(decay_rate(s), std::abs(s.xi) + std::abs(s.eta));
    const int n = static_cast<int>(std::ceil(2.0 * L / 0.08)) + 1;
    return numerics::gaussian_integral_2d_quadrature(s, L, n);
}

nlohmann::json spec_json(const GaussianIntegralSpec& s) {
    return {{"zeta", complex_json(s.zeta)},
            {"xi", complex_json(s.xi)},
            {"eta", complex_json(s.eta)},
            {"f", complex_json(s.f)},
            {"g", complex_json(s.g)}};
}

}  // namespace

ResidualRecord classical_fresnel_check(const RayMatrix& ray, const FresnelInput& input, const FresnelGrids& grids,
                                       double tolerance) {
    const FresnelParams p = gaussian::fresnel_params_from_ray(ray);
    const CVec c = input.kind == FresnelInput::Kind::ground ? fock::coherent_amplitudes(0.0, kInputLevels)
                                                            : fock::coherent_amplitudes(input.z, kInputLevels);
    if (fock::coherent_tail_mass(input.kind == FresnelInput::Kind::ground ? cplx(0.0) : input.z, kInputLevels) >
        fock::kLeakageLimit)
        throw LeakageError("classical_fresnel_check: input leaks above the cutoff", 0.0);

    // path 1: sampled wavefunction through the kernel integral
    const auto x = uniform_grid(grids.x_half_width, grids.x_samples);
    std::vector<cplx> f(x.size());
    for (size_t i = 0; i < x.size(); ++i) f[i] = psi_at(c, x[i]);
    const double spread = std::sqrt(ray.A * ray.A + ray.B * ray.B);
    const double shift = std::sqrt(2.0) * std::abs(input.z) * (std::abs(ray.A) + std::abs(ray.B));
    const double xp_half = 7.0 * std::max(1.0, spread) + shift + 2.0;
    const auto xp = uniform_grid(xp_half, grids.xp_samples);
    const auto g1 = numerics::fresnel_integral_1d(x, f, ray, xp);

    // path 2: Fock-space operator, read out with position kets
    const double rho = std::asinh(std::abs(p.r));
    const int J = gaussian::spread_levels(kInputLevels + 1, rho);
    const CVec out = gaussian::fresnel_block(p, J, kInputLevels + 1) * c;
    std::vector<cplx> g2(xp.size());
    for (size_t j = 0; j < xp.size(); ++j) g2[j] = psi_at(out, xp[j]);

    const double res = phase_free_l2(g1, g2);
    nlohmann::json prm = {{"ray", ray_json(ray)},
                          {"input", input.kind == FresnelInput::Kind::ground ? "ground" : "coherent"},
                          {"x_half_width", grids.x_half_width},
                          {"x_samples", grids.x_samples},
                          {"xp_half_width", xp_half},
                          {"xp_samples", grids.xp_samples},
                          {"working_levels", J}};
    if (input.kind == FresnelInput::Kind::coherent) prm["z"] = complex_json(input.z);
    return make_record("fresnel:classical_kernel", prm, res, "relative L2 on the output grid, one global phase",
                       Tier::pinned, tolerance);
}

GaussianIntegralSpec random_interior_spec(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
        GaussianIntegralSpec s;
        s.zeta = cplx(-(0.6 + 0.8 * u(rng)), 0.4 * (u(rng) - 0.5));
        s.f = std::polar(0.25 * u(rng), 2.0 * kPi * u(rng));
        s.g = std::polar(0.25 * u(rng), 2.0 * kPi * u(rng));
        s.xi = std::polar(0.6 * u(rng), 2.0 * kPi * u(rng));
        s.eta = std::polar(0.6 * u(rng), 2.0 * kPi * u(rng));
        if (!numerics::convergence_violation(s) && numerics::gaussian_integrand_decays(s)) return s;
    }
}

ResidualRecord gaussian_integral_2d_check(int count, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const auto s = random_interior_spec(rng);
        const cplx closed = numerics::gaussian_integral_2d(s);
        worst = std::max(worst, std::abs(closed - quadrature_2d(s)) / std::abs(closed));
    }
    return make_record("integral:gaussian_2d", {{"count", count}, {"seed", seed}, {"step", 0.08}}, worst,
                       "relative to the closed form", Tier::pinned, 1e-8);
}

ResidualRecord gaussian_integral_1d_check(int count, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const cplx alpha(0.3 + u(rng), u(rng) - 0.5);
        const cplx beta = std::polar(1.5 * u(rng), 2.0 * kPi * u(rng));
        const double L = box_for(alpha.real(), std::abs(beta.real()));
        const int n = static_cast<int>(std::ceil(2.0 * L / 0.05)) + 1;
        const cplx closed = numerics::gaussian_integral_1d(alpha, beta);
        const cplx quad = numerics::gaussian_integral_1d_quadrature(alpha, beta, L, n);
        worst = std::max(worst, std::abs(closed - quad) / std::abs(closed));
    }
    return make_record("integral:gaussian_1d", {{"count", count}, {"seed", seed}, {"step", 0.05}}, worst,
                       "relative to the closed form", Tier::pinned, 1e-8);
}

ResidualRecord planar_integral_check(int count, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        GaussianIntegralSpec s{cplx(-(0.5 + u(rng)), u(rng) - 0.5), std::polar(0.8 * u(rng), 2.0 * kPi * u(rng)),
                               std::polar(0.8 * u(rng), 2.0 * kPi * u(rng)), 0.0, 0.0};
        // the f = g = 0 form: -(1/zeta) exp(-xi eta / zeta)
        const cplx closed = -1.0 / s.zeta * std::exp(-s.xi * s.eta / s.zeta);
        worst = std::max(worst, std::abs(closed - quadrature_2d(s)) / std::abs(closed));
    }
    return make_record("integral:planar", {{"count", count}, {"seed", seed}, {"step", 0.08}}, worst,
                       "relative to the closed form", Tier::pinned, 1e-8);
}

bool quadrature_diverges(const GaussianIntegralSpec& s) {
    const cplx near = numerics::gaussian_integral_2d_quadrature(s, 15.0, 301);
    const cplx far = numerics::gaussian_integral_2d_quadrature(s, 30.0, 601);
    if (!std::isfinite(std::abs(near)) || !std::isfinite(std::abs(far))) return true;
    return std::abs(far - near) > 1e-6 * std::max(std::abs(far), 1e-300);
}

ResidualRecord convergence_validator_check() {
    const cplx i(0.0, 1.0);
    // each pair straddles one of the stated inequalities; the last two probe
    // the mixed-sign conditions and an indefinite real part
    const std::vector<std::pair<std::string, GaussianIntegralSpec>> cases = {
        {"plain gaussian", {-1.0, 0.0, 0.0, 0.0, 0.0}},
        {"growing radial part", {0.5, 0.0, 0.0, 0.0, 0.0}},
        {"x direction just decays", {-1.0, 0.0, 0.0, 0.4, 0.4}},
        {"x direction grows", {-1.0, 0.0, 0.0, 0.6, 0.6}},
        {"small zeta, x grows", {-0.2, 0.0, 0.0, 0.3, 0.0}},
        {"cross term, definite", {-1.0, 0.0, 0.0, 0.3 * i, -0.3 * i}},
        {"cross term, indefinite", {-1.0, 0.0, 0.0, 0.6 * i, -0.6 * i}},
        {"complex zeta interior", {cplx(-1.0, 0.5), 0.3, -0.2, 0.2, 0.1 * i}},
        {"mixed-sign sum just negative", {-1.0, 0.0, 0.0, 0.45, -0.45}},
        {"mixed-sign sum just positive", {-1.0, 0.0, 0.0, 0.55, -0.55}},
        {"indefinite real part, all sums negative", {-1.0, 0.0, 0.0, 3.5 * i, 6.5 * i}},
    };
    int mismatches = 0;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [name, s] : cases) {
        const auto violation = numerics::convergence_violation(s);
        const bool diverges = quadrature_diverges(s);
        const bool agree = violation.has_value() == diverges;
        if (!agree) ++mismatches;
        nlohmann::json row = {{"case", name},
                              {"spec", spec_json(s)},
                              {"validator_rejects", violation.has_value()},
                              {"quadrature_diverges", diverges},
                              {"agree", agree}};
        if (violation) row["reason"] = *violation;
        rows.push_back(row);
    }
    return make_record("integral:convergence_validator", {{"cases", rows}}, mismatches,
                       "count of cases where validator and quadrature disagree", Tier::pinned, 0.0);
}

}  // namespace ices::verify
