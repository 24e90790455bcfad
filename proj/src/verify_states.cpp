#include <algorithm>
#include <cmath>

#include "ices/gaussian.hpp"
#include "ices/verify.hpp"

namespace ices::verify {

namespace {

using fock::Mode;
using fock::OpKind;

const double kPi = std::acos(-1.0);
const double kSqrt2 = std::sqrt(2.0);

CMat op(const FockSpace& s, Mode m, OpKind k) { return fock::mode_operator(s, m, k).matrix(); }

struct Relation {
    std::string claim;
    CMat op;
    cplx eigenvalue;
};

std::vector<Relation> relations(StateKind kind, const StateLabel& label, const FockSpace& space) {
    const RayMatrix& m = label.ray;
    std::vector<Relation> out;
    if (kind == StateKind::icms || kind == StateKind::imcs) {
        if (space.modes != 1) throw std::invalid_argument("icms/imcs residuals use a 1-mode space");
        CMat Q = op(space, Mode::a, OpKind::Q), P = op(space, Mode::a, OpKind::P);
        if (kind == StateKind::icms)
            out.push_back({"(DQ-BP)|q> = q|q>", m.D * Q - m.B * P, label.x});
        else
            out.push_back({"(AP-CQ)|p> = p|p>", m.A * P - m.C * Q, label.x});
        return out;
    }
    if (space.modes != 2) throw std::invalid_argument("ices/kappa residuals use a 2-mode space");
    CMat a = op(space, Mode::a, OpKind::annihilate), b = op(space, Mode::b, OpKind::annihilate);
    CMat dQ = op(space, Mode::b, OpKind::Q) - op(space, Mode::a, OpKind::Q);
    CMat dP = op(space, Mode::b, OpKind::P) - op(space, Mode::a, OpKind::P);
    out.push_back({"(a+b)|state> = sqrt2 z|state>", a + b, kSqrt2 * label.z});
    if (kind == StateKind::ices)
        out.push_back({"[D(Qb-Qa)-B(Pb-Pa)]|state> = sqrt2 q|state>", m.D * dQ - m.B * dP, kSqrt2 * label.x});
    else
        out.push_back({"[A(Pb-Pa)-C(Qb-Qa)]|state> = sqrt2 p|state>", m.A * dP - m.C * dQ, kSqrt2 * label.x});
    return out;
}

nlohmann::json label_json(StateKind kind, const StateLabel& label) {
    nlohmann::json j = {{"kind", state_kind_name(kind)}, {"ray", ray_json(label.ray)}};
    j[kind == StateKind::icms || kind == StateKind::ices ? "q" : "p"] = label.x;
    if (kind == StateKind::ices || kind == StateKind::kappa) j["z"] = complex_json(label.z);
    return j;
}

const char* eigen_claim(StateKind kind) {
    switch (kind) {
        case StateKind::icms: return "eigen:icms";
        case StateKind::imcs: return "eigen:imcs";
        case StateKind::ices: return "eigen:ices";
        case StateKind::kappa: return "eigen:kappa";
    }
    return "eigen";
}

}  // namespace

std::vector<ResidualRecord> eigen_residual(StateKind kind, const StateLabel& label, const FockSpace& space, int k) {
    const CVec v = build_state(kind, label, space).amplitudes();
    const CVec vin = fock::inner_components(v, space, k);
    std::vector<ResidualRecord> out;
    for (const Relation& rel : relations(kind, label, space)) {
        CVec w = rel.op * v - rel.eigenvalue * v;
        double res = fock::inner_components(w, space, k).norm() / vin.norm();
        nlohmann::json p = label_json(kind, label);
        p["relation"] = rel.claim;
        p["cutoff"] = space.cutoff;
        p["k"] = k;
        out.push_back(make_record(eigen_claim(kind), p, res, "state norm on occupation <= k components",
                                  Tier::standard, 0.0));
    }
    return out;
}

std::vector<double> eigen_residual_full(StateKind kind, const StateLabel& label, const FockSpace& space) {
    const CVec v = build_state(kind, label, space).amplitudes();
    std::vector<double> out;
    for (const Relation& rel : relations(kind, label, space)) {
        CVec w = rel.op * v - rel.eigenvalue * v;
        out.push_back(w.norm() / v.norm());
    }
    return out;
}

ResidualRecord eigen_convergence(StateKind kind, const StateLabel& label, const std::vector<int>& cutoffs) {
    std::vector<std::vector<double>> seq;
    for (int N : cutoffs) seq.push_back(eigen_residual_full(kind, label, fock::make_space(kind == StateKind::icms || kind == StateKind::imcs ? 1 : 2, N)));
    // count of steps where some relation fails to decrease
    int violations = 0;
    nlohmann::json trace = nlohmann::json::array();
    for (size_t i = 0; i < seq.size(); ++i) {
        trace.push_back(seq[i]);
        if (i == 0) continue;
        for (size_t r = 0; r < seq[i].size(); ++r)
            if (!(seq[i][r] < seq[i - 1][r])) ++violations;
    }
    nlohmann::json p = label_json(kind, label);
    p["cutoffs"] = cutoffs;
    p["full_space_residuals"] = trace;
    return make_record("eigen:truncation_convergence", p, violations, "count of non-decreasing steps", Tier::info,
                       0.0);
}

ResidualRecord fresnel_defining(StateKind kind, double x, const RayMatrix& ray, int cutoff, int k) {
    if (kind != StateKind::icms && kind != StateKind::imcs)
        throw std::invalid_argument("fresnel_defining covers icms and imcs");
    const FresnelParams p = gaussian::fresnel_params_from_ray(ray);
    const double rho = std::asinh(std::abs(p.r));
    const int rows = cutoff + 1;
    const int J = gaussian::spread_levels(rows, rho);
    const CMat F = gaussian::fresnel_block(p, rows, J);
    const CVec ket = kind == StateKind::icms ? fock::position_amplitudes(x, J - 1) : fock::momentum_amplitudes(x, J - 1);
    const CVec Fv = F * ket;
    const FockSpace sp = fock::make_space(1, cutoff);
    const CVec closed = build_state(kind, {{}, x, ray}, sp).amplitudes();
    const double res =
        fock::phase_aligned_residual(fock::inner_components(closed, sp, k), fock::inner_components(Fv, sp, k));
    nlohmann::json prm = {{"kind", state_kind_name(kind)}, {"x", x},          {"ray", ray_json(ray)},
                          {"cutoff", cutoff},            {"k", k},          {"working_levels", J},
                          {"rho", rho}};
    return make_record("fresnel:defining_property", prm, res, "closed-form norm on n <= k, one global phase",
                       Tier::standard, 0.0);
}

ResidualRecord method_agreement(StateKind kind, const StateLabel& label, const FockSpace& space, int k) {
    if (kind != StateKind::ices && kind != StateKind::kappa)
        throw std::invalid_argument("method_agreement covers ices and kappa");
    const CVec c = build_state(kind, label, space, states::Method::closed_form).amplitudes();
    const CVec p = build_state(kind, label, space, states::Method::protocol).amplitudes();
    const double res =
        fock::phase_aligned_residual(fock::inner_components(c, space, k), fock::inner_components(p, space, k));
    nlohmann::json prm = label_json(kind, label);
    prm["cutoff"] = space.cutoff;
    prm["k"] = k;
    return make_record(kind == StateKind::ices ? "methods:ices" : "methods:kappa", prm, res,
                       "closed-form norm on occupation <= k block, one global phase", Tier::standard, 0.0);
}

std::vector<ResidualRecord> degenerate_limits(double x, cplx z, int cutoff_single, int cutoff_pair) {
    const RayMatrix ident{1, 0, 0, 1};
    const RayMatrix fourier{0, -1, 1, 0};
    const FockSpace s1 = fock::make_space(1, cutoff_single);
    const FockSpace s2 = fock::make_space(2, cutoff_pair);
    std::vector<ResidualRecord> out;
    auto push = [&](const std::string& what, const CVec& closed, const CVec& ref, const FockSpace& sp, int k) {
        double res = fock::phase_aligned_residual(fock::inner_components(ref, sp, k),
                                                  fock::inner_components(closed, sp, k));
        nlohmann::json p = {{"limit", what}, {"x", x}, {"cutoff", sp.cutoff}, {"k", k}};
        if (sp.modes == 2) p["z"] = complex_json(z);
        out.push_back(make_record("degenerate_limit", p, res, "reference norm, one global phase", Tier::pinned, 1e-7));
    };
    const int N = cutoff_single;
    push("icms identity -> position ket", build_state(StateKind::icms, {{}, x, ident}, s1).amplitudes(),
         fock::position_amplitudes(x, N), s1, N);
    push("icms fourier -> momentum ket", build_state(StateKind::icms, {{}, x, fourier}, s1).amplitudes(),
         fock::momentum_amplitudes(x, N), s1, N);
    push("imcs identity -> momentum ket", build_state(StateKind::imcs, {{}, x, ident}, s1).amplitudes(),
         fock::momentum_amplitudes(x, N), s1, N);
    push("imcs fourier -> position ket at -p", build_state(StateKind::imcs, {{}, x, fourier}, s1).amplitudes(),
         fock::position_amplitudes(-x, N), s1, N);

    // two-mode limits: B(pi/4) on |z> x |q> (position ket) or |p> (momentum ket)
    const int M = cutoff_pair;
    const auto B = gaussian::beamsplitter(s2, kPi / 4.0);
    const CVec coh = fock::coherent_amplitudes(z, M);
    const CVec ices_ref = B.matrix() * fock::product_state(s2, coh, fock::position_amplitudes(x, M)).amplitudes();
    const CVec kappa_ref = B.matrix() * fock::product_state(s2, coh, fock::momentum_amplitudes(x, M)).amplitudes();
    push("ices identity -> B(|z>|q>)", build_state(StateKind::ices, {z, x, ident}, s2).amplitudes(), ices_ref, s2, M / 2);
    push("kappa identity -> B(|z>|p>)", build_state(StateKind::kappa, {z, x, ident}, s2).amplitudes(), kappa_ref, s2,
         M / 2);
    return out;
}

ResidualRecord overlap_factorization(cplx z, double q, cplx zp, double qp, const RayMatrix& ray,
                                     const FockSpace& space) {
    const FresnelParams p = gaussian::fresnel_params_from_ray(ray);
    auto state = [&](cplx zz, double qq) { return states::ices(space, {zz, qq, p}, states::Method::protocol); };
    const cplx num = fock::inner(state(zp, qp), state(z, q));
    const cplx den = fock::inner(state(0.0, qp), state(0.0, q));
    const cplx expected = std::exp(std::conj(zp) * z - 0.5 * (std::norm(zp) + std::norm(z)));
    nlohmann::json prm = {{"z", complex_json(z)},   {"q", q},         {"z_prime", complex_json(zp)},
                          {"q_prime", qp},          {"ray", ray_json(ray)}, {"cutoff", space.cutoff}};
    double res;
    if (std::abs(den) < 1e-300) {
        prm["flag"] = "vanishing denominator";
        res = std::numeric_limits<double>::infinity();
    } else {
        res = std::abs(num / den - expected) / std::abs(expected);
    }
    return make_record("orthogonality:coherent_factor", prm, res, "|coherent factor|", Tier::pinned, 1e-7);
}

NascentDelta nascent_delta(const RayMatrix& ray, const std::vector<int>& cutoffs) {
    const FresnelParams p = gaussian::fresnel_params_from_ray(ray);
    NascentDelta out;
    out.cutoffs = cutoffs;
    for (int N : cutoffs) {
        const FockSpace s2 = fock::make_space(2, N);
        const FockSpace s1 = fock::make_space(1, N);
        // |zeta(0,q)> = B (|0> x |q>_sr); G = (B P)^dag (B P) on the mode-b factor
        const CMat B = gaussian::beamsplitter(s2, kPi / 4.0).matrix();
        CMat BP(s2.dimension(), N + 1);
        for (int j = 0; j <= N; ++j) BP.col(j) = B.col(s2.index(0, j));
        const CMat G = BP.adjoint() * BP;
        auto ket = [&](double q) { return states::icms(s1, Mode::a, q, p).amplitudes(); };
        const CVec g0 = G * ket(0.0);
        auto overlap = [&](double q) { return ket(q).dot(g0); };

        const double h0 = std::abs(overlap(0.0));
        auto crossing = [&](double dir) {
            const double step = 0.0025;
            double prev = h0;
            for (int i = 1; i <= 1200; ++i) {
                double qq = dir * i * step;
                double cur = std::abs(overlap(qq));
                if (cur <= 0.5 * h0) {
                    double t = (prev - 0.5 * h0) / (prev - cur);
                    return dir * (i - 1 + t) * step;
                }
                prev = cur;
            }
            return dir * 1200 * step;
        };
        out.widths.push_back(crossing(1.0) - crossing(-1.0));

        const double L = std::sqrt(2.0 * N) + 6.0;
        const int n = static_cast<int>(std::ceil(2.0 * L / 0.01));
        const double h = 2.0 * L / n;
        cplx integral = 0.0;
        for (int i = 0; i <= n; ++i) {
            double w = (i == 0 || i == n) ? 0.5 : 1.0;
            integral += w * overlap(-L + i * h);
        }
        out.integrals.push_back(std::abs(integral * h));
    }
    return out;
}

std::vector<ResidualRecord> nascent_delta_records(const RayMatrix& ray, const std::vector<int>& cutoffs) {
    const NascentDelta nd = nascent_delta(ray, cutoffs);
    int violations = 0;
    for (size_t i = 1; i < nd.widths.size(); ++i)
        if (!(nd.widths[i] < nd.widths[i - 1])) ++violations;
    double spread = 0.0;
    for (double v : nd.integrals) spread = std::max(spread, std::abs(v - nd.integrals.back()) / nd.integrals.back());
    nlohmann::json p = {{"ray", ray_json(ray)}, {"cutoffs", cutoffs}, {"fwhm", nd.widths}, {"integrals", nd.integrals}};
    // the truncated integral is an alternating partial sum that reaches 1 only
    // like N^{-1/2}; its spread is reported but only decides under --strict
    return {make_record("orthogonality:nascent_delta_width", p, violations, "count of non-shrinking steps",
                        Tier::pinned, 0.0),
            make_record("orthogonality:nascent_delta_integral", p, spread, "integral at the largest cutoff",
                        Tier::info, 1e-2)};
}

nlohmann::json QuadratureScheme::to_json() const {
    return {{"q_rule", "gauss_legendre"}, {"L", L},           {"q_order", q_order},
            {"R", R},                     {"n_radial", n_radial}, {"n_angular", n_angular}};
}

QuadratureScheme refined(const QuadratureScheme& s, int level) {
    QuadratureScheme r = s;
    r.L = s.L + 0.5 * level;
    r.q_order = s.q_order + 16 * level;
    r.R = s.R + 0.5 * level;
    r.n_radial = s.n_radial + 8 * level;
    return r;
}

double completeness_residual(const RayMatrix& ray, const QuadratureScheme& scheme, const FockSpace& space, int k) {
    if (space.modes != 2) throw std::invalid_argument("completeness needs a 2-mode space");
    if (k > space.cutoff) throw std::invalid_argument("completeness block exceeds the cutoff");
    const FresnelParams p = gaussian::fresnel_params_from_ray(ray);
    // block components of the closed form depend only on k, not on the cutoff
    const FockSpace blk = fock::make_space(2, std::max(k, 1));
    const auto idx = fock::inner_indices(blk, k);
    const int d = static_cast<int>(idx.size());
    const numerics::QuadratureRule qr = numerics::gauss_legendre_rule(scheme.q_order, -scheme.L, scheme.L);
    const numerics::PlanarGrid zg = numerics::planar_grid(scheme.R, scheme.n_radial, scheme.n_angular);
    CMat M = CMat::Zero(d, d);
    CVec v(d);
    for (size_t iq = 0; iq < qr.nodes.size(); ++iq) {
        CMat Mq = CMat::Zero(d, d);
        for (size_t iz = 0; iz < zg.nodes.size(); ++iz) {
            const CVec full = states::ices(blk, {zg.nodes[iz], qr.nodes[iq], p}, states::Method::closed_form).amplitudes();
            for (int i = 0; i < d; ++i) v(i) = full(idx[i]);
            Mq.noalias() += zg.weights[iz] * (v * v.adjoint());
        }
        M += qr.weights[iq] * Mq;
    }
    if (k == 0) return std::abs(M(0, 0) - 1.0);
    return fock::spectral_norm(M - CMat::Identity(d, d));
}

ResidualRecord completeness_check(const RayMatrix& ray, const QuadratureScheme& scheme, const FockSpace& space,
                                  int k) {
    const double res = completeness_residual(ray, scheme, space, k);
    nlohmann::json p = {{"ray", ray_json(ray)}, {"scheme", scheme.to_json()}, {"cutoff", space.cutoff}, {"k", k}};
    if (k == 0)
        return make_record("completeness:vacuum_slice", p, res, "absolute, vacuum element", Tier::pinned, 1e-3);
    return make_record("completeness:block", p, res, "spectral norm of (sum - I) on occupation <= k block",
                       Tier::quadrature, 0.0);
}

ResidualRecord completeness_refinement(const RayMatrix& ray, const QuadratureScheme& scheme, const FockSpace& space,
                                       int k, int levels) {
    std::vector<double> seq;
    nlohmann::json schemes = nlohmann::json::array();
    for (int l = 0; l <= levels; ++l) {
        QuadratureScheme s = refined(scheme, l);
        seq.push_back(completeness_residual(ray, s, space, k));
        schemes.push_back(s.to_json());
    }
    int violations = 0;
    for (size_t i = 1; i < seq.size(); ++i)
        if (!(seq[i] < seq[i - 1])) ++violations;
    nlohmann::json p = {{"ray", ray_json(ray)}, {"schemes", schemes}, {"residuals", seq}, {"cutoff", space.cutoff},
                        {"k", k}};
    return make_record("completeness:refinement_trend", p, violations, "count of non-decreasing steps", Tier::pinned,
                       0.0);
}

namespace {

CMat commutator_plus_2i(const RayMatrix& m, const FockSpace& space) {
    CMat dQ = op(space, Mode::b, OpKind::Q) - op(space, Mode::a, OpKind::Q);
    CMat dP = op(space, Mode::b, OpKind::P) - op(space, Mode::a, OpKind::P);
    CMat X = m.A * dP - m.C * dQ;
    CMat Y = m.D * dQ - m.B * dP;
    CMat c = X * Y - Y * X;
    c.diagonal().array() += cplx(0.0, 2.0);
    return c;
}

}  // namespace

ResidualRecord conjugate_commutator_check(const RayMatrix& ray, const FockSpace& space, int k) {
    if (k >= space.cutoff) throw std::invalid_argument("commutator block must sit below the cutoff");
    const double res = fock::spectral_norm(fock::inner_block(commutator_plus_2i(ray, space), space, k));
    nlohmann::json p = {{"ray", ray_json(ray)}, {"det", ray.det()}, {"cutoff", space.cutoff}, {"k", k}};
    return make_record("conjugacy:commutator", p, res, "absolute spectral norm on occupation <= k block",
                       Tier::pinned, 1e-10);
}

ResidualRecord conjugate_negative_control(const RayMatrix& ray, const FockSpace& space, int k) {
    if (k >= space.cutoff) throw std::invalid_argument("commutator block must sit below the cutoff");
    const double measured = fock::spectral_norm(fock::inner_block(commutator_plus_2i(ray, space), space, k));
    const double predicted = 2.0 * std::abs(ray.det() - 1.0);
    nlohmann::json p = {{"ray", ray_json(ray)}, {"det", ray.det()},       {"cutoff", space.cutoff},
                        {"k", k},               {"measured", measured}, {"predicted", predicted}};
    // the control passes when the identity visibly fails by the predicted amount
    const double res = predicted > 0.0 ? std::abs(measured - predicted) : std::numeric_limits<double>::infinity();
    return make_record("conjugacy:negative_control", p, res, "absolute, |measured - 2|AD-BC-1||", Tier::pinned, 1e-9);
}

ResidualRecord schmidt_witness(const states::IcesLabel& label, const FockSpace& space, double min_entropy) {
    const auto st = states::ices(space, label, states::Method::closed_form);
    const auto sr = states::schmidt_decompose(st);
    nlohmann::json p = {{"z", complex_json(label.z)},
                        {"q", label.q},
                        {"ray", ray_json(gaussian::ray_from_fresnel(label.params))},
                        {"cutoff", space.cutoff},
                        {"entropy", sr.entropy},
                        {"min_entropy", min_entropy}};
    return make_record("schmidt:entangled", p, std::max(0.0, min_entropy - sr.entropy), "entropy shortfall",
                       Tier::pinned, 0.0);
}

ResidualRecord schmidt_product(cplx za, cplx zb, const FockSpace& space) {
    const auto st = fock::basis_state(space, {fock::ModeSpec::coherent(za), fock::ModeSpec::coherent(zb)});
    const auto sr = states::schmidt_decompose(st);
    nlohmann::json p = {{"za", complex_json(za)}, {"zb", complex_json(zb)}, {"cutoff", space.cutoff}};
    return make_record("schmidt:product", p, std::abs(sr.entropy), "entropy", Tier::pinned, 1e-10);
}

}  // namespace ices::verify
