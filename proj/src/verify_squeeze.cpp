#include <algorithm>
#include <cmath>

#include "ices/gaussian.hpp"
#include "ices/verify.hpp"

namespace ices::verify {

namespace {

using fock::Mode;
using fock::OpKind;

const double kPi = std::acos(-1.0);

// Squeezing rate of F S(lambda) F^dag, from its action on b:
// alpha = cosh(lambda) + (s r* - r s*) sinh(lambda) = cosh(rho_W).
double composite_rate(const FresnelParams& p, double lambda) {
    const cplx alpha = std::cosh(lambda) + (p.s * std::conj(p.r) - p.r * std::conj(p.s)) * std::sinh(lambda);
    return std::acosh(std::max(1.0, std::abs(alpha)));
}

// K = (b^2 - b^dag^2)/2 applied from the left to rows 0..rows-1 of `S`,
// which must carry two extra rows.
RMat apply_k(const RMat& S, int rows) {
    RMat out = RMat::Zero(rows, S.cols());
    for (int x = 0; x < rows; ++x) {
        out.row(x) += 0.5 * std::sqrt((x + 1.0) * (x + 2.0)) * S.row(x + 2);
        if (x >= 2) out.row(x) -= 0.5 * std::sqrt(x * (x - 1.0)) * S.row(x - 2);
    }
    return out;
}

RMat k_block(int rows, int cols) {
    RMat K = RMat::Zero(rows, cols);
    for (int x = 0; x < rows; ++x) {
        if (x + 2 < cols) K(x, x + 2) = 0.5 * std::sqrt((x + 1.0) * (x + 2.0));
        if (x >= 2 && x - 2 < cols) K(x, x - 2) = -0.5 * std::sqrt(x * (x - 1.0));
    }
    return K;
}

CMat op(const FockSpace& s, Mode m, OpKind k) { return fock::mode_operator(s, m, k).matrix(); }

nlohmann::json squeeze_params(const RayMatrix& ray, double lambda, const FockSpace& space, int k) {
    return {{"ray", ray_json(ray)}, {"lambda", lambda}, {"cutoff", space.cutoff}, {"k", k}};
}

}  // namespace

SqueezeModel::SqueezeModel(const FresnelParams& params, double lambda) : p_(params), lambda_(lambda) {
    gaussian::check_fresnel(p_);
}

CMat SqueezeModel::sandwich(int rows, int cols, int k_power) const {
    const double rho = std::asinh(std::abs(p_.r));
    const int X = gaussian::spread_levels(rows, rho);
    const int Y = gaussian::spread_levels(cols, rho);
    RMat M;
    if (k_power == 0) {
        M = gaussian::squeeze_block(lambda_, X, Y);
    } else if (k_power == 1) {
        M = apply_k(gaussian::squeeze_block(lambda_, X + 2, Y), X);
    } else if (k_power == 2) {
        M = k_block(X, Y);
    } else {
        throw std::invalid_argument("sandwich: unknown middle factor");
    }
    const CMat F1 = gaussian::fresnel_block(p_, rows, X);
    const CMat F2 = gaussian::fresnel_block(p_, cols, Y);
    return F1 * M.cast<cplx>() * F2.adjoint();
}

FockOperator SqueezeModel::lift(const FockSpace& space, const CMat& single) const {
    if (space.modes != 2) throw std::invalid_argument("squeezing operator needs a 2-mode space");
    const CMat B = gaussian::beamsplitter(space, kPi / 4.0).matrix();
    const CMat W = fock::embed_mode(space, Mode::b, single);
    return FockOperator(space, B * W * B.adjoint());
}

FockOperator SqueezeModel::unitary(const FockSpace& space) const {
    return lift(space, sandwich(space.levels(), space.levels(), 0));
}

FockOperator SqueezeModel::flow(const FockSpace& space) const {
    return lift(space, sandwich(space.levels(), space.levels(), 1));
}

FockOperator SqueezeModel::conjugated_generator(const FockSpace& space) const {
    return lift(space, sandwich(space.levels(), space.levels(), 2));
}

CMat SqueezeModel::unitarity_block(const FockSpace& space, int k) const {
    const int rows = space.levels();
    const int J = gaussian::spread_levels(rows, composite_rate(p_, lambda_));
    const CMat W = sandwich(rows, J, 0);
    return fock::inner_block(lift(space, W * W.adjoint()).matrix(), space, k);
}

FockOperator squeeze_operator(const FockSpace& space, const FresnelParams& params, SqueezeStrength lambda) {
    return SqueezeModel(params, lambda.lambda).unitary(space);
}

FockOperator squeeze_generator(const FockSpace& space, const FresnelParams& params, double lambda) {
    if (space.modes != 2) throw std::invalid_argument("squeeze_generator needs a 2-mode space");
    const CMat a = op(space, Mode::a, OpKind::annihilate), b = op(space, Mode::b, OpKind::annihilate);
    const CMat ad = a.adjoint(), bd = b.adjoint();
    const CMat I = CMat::Identity(space.dimension(), space.dimension());
    const cplx sc = std::conj(params.s), rc = std::conj(params.r);
    const CMat amb = a - b;
    const CMat X = 0.5 * (sc * sc - rc * rc) * (amb * amb) + sc * params.r * (I + bd * b + ad * a - ad * b - a * bd);
    return FockOperator(space, 0.5 * lambda * (X - X.adjoint()));
}

std::vector<ResidualRecord> squeeze_operator_checks(const RayMatrix& ray, double lambda, const FockSpace& space,
                                                    int k) {
    const FresnelParams p = gaussian::fresnel_params_from_ray(ray);
    const SqueezeModel plus(p, lambda), minus(p, -lambda);
    std::vector<ResidualRecord> out;

    const CMat UU = plus.unitarity_block(space, k);
    const double r1 = fock::spectral_norm(UU - CMat::Identity(UU.rows(), UU.cols()));
    out.push_back(make_record("squeeze:unitarity", squeeze_params(ray, lambda, space, k), r1,
                              "absolute spectral norm of UU^dag - I on occupation <= k block", Tier::strict, 0.0));

    const FockOperator U = plus.unitary(space);
    const FockOperator Um = minus.unitary(space);
    const double r2 = fock::inner_block_distance(Um, fock::adjoint(U), k);
    out.push_back(make_record("squeeze:inverse", squeeze_params(ray, lambda, space, k), r2,
                              "absolute spectral norm of U(-lambda) - U^dag on occupation <= k block", Tier::strict,
                              0.0));
    return out;
}

ResidualRecord squeeze_degenerate(double lambda, const FockSpace& space, int k) {
    const FockOperator U = squeeze_operator(space, FresnelParams{}, SqueezeStrength::of(lambda));
    const auto B = gaussian::beamsplitter(space, kPi / 4.0);
    const auto ref = fock::compose({B, gaussian::squeezer(space, Mode::b, SqueezeStrength::of(lambda)), fock::adjoint(B)});
    const double res = fock::inner_block_distance(U, ref, k);
    return make_record("squeeze:two_mode_limit", squeeze_params({1, 0, 0, 1}, lambda, space, k), res,
                       "absolute spectral norm against B S B^dag on occupation <= k block", Tier::strict, 0.0);
}

std::vector<ResidualRecord> squeeze_generator_check(const RayMatrix& ray, double lambda, const FockSpace& space,
                                                    int k) {
    const FresnelParams p = gaussian::fresnel_params_from_ray(ray);
    // products below reach one level past the block on each side
    const FockSpace ws = fock::make_space(2, std::max(space.cutoff, 2 * k + 2));
    const SqueezeModel model(p, lambda);
    std::vector<ResidualRecord> out;

    const FockOperator G = squeeze_generator(ws, p, lambda);
    const FockOperator Gc = fock::scale(model.conjugated_generator(ws), lambda);
    nlohmann::json prm = squeeze_params(ray, lambda, space, k);
    prm["working_cutoff"] = ws.cutoff;
    out.push_back(make_record("squeeze:generator", prm, fock::inner_block_distance(G, Gc, k),
                              "absolute spectral norm against lambda B F K F^dag B^dag on occupation <= k block",
                              Tier::standard, 0.0));

    const FockOperator K = squeeze_generator(ws, p, 1.0);
    const FockOperator lhs = fock::compose({K, model.unitary(ws)});
    const double res = fock::inner_block_distance(lhs, model.flow(ws), k);
    out.push_back(make_record("squeeze:generator_flow", prm, res,
                              "absolute spectral norm of G U - dU/dlambda on occupation <= k block", Tier::standard,
                              0.0));
    return out;
}

std::vector<ResidualRecord> squeeze_heisenberg_check(const RayMatrix& ray, double lambda, const FockSpace& space,
                                                     int k) {
    const FresnelParams p = gaussian::fresnel_params_from_ray(ray);
    const FockSpace ws = fock::make_space(2, std::max(space.cutoff, 2 * k + 2));
    const CMat U = SqueezeModel(p, lambda).unitary(ws).matrix();

    const CMat a = op(ws, Mode::a, OpKind::annihilate), b = op(ws, Mode::b, OpKind::annihilate);
    const CMat ad = a.adjoint(), bd = b.adjoint();
    const CMat Qa = op(ws, Mode::a, OpKind::Q), Qb = op(ws, Mode::b, OpKind::Q);
    const CMat Pa = op(ws, Mode::a, OpKind::P), Pb = op(ws, Mode::b, OpKind::P);
    const cplx s = p.s, r = p.r, sc = std::conj(s), rc = std::conj(r);
    const cplx I(0.0, 1.0);
    const double ch = std::cosh(lambda), sh = std::sinh(lambda);
    const cplx t = r * sc - s * rc;

    // right-hand sides exactly as printed
    const cplx qmix = ((r - sc) * (r - sc) - (rc - s) * (rc - s)) / 2.0 * sh;
    const cplx qdiag = ch - (r * r - s * s + rc * rc - sc * sc) / 2.0 * sh;
    const cplx pmix_a = ((r + sc) * (r + sc) - (rc + s) * (rc + s)) / (2.0 * I) * sh;
    const cplx pmix_b = ((rc + s) * (rc + s) - (r + sc) * (r + sc)) / (2.0 * I) * sh;
    const cplx pdiag_a = (sc * sc - rc * rc - r * r + s * s) / 2.0 * sh - ch;
    const cplx pdiag_b = (-sc * sc + rc * rc - s * s + r * r) / 2.0 * sh + ch;
    const cplx pmix_diff = ((r + sc) * (r + sc) - (rc + s) * (rc + s)) / 2.0 * sh;

    struct Transform {
        const char* claim;
        CMat x, rhs;
    };
    std::vector<Transform> ts = {
        {"heisenberg:a", a, 0.5 * ((b - a) * (t * sh - ch) + (bd - ad) * ((r * r - s * s) * sh) + (a + b))},
        {"heisenberg:b", b, 0.5 * ((b - a) * (ch - t * sh) + (bd - ad) * ((s * s - r * r) * sh) + (a + b))},
        {"heisenberg:Qa", Qa, 0.5 * ((Qa + Qb) + I * (Pa - Pb) * qmix + (Qa - Qb) * qdiag)},
        {"heisenberg:Qb", Qb, 0.5 * ((Qa + Qb) - I * (Pa - Pb) * qmix + (Qb - Qa) * qdiag)},
        {"heisenberg:Pa", Pa, 0.5 * ((Pa + Pb) + (Qb - Qa) * pmix_a + (Pb - Pa) * pdiag_a)},
        {"heisenberg:Pb", Pb, 0.5 * ((Pa + Pb) + (Qb - Qa) * pmix_b + (Pb - Pa) * pdiag_b)},
        {"heisenberg:Qa+Qb", Qa + Qb, Qa + Qb},
        {"heisenberg:Pa+Pb", Pa + Pb, Pa + Pb},
        {"heisenberg:Qa-Qb", Qa - Qb, I * (Pa - Pb) * qmix + (Qa - Qb) * qdiag},
        {"heisenberg:Pa-Pb", Pa - Pb, -I * (Qb - Qa) * pmix_diff + (Pb - Pa) * pdiag_a},
    };

    std::vector<ResidualRecord> out;
    for (const auto& tr : ts) {
        // U X U^dag = X'  <=>  U X = X' U, which stays exact on the inner block
        const CMat diff = U * tr.x - tr.rhs * U;
        const double res = fock::spectral_norm(fock::inner_block(diff, ws, k));
        nlohmann::json prm = squeeze_params(ray, lambda, space, k);
        prm["working_cutoff"] = ws.cutoff;
        out.push_back(make_record(tr.claim, prm, res, "absolute spectral norm of U X - X' U on occupation <= k block",
                                  Tier::pinned, 1e-7));
    }
    return out;
}

}  // namespace ices::verify
