#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "ices/gaussian.hpp"

using namespace ices;
using namespace ices::gaussian;

namespace {
const cplx I(0.0, 1.0);

CMat single_ladder(int levels) { return fock::ladder(levels - 1).cast<cplx>(); }
}  // namespace

TEST(RayParams, KnownConversion) {
    // A=2, B=1, C=1, D=1: s = ((A+D) - i(B-C))/2 = 1.5, r = -((A-D) + i(B+C))/2
    const FresnelParams p = fresnel_params_from_ray({2.0, 1.0, 1.0, 1.0});
    EXPECT_NEAR(std::abs(p.s - 1.5), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(p.r - cplx(-0.5, -1.0)), 0.0, 1e-15);
    EXPECT_NEAR(p.constraint(), 1.0, 1e-15);
}

TEST(RayParams, RoundTripAndAdjoint) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        const RayMatrix m = random_ray(rng, 1.0);
        EXPECT_NEAR(m.det(), 1.0, 1e-12);
        const RayMatrix back = ray_from_fresnel(fresnel_params_from_ray(m));
        EXPECT_NEAR(back.A, m.A, 1e-13);
        EXPECT_NEAR(back.B, m.B, 1e-13);
        EXPECT_NEAR(back.C, m.C, 1e-13);
        EXPECT_NEAR(back.D, m.D, 1e-13);
    }
    const FresnelParams p{cplx(1.5, 0.0), cplx(-0.5, -1.0)};
    const FresnelParams q = adjoint_params(p);
    EXPECT_EQ(q.s, std::conj(p.s));
    EXPECT_EQ(q.r, -p.r);
}

TEST(RayParams, RandomRayRespectsCaps) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 30; ++i) {
        const RayMatrix m = random_ray(rng, 0.8, 0.5);
        EXPECT_LE(std::abs(fresnel_params_from_ray(m).r), 0.8 + 1e-12);
        EXPECT_GE(std::abs(m.B), 0.5);
    }
}

TEST(RayParams, NonUnimodularRejected) {
    EXPECT_THROW(check_unimodular({1.0, 1.0, 0.0, 2.0}), std::invalid_argument);
    EXPECT_NO_THROW(check_unimodular({1.0, 1.0, 0.0, 1.0}));
    EXPECT_THROW(check_fresnel({cplx(1.0), cplx(0.5)}), std::invalid_argument);
}

TEST(Squeeze, VacuumColumnMatchesClosedForm) {
    // <2n|S(lambda)|0> = (-tanh)^n sqrt((2n)!) / (2^n n! sqrt(cosh)), lambda = 0.5
    const RMat S = squeeze_block(0.5, 8, 1);
    EXPECT_NEAR(S(0, 0), 0.9417106158316757, 1e-14);
    EXPECT_NEAR(S(2, 0), -0.30771917645837044, 1e-14);
    EXPECT_NEAR(S(4, 0), 0.12315081385423958, 1e-14);
    EXPECT_NEAR(S(6, 0), -0.05195157952942358, 1e-14);
    EXPECT_NEAR(S(1, 0), 0.0, 0.0);
}

TEST(Squeeze, BlockIsExactlyOrthogonal) {
    const double lambda = -0.7;
    const int rows = 10, J = spread_levels(rows, std::abs(lambda));
    const RMat S = squeeze_block(lambda, rows, J);
    EXPECT_NEAR((S * S.transpose() - RMat::Identity(rows, rows)).norm(), 0.0, 1e-13);
    // S(-lambda) = S(lambda)^T
    const RMat Sm = squeeze_block(-lambda, 6, 6);
    EXPECT_NEAR((Sm - squeeze_block(lambda, 6, 6).transpose()).norm(), 0.0, 1e-14);
}

TEST(Fresnel, NormalOrderedAgreesWithEulerRoute) {
    const FresnelParams p = fresnel_params_from_ray({0.9, 0.4, -0.3, (1.0 + 0.4 * -0.3) / 0.9});
    const CMat direct = fresnel_normal_ordered(p, 10);
    const CMat euler = fresnel_block(p, 11, 11);
    EXPECT_NEAR((direct - euler).cwiseAbs().maxCoeff(), 0.0, 1e-12);
}

TEST(Fresnel, EulerFactorsRebuildTheParameters) {
    const FresnelParams p{cplx(1.5, 0.0), cplx(-0.5, -1.0)};
    const EulerForm e = euler_form(p);
    EXPECT_NEAR(std::abs(e.c), 1.0, 1e-14);
    EXPECT_NEAR(std::sinh(e.rho), std::abs(p.r), 1e-14);
}

TEST(Fresnel, TransformsLadderBySAndR) {
    // F b F^dag = s* b + r b^dag, checked on the rows below the truncation edge
    const FresnelParams p = fresnel_params_from_ray({1.1, 0.5, 0.2, (1.0 + 0.1) / 1.1});
    const int n = 8, J = spread_levels(n + 2, std::asinh(std::abs(p.r)));
    const CMat F = fresnel_block(p, J, J);
    const CMat b = single_ladder(J);
    const CMat lhs = F * b * F.adjoint();
    const CMat rhs = std::conj(p.s) * b + p.r * b.adjoint();
    EXPECT_NEAR((lhs - rhs).topLeftCorner(n, n).cwiseAbs().maxCoeff(), 0.0, 1e-11);
}

TEST(Fresnel, OperatorIsUnitaryOnTheTrustedBlock) {
    const FresnelParams p = fresnel_params_from_ray({0.7, -0.6, 0.5, (1.0 - 0.3) / 0.7});
    const int rows = 8, J = spread_levels(rows, std::asinh(std::abs(p.r)));
    const CMat F = fresnel_block(p, rows, J);
    EXPECT_NEAR((F * F.adjoint() - CMat::Identity(rows, rows)).norm(), 0.0, 1e-12);
}

TEST(Fresnel, IdentityAndFourierSpecialCases) {
    const CMat one = fresnel_block({cplx(1.0), cplx(0.0)}, 6, 6);
    EXPECT_NEAR((one - CMat::Identity(6, 6)).norm(), 0.0, 1e-14);
    // A=D=0, C=-B=1 gives s = i, r = 0: F b F^dag = s* b makes F diagonal with s^n
    const FresnelParams f = fresnel_params_from_ray({0.0, -1.0, 1.0, 0.0});
    EXPECT_NEAR(std::abs(f.r), 0.0, 1e-15);
    const CMat Fm = fresnel_block(f, 6, 6);
    for (int n = 1; n < 6; ++n) EXPECT_NEAR(std::abs(Fm(n, n) / Fm(0, 0) - std::pow(f.s, n)), 0.0, 1e-14);
}

TEST(BeamSplitter, PerSectorMatchesMatrixExponential) {
    const FockSpace s = fock::make_space(2, 6);
    const double theta = 0.37;
    const CMat B = beamsplitter(s, theta).matrix();
    const CMat E = fock::matrix_exp(beamsplitter_generator(s, theta)).matrix();
    EXPECT_NEAR((B - E).cwiseAbs().maxCoeff(), 0.0, 1e-12);
    EXPECT_NEAR((B * B.adjoint() - CMat::Identity(s.dimension(), s.dimension())).norm(), 0.0, 1e-12);
}

TEST(BeamSplitter, MixesModesAtQuarterTurn) {
    // B a B^dag = cos(t) a + sin(t) b for generator t (a b^dag - a^dag b)
    const FockSpace s = fock::make_space(2, 8);
    const double t = std::numbers::pi / 4.0;
    const CMat B = beamsplitter(s, t).matrix();
    const CMat a = fock::mode_operator(s, Mode::a, fock::OpKind::annihilate).matrix();
    const CMat b = fock::mode_operator(s, Mode::b, fock::OpKind::annihilate).matrix();
    const CMat lhs = fock::inner_block(B * a * B.adjoint(), s, 3);
    const CMat c1 = fock::inner_block(std::cos(t) * a + std::sin(t) * b, s, 3);
    const CMat c2 = fock::inner_block(std::cos(t) * a - std::sin(t) * b, s, 3);
    EXPECT_LT(std::min((lhs - c1).norm(), (lhs - c2).norm()), 1e-12);
}

TEST(Squeezer, MatchesMatrixExponentialOfGenerator) {
    const FockSpace s = fock::make_space(1, 60);
    const double lambda = 0.3;
    const CMat S = squeezer(s, Mode::a, SqueezeStrength::of(lambda)).matrix();
    const CMat a = single_ladder(61);
    const CMat G = 0.5 * lambda * (a * a - a.adjoint() * a.adjoint());
    const CMat E = fock::matrix_exp(FockOperator(s, G)).matrix();
    EXPECT_NEAR((S - E).topLeftCorner(10, 10).cwiseAbs().maxCoeff(), 0.0, 1e-12);
}

TEST(Heisenberg, TransformIsConjugation) {
    const FockSpace s = fock::make_space(1, 4);
    const FockOperator U = fock::matrix_exp(
        fock::scale(fock::mode_operator(s, Mode::a, fock::OpKind::number), cplx(0.0, 0.5)));
    const FockOperator a = fock::mode_operator(s, Mode::a, fock::OpKind::annihilate);
    const CMat out = heisenberg_transform(U, a).matrix();
    // e^{i t n} a e^{-i t n} = e^{-i t} a
    EXPECT_NEAR((out - std::polar(1.0, -0.5) * a.matrix()).norm(), 0.0, 1e-14);
}
