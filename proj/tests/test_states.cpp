#include <cmath>

#include <gtest/gtest.h>

#include "ices/gaussian.hpp"
#include "ices/states.hpp"

using namespace ices;
using namespace ices::states;

namespace {
FresnelParams params_of(const RayMatrix& m) { return gaussian::fresnel_params_from_ray(m); }
const RayMatrix kRay{0.9, 0.4, -0.3, (1.0 - 0.12) / 0.9};
}  // namespace

TEST(RaisingExp, LinearTermGivesUnnormalizedCoherent) {
    // exp(c x)|0> has components c^n / sqrt(n!)
    const cplx c(0.4, -0.2);
    const CVec v = raising_exp(c, 0.0, 8);
    for (int n = 0; n <= 8; ++n)
        EXPECT_NEAR(std::abs(v(n) - std::pow(c, n) / std::sqrt(std::tgamma(n + 1.0))), 0.0, 1e-15);
}

TEST(RaisingExp, QuadraticTermIsEvenOnly) {
    // exp(c2 x^2)|0>: <2|.> = c2 sqrt(2), <4|.> = c2^2 sqrt(24)/2
    const cplx c2(0.3, 0.1);
    const CVec v = raising_exp(0.0, c2, 6);
    EXPECT_NEAR(std::abs(v(1)), 0.0, 0.0);
    EXPECT_NEAR(std::abs(v(2) - c2 * std::sqrt(2.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(v(4) - c2 * c2 * std::sqrt(24.0) / 2.0), 0.0, 1e-15);
}

TEST(RaisingExp, TwoModeCrossTerm) {
    // exp(cab x y)|00> = sum cab^n |n n>
    const cplx cab(0.5, 0.0);
    const CMat v = raising_exp(TwoModeExponent{0.0, 0.0, 0.0, 0.0, cab}, 5);
    for (int n = 0; n <= 5; ++n) EXPECT_NEAR(std::abs(v(n, n) - std::pow(cab, n)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(v(1, 0)) + std::abs(v(2, 1)), 0.0, 0.0);
}

TEST(Icms, IdentityRayIsThePositionKet) {
    const fock::FockSpace s = fock::make_space(1, 30);
    const FockState st = icms(s, fock::Mode::a, 0.7, params_of({}));
    EXPECT_LT(fock::phase_aligned_residual(fock::position_amplitudes(0.7, 30), st.amplitudes()), 1e-12);
}

TEST(Icms, EigenvectorOfRotatedQuadrature) {
    const fock::FockSpace s = fock::make_space(1, 40);
    const double q = 0.6;
    const FockState st = icms(s, fock::Mode::a, q, params_of(kRay));
    const CMat Q = fock::mode_operator(s, fock::Mode::a, fock::OpKind::Q).matrix();
    const CMat P = fock::mode_operator(s, fock::Mode::a, fock::OpKind::P).matrix();
    const CVec r = (kRay.D * Q - kRay.B * P) * st.amplitudes() - q * st.amplitudes();
    EXPECT_LT(r.head(20).norm() / st.amplitudes().head(20).norm(), 1e-12);
}

TEST(Imcs, EigenvectorOfConjugateQuadrature) {
    const fock::FockSpace s = fock::make_space(1, 40);
    const double p = -0.4;
    const FockState st = imcs(s, fock::Mode::a, p, params_of(kRay));
    const CMat Q = fock::mode_operator(s, fock::Mode::a, fock::OpKind::Q).matrix();
    const CMat P = fock::mode_operator(s, fock::Mode::a, fock::OpKind::P).matrix();
    const CVec r = (kRay.A * P - kRay.C * Q) * st.amplitudes() - p * st.amplitudes();
    EXPECT_LT(r.head(20).norm() / st.amplitudes().head(20).norm(), 1e-12);
}

TEST(Icms, RejectsDegenerateCombination) {
    // D + iB = 0 needs B = D = 0, which no unimodular ray allows; the
    // parameter check catches it first
    const fock::FockSpace s = fock::make_space(1, 8);
    EXPECT_THROW(icms(s, fock::Mode::a, 0.0, FresnelParams{cplx(0.5), cplx(-0.5)}), std::invalid_argument);
}

TEST(Ices, ClosedFormAgreesWithProtocol) {
    const fock::FockSpace s = fock::make_space(2, 14);
    const IcesLabel label{cplx(0.3, -0.2), 0.5, params_of(kRay)};
    const FockState a = states::ices(s, label, Method::closed_form);
    const FockState b = states::ices(s, label, Method::protocol);
    const auto idx = fock::inner_indices(s, 6);
    CVec va(idx.size()), vb(idx.size());
    for (size_t i = 0; i < idx.size(); ++i) {
        va(i) = a.amplitudes()(idx[i]);
        vb(i) = b.amplitudes()(idx[i]);
    }
    EXPECT_LT(fock::phase_aligned_residual(va, vb), 1e-10);
}

TEST(Ices, ConjugateClosedFormAgreesWithProtocol) {
    const fock::FockSpace s = fock::make_space(2, 14);
    const KappaLabel label{cplx(-0.1, 0.4), -0.3, params_of(kRay)};
    const FockState a = ices_conjugate(s, label, Method::closed_form);
    const FockState b = ices_conjugate(s, label, Method::protocol);
    const auto idx = fock::inner_indices(s, 6);
    CVec va(idx.size()), vb(idx.size());
    for (size_t i = 0; i < idx.size(); ++i) {
        va(i) = a.amplitudes()(idx[i]);
        vb(i) = b.amplitudes()(idx[i]);
    }
    EXPECT_LT(fock::phase_aligned_residual(va, vb), 1e-10);
}

TEST(Schmidt, ProductStateHasZeroEntropy) {
    const fock::FockSpace s = fock::make_space(2, 10);
    const FockState st = fock::basis_state(s, {fock::ModeSpec::coherent(0.4), fock::ModeSpec::coherent(cplx(0.0, -0.3))});
    const SchmidtResult r = schmidt_decompose(st);
    EXPECT_NEAR(r.singular_values[0], 1.0, 1e-12);
    EXPECT_NEAR(r.entropy, 0.0, 1e-10);
}

TEST(Schmidt, BellPairHasLogTwo) {
    const fock::FockSpace s = fock::make_space(2, 3);
    CVec v = CVec::Zero(s.dimension());
    v(s.index(0, 0)) = 1.0 / std::sqrt(2.0);
    v(s.index(1, 1)) = 1.0 / std::sqrt(2.0);
    const SchmidtResult r = schmidt_decompose(FockState(s, v));
    EXPECT_NEAR(r.entropy, 0.6931471805599453, 1e-14);
    EXPECT_NEAR(r.singular_values[0], 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(r.singular_values[1], 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Schmidt, IcesIsEntangled) {
    const fock::FockSpace s = fock::make_space(2, 12);
    const FockState st = states::ices(s, {cplx(0.2, 0.1), 0.3, params_of(kRay)}, Method::closed_form);
    EXPECT_GT(schmidt_decompose(st).entropy, 0.1);
}
