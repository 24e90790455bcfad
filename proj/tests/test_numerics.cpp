#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "ices/numerics.hpp"

using namespace ices;
using numerics::cplx;

namespace {
const double kPi = std::numbers::pi;
}

TEST(Hermite, PolynomialValuesFromExplicitForms) {
    // H2 = 4x^2 - 2, H3 = 8x^3 - 12x, H4 = 16x^4 - 48x^2 + 12
    EXPECT_NEAR(std::abs(numerics::hermite_poly(2, 1.5) - 7.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(numerics::hermite_poly(3, cplx(0.0, 1.0)) - cplx(0.0, -20.0)), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(numerics::hermite_poly(4, 0.5) - 1.0), 0.0, 1e-13);
    EXPECT_EQ(numerics::hermite_poly(0, 3.0), cplx(1.0));
}

TEST(Hermite, FunctionsAtKnownPoints) {
    const auto h0 = numerics::hermite_functions(0.0, 3);
    EXPECT_NEAR(h0[0], 0.7511255444649425, 1e-15);
    EXPECT_NEAR(h0[1], 0.0, 1e-15);
    EXPECT_NEAR(h0[2], -0.5311259660135984, 1e-15);
    EXPECT_NEAR(numerics::hermite_functions(0.7, 1)[1], 0.5820005855677156, 1e-15);
}

TEST(Hermite, FunctionsAreOrthonormalUnderQuadrature) {
    const auto rule = numerics::gauss_hermite_rule(60);
    for (int m = 0; m <= 12; m += 3)
        for (int n = 0; n <= 12; n += 4) {
            double acc = 0.0;
            for (size_t i = 0; i < rule.nodes.size(); ++i) {
                const double x = rule.nodes[i];
                const auto h = numerics::hermite_functions(x, 12);
                acc += rule.weights[i] * std::exp(x * x) * h[m] * h[n];
            }
            // the e^{x^2} reweighting costs a few digits at the outer nodes
            EXPECT_NEAR(acc, m == n ? 1.0 : 0.0, 1e-10) << m << "," << n;
        }
}

TEST(Hermite, LargeOrderStaysFinite) {
    const auto h = numerics::hermite_functions(3.0, 400);
    for (double v : h) EXPECT_TRUE(std::isfinite(v));
}

TEST(Quadrature, GaussHermiteOrderTwo) {
    const auto r = numerics::gauss_hermite_rule(2);
    ASSERT_EQ(r.nodes.size(), 2u);
    EXPECT_NEAR(std::abs(r.nodes[0]), 1.0 / std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(r.nodes[0] + r.nodes[1], 0.0, 1e-14);
    EXPECT_NEAR(r.weights[0], 0.8862269254527579, 1e-14);
    EXPECT_NEAR(r.weights[1], 0.8862269254527579, 1e-14);
}

TEST(Quadrature, GaussLegendreOrderTwoOnUnitInterval) {
    auto r = numerics::gauss_legendre_rule(2, 0.0, 1.0);
    std::sort(r.nodes.begin(), r.nodes.end());
    EXPECT_NEAR(r.nodes[0], 0.21132486540518708, 1e-14);
    EXPECT_NEAR(r.nodes[1], 0.7886751345948129, 1e-14);
    EXPECT_NEAR(r.weights[0] + r.weights[1], 1.0, 1e-14);
}

TEST(Quadrature, PlanarGridMoments) {
    // int_{|z|<R} d^2z/pi = R^2, int |z|^2 d^2z/pi = R^4/2, int z d^2z/pi = 0
    const double R = 2.5;
    const auto g = numerics::planar_grid(R, 12, 16);
    double m0 = 0.0, m2 = 0.0;
    cplx m1 = 0.0;
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        m0 += g.weights[i];
        m2 += g.weights[i] * std::norm(g.nodes[i]);
        m1 += g.weights[i] * g.nodes[i];
    }
    EXPECT_NEAR(m0, R * R, 1e-12);
    EXPECT_NEAR(m2, std::pow(R, 4) / 2.0, 1e-11);
    EXPECT_NEAR(std::abs(m1), 0.0, 1e-12);
}

TEST(GaussianIntegral, OneDimensionalClosedForm) {
    // sqrt(pi/alpha) exp(beta^2 / 4 alpha) at alpha = 1, beta = 2
    EXPECT_NEAR(std::abs(numerics::gaussian_integral_1d(1.0, 2.0) - 4.818029094698721), 0.0, 1e-13);
    const cplx a(0.7, 0.3), b(0.2, -0.5);
    EXPECT_NEAR(std::abs(numerics::gaussian_integral_1d(a, b) - numerics::gaussian_integral_1d_quadrature(a, b, 12.0, 2001)),
                0.0, 1e-12);
}

TEST(GaussianIntegral, TwoDimensionalSpecialCases) {
    using S = numerics::GaussianIntegralSpec;
    EXPECT_NEAR(std::abs(numerics::gaussian_integral_2d(S{-1.0, 0.0, 0.0, 0.0, 0.0}) - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(numerics::gaussian_integral_2d(S{-2.0, 0.0, 0.0, 0.0, 0.0}) - 0.5), 0.0, 1e-14);
    // -(1/zeta) exp(-xi eta / zeta)
    EXPECT_NEAR(std::abs(numerics::gaussian_integral_2d(S{-1.0, 1.0, 1.0, 0.0, 0.0}) - std::exp(1.0)), 0.0, 1e-13);
    // real f = g splits into (zeta + 2f) x^2 + (zeta - 2f) y^2: 1/sqrt(zeta^2 - 4f^2)
    EXPECT_NEAR(std::abs(numerics::gaussian_integral_2d(S{-1.0, 0.0, 0.0, 0.25, 0.25}) - 1.1547005383792517), 0.0,
                1e-14);
}

TEST(GaussianIntegral, ClosedFormMatchesQuadratureOffAxis) {
    const numerics::GaussianIntegralSpec s{cplx(-1.1, 0.2), cplx(0.3, -0.1), cplx(-0.2, 0.4), cplx(0.1, 0.15),
                                           cplx(-0.05, 0.2)};
    ASSERT_FALSE(numerics::convergence_violation(s).has_value());
    const cplx q = numerics::gaussian_integral_2d_quadrature(s, 12.0, 301);
    EXPECT_NEAR(std::abs(numerics::gaussian_integral_2d(s) - q) / std::abs(q), 0.0, 1e-10);
}

TEST(GaussianIntegral, ValidatorRejectsGrowingIntegrands) {
    using S = numerics::GaussianIntegralSpec;
    EXPECT_FALSE(numerics::convergence_violation(S{-1.0, 0.0, 0.0, 0.0, 0.0}).has_value());
    EXPECT_TRUE(numerics::convergence_violation(S{0.5, 0.0, 0.0, 0.0, 0.0}).has_value());
    EXPECT_TRUE(numerics::convergence_violation(S{-1.0, 0.0, 0.0, 0.6, 0.6}).has_value());
    EXPECT_TRUE(numerics::gaussian_integrand_decays(S{-1.0, 0.0, 0.0, 0.4, 0.4}));
    EXPECT_FALSE(numerics::gaussian_integrand_decays(S{-1.0, 0.0, 0.0, 0.6, 0.6}));
}

TEST(FresnelIntegral, FourierRayKeepsTheGroundGaussian) {
    // (2 pi i)^{-1/2} int exp(-i x u) exp(-x^2/2) dx = i^{-1/2} exp(-u^2/2)
    const RayMatrix fourier{0.0, 1.0, -1.0, 0.0};
    std::vector<double> x(4096), xp(41);
    std::vector<cplx> f(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        x[i] = -12.0 + 24.0 * i / (x.size() - 1);
        f[i] = std::exp(-0.5 * x[i] * x[i]);
    }
    for (size_t j = 0; j < xp.size(); ++j) xp[j] = -4.0 + 8.0 * j / (xp.size() - 1);
    const auto g = numerics::fresnel_integral_1d(x, f, fourier, xp);
    const cplx ratio = g[20];
    for (size_t j = 0; j < xp.size(); ++j)
        EXPECT_NEAR(std::abs(g[j] - ratio * std::exp(-0.5 * xp[j] * xp[j])), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(ratio - std::pow(cplx(0.0, 1.0), -0.5)), 0.0, 1e-10);
}

TEST(FresnelIntegral, GuardsRejectBadInput) {
    std::vector<double> x(4096);
    std::vector<cplx> f(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        x[i] = -12.0 + 24.0 * i / (x.size() - 1);
        f[i] = std::exp(-0.5 * x[i] * x[i]);
    }
    EXPECT_THROW(numerics::fresnel_integral_1d(x, f, {1.0, 0.05, 0.0, 1.0}, {0.0}), std::invalid_argument);
    std::vector<double> xs(x.begin(), x.begin() + 100);
    std::vector<cplx> fs(f.begin(), f.begin() + 100);
    EXPECT_THROW(numerics::fresnel_integral_1d(xs, fs, {0.0, 1.0, -1.0, 0.0}, {0.0}), std::invalid_argument);
    std::vector<cplx> wide(x.size(), 1.0);
    EXPECT_THROW(numerics::fresnel_integral_1d(x, wide, {0.0, 1.0, -1.0, 0.0}, {0.0}), std::invalid_argument);
}
