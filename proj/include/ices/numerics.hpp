#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ices/params.hpp"

namespace ices::numerics {

using cplx = std::complex<double>;

// Physicists' Hermite polynomial by the three-term recurrence.
cplx hermite_poly(int n, cplx x);

// Normalized Hermite functions psi_0..psi_N at x, built by the stable
// recurrence on the functions themselves (no 2^n n! overflow).
std::vector<double> hermite_functions(double x, int n_max);

// Integral of exp(zeta|z|^2 + xi z + eta z* + f z^2 + g z*^2) over d^2z/pi.
struct GaussianIntegralSpec {
    cplx zeta, xi, eta, f, g;
};

// Name of the first failing convergence condition, if any. All four sign
// combinations of Re(zeta +- f +- g) are enforced.
std::optional<std::string> convergence_violation(const GaussianIntegralSpec& s);
cplx gaussian_integral_2d(const GaussianIntegralSpec& s);
// Brute-force tensor trapezoid on [-L, L]^2 with n points per axis.
cplx gaussian_integral_2d_quadrature(const GaussianIntegralSpec& s, double L, int n);
// Real quadratic form of the exponent is negative definite.
bool gaussian_integrand_decays(const GaussianIntegralSpec& s);

// Integral of exp(-alpha x^2 + beta x) over the real line.
cplx gaussian_integral_1d(cplx alpha, cplx beta);
cplx gaussian_integral_1d_quadrature(cplx alpha, cplx beta, double L, int n);

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Nodes and weights for the weight e^{-x^2}.
QuadratureRule gauss_hermite_rule(int order);
// Gauss-Legendre on [lo, hi].
QuadratureRule gauss_legendre_rule(int order, double lo, double hi);

struct PlanarGrid {
    std::vector<cplx> nodes;
    std::vector<double> weights;  // already divided by pi
};

// Disk of radius R: Gauss-Legendre in the radius, midpoint in the angle.
PlanarGrid planar_grid(double R, int n_radial, int n_angular);

// g(x') = (2 pi i B)^{-1/2} int exp[i(A x^2 - 2 x' x + D x'^2)/(2B)] f(x) dx,
// trapezoid on the supplied uniform x grid.
std::vector<cplx> fresnel_integral_1d(const std::vector<double>& x, const std::vector<cplx>& f,
                                      const RayMatrix& m, const std::vector<double>& xp);

constexpr double kFresnelMinB = 0.1;
constexpr int kFresnelMinSamples = 2048;
constexpr double kFresnelEdgeDecay = 1e-10;

}  // namespace ices::numerics
