#pragma once

#include <random>

#include "ices/fock.hpp"
#include "ices/params.hpp"

namespace ices::gaussian {

using fock::FockOperator;
using fock::FockSpace;
using fock::Mode;

constexpr double kParamTolerance = 1e-9;

void check_unimodular(const RayMatrix& m, double tol = kParamTolerance);
void check_fresnel(const FresnelParams& p, double tol = kParamTolerance);

FresnelParams fresnel_params_from_ray(const RayMatrix& m);
RayMatrix ray_from_fresnel(const FresnelParams& p);
// Parameters of F^dagger: (s*, -r).
FresnelParams adjoint_params(const FresnelParams& p);

// F = c R(theta1) S(rho) R(theta2) with R(t) = exp(i t n).
struct EulerForm {
    cplx c;
    double theta1, rho, theta2;
};
EulerForm euler_form(const FresnelParams& p);

// Levels needed so that G|m>, m < count, loses less than ~1e-16 above the
// returned count, for a Gaussian unitary of squeezing rate rho.
int spread_levels(int count, double rho);

// Exact elements <m|S(lambda)|n> of exp(lambda/2 (a^2 - a^dag^2)) for
// m < rows, n < cols, from an oversized truncation split by parity.
RMat squeeze_block(double lambda, int rows, int cols);
// Exact elements <m|F(s,r)|n>, m < rows, n < cols.
CMat fresnel_block(const FresnelParams& p, int rows, int cols);
// The three-factor normally ordered product evaluated directly on levels
// 0..cutoff. Exact in exact arithmetic; loses digits for large cutoffs.
CMat fresnel_normal_ordered(const FresnelParams& p, int cutoff);

FockOperator fresnel_operator(const FockSpace& space, Mode mode, const FresnelParams& p);
FockOperator squeezer(const FockSpace& space, Mode mode, SqueezeStrength lambda);

// theta (a b^dag - a^dag b) on the truncated space.
FockOperator beamsplitter_generator(const FockSpace& space, double theta);
// exp of the generator, built per photon-number sector. Identical to
// matrix_exp(beamsplitter_generator) and exact on sectors n_a + n_b <= cutoff.
FockOperator beamsplitter(const FockSpace& space, double theta);

FockOperator heisenberg_transform(const FockOperator& U, const FockOperator& X);

// A, C uniform, B uniform with |B| >= min_abs_b, D = (1 + BC)/A with |A| >= 0.2;
// redrawn until |r| <= max_abs_r.
RayMatrix random_ray(std::mt19937_64& rng, double max_abs_r, double min_abs_b = 0.0);

}  // namespace ices::gaussian
