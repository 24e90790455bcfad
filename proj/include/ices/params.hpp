#pragma once

#include <cmath>
#include <complex>

namespace ices {

// Classical ray-transfer matrix. Unimodularity is checked where it matters,
// not on construction, so negative controls can carry AD - BC != 1.
struct RayMatrix {
    double A = 1.0, B = 0.0, C = 0.0, D = 1.0;
    double det() const { return A * D - B * C; }
};

// |s|^2 - |r|^2 = 1 for valid parameters.
struct FresnelParams {
    std::complex<double> s{1.0, 0.0};
    std::complex<double> r{0.0, 0.0};
    double constraint() const { return std::norm(s) - std::norm(r); }
};

struct SqueezeStrength {
    double lambda = 0.0;
    double mu = 1.0;  // e^lambda
    static SqueezeStrength of(double lambda) { return {lambda, std::exp(lambda)}; }
};

}  // namespace ices
