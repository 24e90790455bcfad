#include "ices/numerics.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace ices::numerics {

namespace {

const double kPi = std::acos(-1.0);

// Golub-Welsch: eigen-decomposition of the symmetric Jacobi matrix.
QuadratureRule golub_welsch(const Eigen::VectorXd& offdiag, double mu0) {
    const int n = static_cast<int>(offdiag.size()) + 1;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k + 1 < n; ++k) {
        J(k, k + 1) = offdiag(k);
        J(k + 1, k) = offdiag(k);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = es.eigenvalues()(i);
        double v0 = es.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v0 * v0;
    }
    return rule;
}

cplx gaussian_exponent(const GaussianIntegralSpec& s, cplx z) {
    cplx zc = std::conj(z);
    return s.zeta * z * zc + s.xi * z + s.eta * zc + s.f * z * z + s.g * zc * zc;
}

}  // namespace

cplx hermite_poly(int n, cplx x) {
    if (n < 0) throw std::invalid_argument("hermite_poly: negative order");
    cplx h0 = 1.0;
    if (n == 0) return h0;
    cplx h1 = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        cplx h2 = 2.0 * x * h1 - 2.0 * double(k) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

std::vector<double> hermite_functions(double x, int n_max) {
    if (n_max < 0) throw std::invalid_argument("hermite_functions: negative order");
    std::vector<double> psi(n_max + 1);
    psi[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
    if (n_max >= 1) psi[1] = std::sqrt(2.0) * x * psi[0];
    for (int n = 2; n <= n_max; ++n)
        psi[n] = std::sqrt(2.0 / n) * x * psi[n - 1] - std::sqrt((n - 1.0) / n) * psi[n - 2];
    return psi;
}

std::optional<std::string> convergence_violation(const GaussianIntegralSpec& s) {
    const cplx det = s.zeta * s.zeta - 4.0 * s.f * s.g;
    const char* names[4] = {"zeta+f+g", "zeta+f-g", "zeta-f+g", "zeta-f-g"};
    const double sf[4] = {1, 1, -1, -1};
    const double sg[4] = {1, -1, 1, -1};
    for (int i = 0; i < 4; ++i) {
        cplx d = s.zeta + sf[i] * s.f + sg[i] * s.g;
        if (!(d.real() < 0.0)) return std::string("Re(") + names[i] + ") < 0 violated";
        if (!((det / d).real() < 0.0))
            return std::string("Re[(zeta^2-4fg)/(") + names[i] + ")] < 0 violated";
    }
    return std::nullopt;
}

cplx gaussian_integral_2d(const GaussianIntegralSpec& s) {
    if (auto bad = convergence_violation(s))
        throw std::domain_error("gaussian_integral_2d: " + *bad);
    const cplx det = s.zeta * s.zeta - 4.0 * s.f * s.g;
    return std::exp((-s.zeta * s.xi * s.eta + s.xi * s.xi * s.g + s.eta * s.eta * s.f) / det) /
           std::sqrt(det);
}

cplx gaussian_integral_2d_quadrature(const GaussianIntegralSpec& s, double L, int n) {
    if (n < 2 || !(L > 0)) throw std::invalid_argument("gaussian_integral_2d_quadrature: bad grid");
    const double h = 2.0 * L / (n - 1);
    cplx total = 0.0;
    for (int i = 0; i < n; ++i) {
        double x = -L + i * h;
        double wx = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        cplx row = 0.0;
        for (int j = 0; j < n; ++j) {
            double y = -L + j * h;
            double wy = (j == 0 || j == n - 1) ? 0.5 : 1.0;
            row += wy * std::exp(gaussian_exponent(s, cplx(x, y)));
        }
        total += wx * row;
    }
    return total * h * h / kPi;
}

bool gaussian_integrand_decays(const GaussianIntegralSpec& s) {
    // Re of (zeta+f+g)x^2 + (zeta-f-g)y^2 + 2i(f-g)xy
    double pxx = (s.zeta + s.f + s.g).real();
    double pyy = (s.zeta - s.f - s.g).real();
    double pxy = -(s.f - s.g).imag();
    return pxx < 0 && pxx * pyy - pxy * pxy > 0;
}

cplx gaussian_integral_1d(cplx alpha, cplx beta) {
    if (!(alpha.real() > 0)) throw std::domain_error("gaussian_integral_1d: Re(alpha) <= 0");
    return std::sqrt(kPi / alpha) * std::exp(beta * beta / (4.0 * alpha));
}

cplx gaussian_integral_1d_quadrature(cplx alpha, cplx beta, double L, int n) {
    const double h = 2.0 * L / (n - 1);
    cplx total = 0.0;
    for (int i = 0; i < n; ++i) {
        double x = -L + i * h;
        double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        total += w * std::exp(-alpha * x * x + beta * x);
    }
    return total * h;
}

QuadratureRule gauss_hermite_rule(int order) {
    if (order < 1) throw std::invalid_argument("gauss_hermite_rule: order < 1");
    Eigen::VectorXd off(order - 1);
    for (int k = 1; k < order; ++k) off(k - 1) = std::sqrt(k / 2.0);
    return golub_welsch(off, std::sqrt(kPi));
}

QuadratureRule gauss_legendre_rule(int order, double lo, double hi) {
    if (order < 1) throw std::invalid_argument("gauss_legendre_rule: order < 1");
    if (!(hi > lo)) throw std::invalid_argument("gauss_legendre_rule: empty interval");
    Eigen::VectorXd off(order - 1);
    for (int k = 1; k < order; ++k) off(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
    QuadratureRule rule = golub_welsch(off, 2.0);
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (int i = 0; i < order; ++i) {
        rule.nodes[i] = mid + half * rule.nodes[i];
        rule.weights[i] *= half;
    }
    return rule;
}

PlanarGrid planar_grid(double R, int n_radial, int n_angular) {
    if (!(R > 0) || n_radial < 1 || n_angular < 1)
        throw std::invalid_argument("planar_grid: invalid sizes");
    QuadratureRule radial = gauss_legendre_rule(n_radial, 0.0, R);
    PlanarGrid grid;
    grid.nodes.reserve(std::size_t(n_radial) * n_angular);
    grid.weights.reserve(std::size_t(n_radial) * n_angular);
    const double dtheta = 2.0 * kPi / n_angular;
    for (int i = 0; i < n_radial; ++i) {
        double r = radial.nodes[i];
        for (int j = 0; j < n_angular; ++j) {
            double th = (j + 0.5) * dtheta;
            grid.nodes.push_back(std::polar(r, th));
            grid.weights.push_back(radial.weights[i] * r * dtheta / kPi);
        }
    }
    return grid;
}

std::vector<cplx> fresnel_integral_1d(const std::vector<double>& x, const std::vector<cplx>& f,
                                      const RayMatrix& m, const std::vector<double>& xp) {
    if (std::abs(m.B) < kFresnelMinB)
        throw std::invalid_argument("fresnel_integral_1d: |B| below the oscillation guard");
    if (x.size() != f.size()) throw std::invalid_argument("fresnel_integral_1d: size mismatch");
    if (x.size() < std::size_t(kFresnelMinSamples))
        throw std::invalid_argument("fresnel_integral_1d: fewer than 2048 samples");
    double fmax = 0.0;
    for (const auto& v : f) fmax = std::max(fmax, std::abs(v));
    if (std::abs(f.front()) > kFresnelEdgeDecay * fmax || std::abs(f.back()) > kFresnelEdgeDecay * fmax)
        throw std::invalid_argument("fresnel_integral_1d: input does not decay at the grid ends");
    const std::size_t n = x.size();
    const double h = (x.back() - x.front()) / double(n - 1);
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(x[i] - x[i - 1] - h) > 1e-9 * std::abs(h))
            throw std::invalid_argument("fresnel_integral_1d: grid must be uniform");

    const cplx pref = 1.0 / std::sqrt(cplx(0.0, 2.0 * kPi * m.B));
    const double inv2b = 1.0 / (2.0 * m.B);
    std::vector<cplx> g(xp.size());
    for (std::size_t j = 0; j < xp.size(); ++j) {
        const double u = xp[j];
        cplx acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
            double phase = (m.A * x[i] * x[i] - 2.0 * u * x[i] + m.D * u * u) * inv2b;
            acc += w * std::polar(1.0, phase) * f[i];
        }
        g[j] = pref * acc * h;
    }
    return g;
}

}  // namespace ices::numerics
