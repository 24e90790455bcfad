#include "ices/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace ices::gaussian {

namespace {

// Tail length (in levels) for amplitudes decaying like t^{k/2} to drop below 1e-16.
double tail_levels(double rho) {
    const double t = std::tanh(std::abs(rho));
    if (t < 1e-12) return 0.0;
    return 2.0 * std::log(1e-16) / std::log(t);
}

// exp(lambda K) restricted to one parity chain of K = (a^2 - a^dag^2)/2.
RMat parity_chain_exp(double lambda, int parity, int length) {
    RMat K = RMat::Zero(length, length);
    for (int i = 0; i + 1 < length; ++i) {
        double n = 2.0 * i + parity;
        double w = 0.5 * std::sqrt((n + 1.0) * (n + 2.0));
        K(i, i + 1) = lambda * w;
        K(i + 1, i) = -lambda * w;
    }
    return K.exp();
}

}  // namespace

void check_unimodular(const RayMatrix& m, double tol) {
    if (std::abs(m.det() - 1.0) > tol) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "ray matrix is not unimodular: AD-BC = " << m.det();
        throw std::invalid_argument(msg.str());
    }
}

void check_fresnel(const FresnelParams& p, double tol) {
    if (std::abs(p.constraint() - 1.0) > tol) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "Fresnel parameters violate |s|^2-|r|^2 = 1: got " << p.constraint();
        throw std::invalid_argument(msg.str());
    }
}

FresnelParams fresnel_params_from_ray(const RayMatrix& m) {
    check_unimodular(m);
    FresnelParams p;
    p.s = 0.5 * cplx(m.A + m.D, -(m.B - m.C));
    p.r = -0.5 * cplx(m.A - m.D, m.B + m.C);
    return p;
}

RayMatrix ray_from_fresnel(const FresnelParams& p) {
    check_fresnel(p);
    RayMatrix m;
    m.A = p.s.real() - p.r.real();
    m.D = p.s.real() + p.r.real();
    m.B = -p.s.imag() - p.r.imag();
    m.C = p.s.imag() - p.r.imag();
    return m;
}

FresnelParams adjoint_params(const FresnelParams& p) { return {std::conj(p.s), -p.r}; }

EulerForm euler_form(const FresnelParams& p) {
    check_fresnel(p);
    EulerForm e;
    const double as = std::arg(p.s);
    const double ar = std::abs(p.r) > 0.0 ? std::arg(p.r) : 0.0;
    e.rho = std::asinh(std::abs(p.r));
    e.theta1 = 0.5 * (as + ar);
    e.theta2 = 0.5 * (as - ar);
    // <0|F|0> = 1/sqrt(s*), principal branch
    e.c = std::sqrt(std::abs(p.s)) / std::sqrt(std::conj(p.s));
    return e;
}

int spread_levels(int count, double rho) {
    if (count <= 0) return 0;
    double reach = 1.6 * std::exp(2.0 * std::abs(rho)) * count + tail_levels(rho);
    return std::max(count, static_cast<int>(std::ceil(reach)) + 16);
}

RMat squeeze_block(double lambda, int rows, int cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("squeeze_block: empty block");
    // Element (m, n) of the truncated exponential is exact once the
    // truncation clears min(m, n) * e^{2|lambda|} plus the decay tail.
    // Past that reach the elements are below 1e-16 and left at zero.
    const int lo = std::min(rows, cols);
    const double reach = 1.6 * std::exp(2.0 * std::abs(lambda)) * lo + tail_levels(lambda) + 32.0;
    const int levels = std::max(lo + 8, static_cast<int>(std::ceil(reach)));
    RMat out = RMat::Zero(rows, cols);
    for (int parity = 0; parity < 2; ++parity) {
        const int length = (levels - parity + 1) / 2;
        RMat E = parity_chain_exp(lambda, parity, length);
        const int rmax = std::min(rows, levels), cmax = std::min(cols, levels);
        for (int i = 0; 2 * i + parity < rmax; ++i)
            for (int j = 0; 2 * j + parity < cmax; ++j) out(2 * i + parity, 2 * j + parity) = E(i, j);
    }
    return out;
}

CMat fresnel_block(const FresnelParams& p, int rows, int cols) {
    const EulerForm e = euler_form(p);
    RMat S = squeeze_block(e.rho, rows, cols);
    CMat F(rows, cols);
    for (int m = 0; m < rows; ++m)
        for (int n = 0; n < cols; ++n)
            F(m, n) = e.c * std::polar(1.0, e.theta1 * m + e.theta2 * n) * S(m, n);
    return F;
}

CMat fresnel_normal_ordered(const FresnelParams& p, int cutoff) {
    check_fresnel(p);
    const int d = cutoff + 1;
    const cplx sc = std::conj(p.s);
    const cplx up = -p.r / (2.0 * sc);            // coefficient of a^dag^2
    const cplx down = std::conj(p.r) / (2.0 * sc);  // coefficient of a^2
    // <m|exp(up a^dag^2)|j> = up^k sqrt(m!/j!)/k!, m = j + 2k
    CMat raise = CMat::Zero(d, d), lower = CMat::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        for (int k = 0; j + 2 * k < d; ++k) {
            int m = j + 2 * k;
            double mag = std::exp(0.5 * (std::lgamma(m + 1.0) - std::lgamma(j + 1.0)) - std::lgamma(k + 1.0));
            raise(m, j) = std::pow(up, k) * mag;
            lower(j, m) = std::pow(down, k) * mag;
        }
    }
    CVec diag(d);
    for (int n = 0; n < d; ++n) diag(n) = std::pow(1.0 / sc, n);
    return (raise * diag.asDiagonal() * lower) / std::sqrt(sc);
}

FockOperator fresnel_operator(const FockSpace& space, Mode mode, const FresnelParams& p) {
    const int d = space.levels();
    return FockOperator(space, fock::embed_mode(space, mode, fresnel_block(p, d, d)));
}

FockOperator squeezer(const FockSpace& space, Mode mode, SqueezeStrength lambda) {
    const int d = space.levels();
    CMat S = squeeze_block(lambda.lambda, d, d).cast<cplx>();
    return FockOperator(space, fock::embed_mode(space, mode, S));
}

FockOperator beamsplitter_generator(const FockSpace& space, double theta) {
    if (space.modes != 2) throw std::invalid_argument("beamsplitter needs a 2-mode space");
    auto a = fock::mode_operator(space, Mode::a, fock::OpKind::annihilate).matrix();
    auto b = fock::mode_operator(space, Mode::b, fock::OpKind::annihilate).matrix();
    return FockOperator(space, theta * (a * b.adjoint() - a.adjoint() * b));
}

FockOperator beamsplitter(const FockSpace& space, double theta) {
    if (space.modes != 2) throw std::invalid_argument("beamsplitter needs a 2-mode space");
    const int N = space.cutoff;
    CMat out = CMat::Zero(space.dimension(), space.dimension());
    for (int M = 0; M <= 2 * N; ++M) {
        const int lo = std::max(0, M - N), hi = std::min(M, N);
        const int len = hi - lo + 1;
        // basis |na, M - na>, na = lo..hi; a b^dag lowers na, a^dag b raises it
        RMat G = RMat::Zero(len, len);
        for (int i = 0; i + 1 < len; ++i) {
            int na = lo + i, nb = M - na;
            double w = std::sqrt((na + 1.0) * nb);  // <na+1, nb-1| a^dag b |na, nb>
            G(i + 1, i) = -theta * w;
            G(i, i + 1) = theta * w;
        }
        RMat E = G.exp();
        for (int i = 0; i < len; ++i)
            for (int j = 0; j < len; ++j)
                out(space.index(lo + i, M - lo - i), space.index(lo + j, M - lo - j)) = E(i, j);
    }
    return FockOperator(space, std::move(out));
}

FockOperator heisenberg_transform(const FockOperator& U, const FockOperator& X) {
    return fock::compose({U, X, fock::adjoint(U)});
}

RayMatrix random_ray(std::mt19937_64& rng, double max_abs_r, double min_abs_b) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        double A = 0.2 + 1.3 * unit(rng);
        if (unit(rng) < 0.5) A = -A;
        double B = min_abs_b + (1.5 - min_abs_b) * unit(rng);
        if (unit(rng) < 0.5) B = -B;
        double C = -1.5 + 3.0 * unit(rng);
        RayMatrix m{A, B, C, (1.0 + B * C) / A};
        if (std::abs(fresnel_params_from_ray(m).r) <= max_abs_r) return m;
    }
    throw std::runtime_error("random_ray: no draw satisfied the |r| cap");
}

}  // namespace ices::gaussian
