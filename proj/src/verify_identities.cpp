#include <algorithm>
#include <cmath>
#include <random>

#include "ices/numerics.hpp"
#include "ices/verify.hpp"

namespace ices::verify {

namespace {

using fock::Mode;
using fock::OpKind;

const double kSqrt2 = std::sqrt(2.0);

CMat op(const FockSpace& s, Mode m, OpKind k) { return fock::mode_operator(s, m, k).matrix(); }

// D(Qb-Qa) - B(Pb-Pa) and A(Pb-Pa) - C(Qb-Qa) on the truncated space
CMat coordinate_combination(const RayMatrix& m, const FockSpace& s) {
    return m.D * (op(s, Mode::b, OpKind::Q) - op(s, Mode::a, OpKind::Q)) -
           m.B * (op(s, Mode::b, OpKind::P) - op(s, Mode::a, OpKind::P));
}

CMat momentum_combination(const RayMatrix& m, const FockSpace& s) {
    return m.A * (op(s, Mode::b, OpKind::P) - op(s, Mode::a, OpKind::P)) -
           m.C * (op(s, Mode::b, OpKind::Q) - op(s, Mode::a, OpKind::Q));
}

// normal symbols of the two combinations, with a^dag -> z'*, a -> z
cplx coordinate_symbol(const RayMatrix& m, cplx zac, cplx zbc, cplx za, cplx zb) {
    return (zb - za) * cplx(m.D, m.B) / kSqrt2 + (zbc - zac) * cplx(m.D, -m.B) / kSqrt2;
}

cplx momentum_symbol(const RayMatrix& m, cplx zac, cplx zbc, cplx za, cplx zb) {
    return (zb - za) * cplx(-m.C, -m.A) / kSqrt2 + (zbc - zac) * cplx(-m.C, m.A) / kSqrt2;
}

CMat expm(const CMat& x, const FockSpace& s) { return fock::matrix_exp(FockOperator(s, x)).matrix(); }

}  // namespace

cplx coherent_overlap(const CoherentPair& p) {
    return std::exp(std::conj(p.za_bra) * p.za + std::conj(p.zb_bra) * p.zb -
                    0.5 * (std::norm(p.za_bra) + std::norm(p.za) + std::norm(p.zb_bra) + std::norm(p.zb)));
}

cplx coherent_matrix_element(const FockOperator& o, const CoherentPair& p) {
    const FockSpace& s = o.space();
    if (s.modes != 2) throw std::invalid_argument("coherent_matrix_element needs a 2-mode operator");
    const auto bra = fock::basis_state(s, {fock::ModeSpec::coherent(p.za_bra), fock::ModeSpec::coherent(p.zb_bra)});
    const auto ket = fock::basis_state(s, {fock::ModeSpec::coherent(p.za), fock::ModeSpec::coherent(p.zb)});
    return fock::inner(bra, fock::apply(o, ket));
}

cplx NormalSymbol::evaluate(const CoherentPair& p) const {
    return prefactor * symbol(std::conj(p.za_bra), std::conj(p.zb_bra), p.za, p.zb) * coherent_overlap(p);
}

const char* identity_name(IdentityId id) {
    switch (id) {
        case IdentityId::exp_coordinate: return "normal_order:exp_coordinate";
        case IdentityId::exp_momentum: return "normal_order:exp_momentum";
        case IdentityId::gaussian_coordinate: return "normal_order:gaussian_coordinate";
        case IdentityId::power_coordinate: return "normal_order:power_coordinate";
    }
    return "normal_order";
}

FockOperator identity_lhs(IdentityId id, const RayMatrix& ray, const IdentityExtra& extra, const FockSpace& space) {
    const CMat a = op(space, Mode::a, OpKind::annihilate), b = op(space, Mode::b, OpKind::annihilate);
    switch (id) {
        case IdentityId::exp_coordinate:
            return FockOperator(space, expm(coordinate_combination(ray, space), space) * expm(a + b, space));
        case IdentityId::exp_momentum:
            return FockOperator(space, expm(momentum_combination(ray, space), space) * expm(a + b, space));
        case IdentityId::gaussian_coordinate: {
            const CMat X = coordinate_combination(ray, space);
            return FockOperator(space, expm(-extra.y * (X * X), space));
        }
        case IdentityId::power_coordinate: {
            const CMat X = coordinate_combination(ray, space);
            CMat P = CMat::Identity(space.dimension(), space.dimension());
            for (int i = 0; i < extra.n; ++i) P = P * X;
            return FockOperator(space, P);
        }
    }
    throw std::logic_error("unreachable");
}

NormalSymbol identity_rhs(IdentityId id, const RayMatrix& ray, const IdentityExtra& extra) {
    NormalSymbol ns;
    const RayMatrix m = ray;
    const double db = m.D * m.D + m.B * m.B;
    const double ac = m.A * m.A + m.C * m.C;
    switch (id) {
        case IdentityId::exp_coordinate:
            ns.prefactor = std::exp(0.5 * db);
            ns.symbol = [m](cplx zac, cplx zbc, cplx za, cplx zb) {
                return std::exp(coordinate_symbol(m, zac, zbc, za, zb) + za + zb);
            };
            ns.coefficients = {{"constant", 0.5 * db}, {"linear", "a + b"}};
            break;
        case IdentityId::exp_momentum:
            ns.prefactor = std::exp(0.5 * ac);
            ns.symbol = [m](cplx zac, cplx zbc, cplx za, cplx zb) {
                return std::exp(momentum_symbol(m, zac, zbc, za, zb) + za + zb);
            };
            ns.coefficients = {{"constant", 0.5 * ac}, {"linear", "a + b"}};
            break;
        case IdentityId::gaussian_coordinate: {
            const double den = 1.0 + 2.0 * extra.y * db;
            const double y = extra.y;
            ns.prefactor = 1.0 / std::sqrt(den);
            ns.symbol = [m, y, den](cplx zac, cplx zbc, cplx za, cplx zb) {
                const cplx x = coordinate_symbol(m, zac, zbc, za, zb);
                return std::exp(-y * x * x / den);
            };
            ns.coefficients = {{"y", y}, {"denominator", den}};
            break;
        }
        case IdentityId::power_coordinate: {
            const int n = extra.n;
            const double w = std::sqrt(db);
            ns.prefactor = std::pow(cplx(0.0, std::sqrt(0.5 * db)), n);
            ns.symbol = [m, n, w](cplx zac, cplx zbc, cplx za, cplx zb) {
                const cplx x = coordinate_symbol(m, zac, zbc, za, zb);
                return numerics::hermite_poly(n, x / (cplx(0.0, kSqrt2) * w));
            };
            ns.coefficients = {{"n", n}, {"scale", w}};
            break;
        }
    }
    return ns;
}

std::vector<CoherentPair> default_probes(int count) {
    std::vector<CoherentPair> out;
    out.push_back({0.0, 0.0, 0.0, 0.0});
    for (int i = 1; i < count; ++i) {
        // deterministic spread over |z| <= 0.8
        const double t = static_cast<double>(i);
        out.push_back({std::polar(0.25 + 0.5 * std::fmod(0.37 * t, 1.0), 0.9 * t),
                       std::polar(0.2 + 0.5 * std::fmod(0.61 * t, 1.0), -1.3 * t),
                       std::polar(0.3 + 0.5 * std::fmod(0.23 * t, 1.0), 2.1 * t),
                       std::polar(0.15 + 0.6 * std::fmod(0.71 * t, 1.0), -0.4 * t)});
    }
    return out;
}

ResidualRecord identity_check(IdentityId id, const RayMatrix& ray, const IdentityExtra& extra,
                              const std::vector<CoherentPair>& samples, const FockSpace& space, Tier tier,
                              double tolerance) {
    const FockOperator lhs = identity_lhs(id, ray, extra, space);
    const NormalSymbol rhs = identity_rhs(id, ray, extra);
    double num = 0.0, den = 0.0;
    for (const auto& p : samples) {
        const cplx l = coherent_matrix_element(lhs, p);
        const cplx r = rhs.evaluate(p);
        num = std::max(num, std::abs(l - r));
        den = std::max(den, std::abs(r));
    }
    nlohmann::json prm = {{"ray", ray_json(ray)},
                          {"samples", static_cast<int>(samples.size())},
                          {"cutoff", space.cutoff},
                          {"prefactor", complex_json(rhs.prefactor)},
                          {"coefficients", rhs.coefficients}};
    if (id == IdentityId::gaussian_coordinate) prm["y"] = extra.y;
    if (id == IdentityId::power_coordinate) prm["n"] = extra.n;
    return make_record(identity_name(id), prm, den > 0.0 ? num / den : num, "max |RHS| over the samples", tier,
                       tolerance);
}

ResidualRecord hermite_generating_check(int n_max, int points, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        const cplx x(u(rng), u(rng));
        // Taylor coefficients of exp(2xt) exp(-t^2) as a Cauchy product
        std::vector<cplx> c(n_max + 1, 0.0);
        for (int j = 0; j <= n_max; ++j)
            for (int m = 0; j + 2 * m <= n_max; ++m)
                c[j + 2 * m] += std::pow(2.0 * x, j) * std::exp(-std::lgamma(j + 1.0) - std::lgamma(m + 1.0)) *
                                (m % 2 ? -1.0 : 1.0);
        double fact = 1.0;
        for (int n = 0; n <= n_max; ++n) {
            if (n > 0) fact *= n;
            const cplx taylor = fact * c[n];
            const cplx h = numerics::hermite_poly(n, x);
            worst = std::max(worst, std::abs(h - taylor) / std::max(std::abs(taylor), 1e-300));
        }
    }
    return make_record("hermite:generating_function", {{"n_max", n_max}, {"points", points}, {"seed", seed}}, worst,
                       "relative to the Taylor coefficient", Tier::pinned, 1e-9);
}

}  // namespace ices::verify
