#include "ices/states.hpp"

#include <cmath>

#include "ices/gaussian.hpp"

namespace ices::states {

namespace {

const double kPi = std::acos(-1.0);
const double kSqrt2 = std::sqrt(2.0);

void require_nondegenerate(cplx den, const char* what, const char* hint) {
    if (std::abs(den) < 1e-12)
        throw std::invalid_argument(std::string(what) + ": degenerate parameters, " + hint);
}

FockState single_mode_state(const FockSpace& space, Mode mode, const CVec& v) {
    if (space.modes == 1) {
        if (mode != Mode::a) throw std::invalid_argument("mode b requested on a 1-mode space");
        return FockState(space, v);
    }
    CVec vac = CVec::Zero(space.levels());
    vac(0) = 1.0;
    return mode == Mode::a ? fock::product_state(space, v, vac) : fock::product_state(space, vac, v);
}

FockState from_coefficients(const FockSpace& space, const CMat& M) {
    CVec v(space.dimension());
    for (int na = 0; na <= space.cutoff; ++na)
        for (int nb = 0; nb <= space.cutoff; ++nb) v(space.index(na, nb)) = M(na, nb);
    return FockState(space, v);
}

}  // namespace

CVec raising_exp(cplx c1, cplx c2, int cutoff) {
    CVec v = CVec::Zero(cutoff + 1);
    v(0) = 1.0;
    for (int n = 0; n < cutoff; ++n) {
        cplx next = c1 * v(n);
        if (n >= 1) next += 2.0 * c2 * std::sqrt(double(n)) * v(n - 1);
        v(n + 1) = next / std::sqrt(n + 1.0);
    }
    return v;
}

CMat raising_exp(const TwoModeExponent& e, int cutoff) {
    const int d = cutoff + 1;
    CMat v = CMat::Zero(d, d);
    v.row(0) = raising_exp(e.cb, e.cbb, cutoff).transpose();
    for (int na = 0; na < cutoff; ++na) {
        for (int nb = 0; nb < d; ++nb) {
            cplx next = e.ca * v(na, nb);
            if (na >= 1) next += 2.0 * e.caa * std::sqrt(double(na)) * v(na - 1, nb);
            if (nb >= 1) next += e.cab * std::sqrt(double(nb)) * v(na, nb - 1);
            v(na + 1, nb) = next / std::sqrt(na + 1.0);
        }
    }
    return v;
}

FockState icms(const FockSpace& space, Mode mode, double q, const FresnelParams& params) {
    const RayMatrix m = gaussian::ray_from_fresnel(params);
    const cplx den(m.D, m.B);
    require_nondegenerate(den, "icms", "D+iB = 0 is a momentum-type limit; use imcs");
    const cplx pref = std::pow(kPi, -0.25) / std::sqrt(den) *
                      std::exp(-cplx(m.A, -m.C) * q * q / (2.0 * den));
    CVec v = raising_exp(kSqrt2 * q / den, -cplx(m.D, -m.B) / (2.0 * den), space.cutoff);
    return single_mode_state(space, mode, pref * v);
}

FockState imcs(const FockSpace& space, Mode mode, double p, const FresnelParams& params) {
    const RayMatrix m = gaussian::ray_from_fresnel(params);
    const cplx den(m.A, -m.C);
    require_nondegenerate(den, "imcs", "A-iC = 0 is a coordinate-type limit; use icms");
    const cplx pref = std::pow(kPi, -0.25) / std::sqrt(den) *
                      std::exp(-cplx(m.D, m.B) * p * p / (2.0 * den));
    CVec v = raising_exp(cplx(0.0, kSqrt2 * p) / den, cplx(m.A, m.C) / (2.0 * den), space.cutoff);
    return single_mode_state(space, mode, pref * v);
}

FockState ices(const FockSpace& space, const IcesLabel& label, Method method) {
    if (space.modes != 2) throw std::invalid_argument("ices needs a 2-mode space");
    const RayMatrix m = gaussian::ray_from_fresnel(label.params);
    const cplx den(m.D, m.B);
    require_nondegenerate(den, "ices", "D+iB = 0; use the conjugate state");
    if (method == Method::protocol) {
        CVec coh = fock::basis_state(fock::make_space(1, space.cutoff), {fock::ModeSpec::coherent(label.z)})
                       .amplitudes();
        CVec icm = icms(fock::make_space(1, space.cutoff), Mode::a, label.q, label.params).amplitudes();
        return fock::apply(gaussian::beamsplitter(space, kPi / 4.0), fock::product_state(space, coh, icm));
    }
    const double q = label.q;
    const cplx z = label.z;
    const cplx gamma = cplx(m.D, -m.B) / den;
    TwoModeExponent e;
    e.ca = z / kSqrt2 - q / den;
    e.cb = z / kSqrt2 + q / den;
    e.caa = -gamma / 4.0;
    e.cbb = -gamma / 4.0;
    e.cab = gamma / 2.0;
    const cplx pref = std::pow(kPi, -0.25) / std::sqrt(den) *
                      std::exp(-0.5 * std::norm(z) - cplx(m.A, -m.C) * q * q / (2.0 * den));
    return from_coefficients(space, pref * raising_exp(e, space.cutoff));
}

FockState ices_conjugate(const FockSpace& space, const KappaLabel& label, Method method) {
    if (space.modes != 2) throw std::invalid_argument("ices_conjugate needs a 2-mode space");
    const RayMatrix m = gaussian::ray_from_fresnel(label.params);
    const cplx den(m.A, -m.C);
    require_nondegenerate(den, "ices_conjugate", "A-iC = 0; use the coherent-entangled state");
    if (method == Method::protocol) {
        CVec coh = fock::basis_state(fock::make_space(1, space.cutoff), {fock::ModeSpec::coherent(label.z)})
                       .amplitudes();
        CVec imc = imcs(fock::make_space(1, space.cutoff), Mode::a, label.p, label.params).amplitudes();
        return fock::apply(gaussian::beamsplitter(space, kPi / 4.0), fock::product_state(space, coh, imc));
    }
    const double p = label.p;
    const cplx z = label.z;
    const cplx delta = cplx(m.A, m.C) / den;
    const cplx ip = cplx(0.0, p) / den;
    TwoModeExponent e;
    e.ca = z / kSqrt2 - ip;
    e.cb = z / kSqrt2 + ip;
    e.caa = delta / 4.0;
    e.cbb = delta / 4.0;
    e.cab = -delta / 2.0;
    const cplx pref = std::pow(kPi, -0.25) / std::sqrt(den) *
                      std::exp(-0.5 * std::norm(z) - cplx(m.D, m.B) * p * p / (2.0 * den));
    return from_coefficients(space, pref * raising_exp(e, space.cutoff));
}

SchmidtResult schmidt_decompose(const FockState& state) {
    const FockSpace& sp = state.space();
    if (sp.modes != 2) throw std::invalid_argument("schmidt_decompose needs a 2-mode state");
    const double nrm = state.norm();
    if (nrm == 0.0) throw std::invalid_argument("schmidt_decompose: zero-norm state");
    const int d = sp.levels();
    CMat M(d, d);
    for (int na = 0; na < d; ++na)
        for (int nb = 0; nb < d; ++nb) M(na, nb) = state.amplitudes()(sp.index(na, nb)) / nrm;
    Eigen::JacobiSVD<CMat> svd(M);
    SchmidtResult out;
    out.entropy = 0.0;
    for (int i = 0; i < svd.singularValues().size(); ++i) {
        double s = svd.singularValues()(i);
        out.singular_values.push_back(s);
        double p = s * s;
        if (p > 0.0) out.entropy -= p * std::log(p);
    }
    return out;
}

}  // namespace ices::states
