#pragma once

#include <vector>

#include "ices/fock.hpp"
#include "ices/params.hpp"

namespace ices::states {

using fock::FockSpace;
using fock::FockState;
using fock::Mode;

// Components of exp(c1 x + c2 x^2)|0> on levels 0..cutoff (x = a^dag).
CVec raising_exp(cplx c1, cplx c2, int cutoff);

// Components v[na][nb] of exp(ca x + cb y + caa x^2 + cbb y^2 + cab x y)|00>.
struct TwoModeExponent {
    cplx ca, cb, caa, cbb, cab;
};
CMat raising_exp(const TwoModeExponent& e, int cutoff);

// Closed-form |q>_{s,r}: eigenstate of DQ - BP. Rejects D + iB = 0.
FockState icms(const FockSpace& space, Mode mode, double q, const FresnelParams& params);
// Closed-form |p>_{s,r}: eigenstate of AP - CQ. Rejects A - iC = 0.
FockState imcs(const FockSpace& space, Mode mode, double p, const FresnelParams& params);

struct IcesLabel {
    cplx z;
    double q;
    FresnelParams params;
};

struct KappaLabel {
    cplx z;
    double p;
    FresnelParams params;
};

enum class Method { closed_form, protocol };

// closed_form: the raising-only exponential on |00>.
// protocol: B(pi/4) applied to |z>_a (x) |q>_{b,s,r}.
FockState ices(const FockSpace& space, const IcesLabel& label, Method method);
// Same for the conjugate state, with |p>_{b,s,r} in the protocol.
FockState ices_conjugate(const FockSpace& space, const KappaLabel& label, Method method);

struct SchmidtResult {
    std::vector<double> singular_values;  // descending, squares sum to 1
    double entropy;                       // -sum sigma^2 ln sigma^2
};
SchmidtResult schmidt_decompose(const FockState& state);

}  // namespace ices::states
