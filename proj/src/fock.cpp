#include "ices/fock.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "ices/numerics.hpp"

namespace ices::fock {

namespace {

void require_same(const FockSpace& x, const FockSpace& y, const char* what) {
    if (!(x == y)) throw std::invalid_argument(std::string(what) + ": space mismatch");
}

bool all_finite(const CMat& m) { return m.allFinite(); }

}  // namespace

FockSpace make_space(int modes, int cutoff) {
    if (modes != 1 && modes != 2) throw std::invalid_argument("unsupported mode count");
    if (cutoff < 1) throw std::invalid_argument("cutoff must be >= 1");
    return FockSpace{modes, cutoff};
}

FockState::FockState(FockSpace space, CVec amplitudes, bool flagged)
    : space_(space), amp_(std::move(amplitudes)), flagged_(flagged) {
    if (amp_.size() != space_.dimension())
        throw std::invalid_argument("FockState: amplitude length does not match the space");
    if (!amp_.allFinite()) throw std::invalid_argument("FockState: non-finite amplitude");
}

FockOperator::FockOperator(FockSpace space, CMat matrix) : space_(space), mat_(std::move(matrix)) {
    const int d = space_.dimension();
    if (mat_.rows() != d || mat_.cols() != d)
        throw std::invalid_argument("FockOperator: matrix shape does not match the space");
    if (!all_finite(mat_)) throw std::invalid_argument("FockOperator: non-finite entry");
}

RMat ladder(int cutoff) {
    RMat a = RMat::Zero(cutoff + 1, cutoff + 1);
    for (int n = 1; n <= cutoff; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

CMat embed_mode(const FockSpace& space, Mode mode, const CMat& single) {
    const int d = space.levels();
    if (single.rows() != d || single.cols() != d)
        throw std::invalid_argument("embed_mode: single-mode matrix has the wrong size");
    if (space.modes == 1) {
        if (mode != Mode::a) throw std::invalid_argument("mode b requested on a 1-mode space");
        return single;
    }
    CMat id = CMat::Identity(d, d);
    if (mode == Mode::a) return Eigen::kroneckerProduct(single, id).eval();
    return Eigen::kroneckerProduct(id, single).eval();
}

FockOperator mode_operator(const FockSpace& space, Mode mode, OpKind kind) {
    if (space.modes == 1 && mode == Mode::b)
        throw std::invalid_argument("mode b requested on a 1-mode space");
    const CMat a = ladder(space.cutoff).cast<cplx>();
    const CMat ad = a.adjoint();
    const double r2 = std::sqrt(2.0);
    CMat single;
    switch (kind) {
        case OpKind::annihilate: single = a; break;
        case OpKind::create: single = ad; break;
        case OpKind::Q: single = (a + ad) / r2; break;
        case OpKind::P: single = (a - ad) / cplx(0.0, r2); break;
        case OpKind::number: single = ad * a; break;
    }
    return FockOperator(space, embed_mode(space, mode, single));
}

FockOperator identity(const FockSpace& space) {
    return FockOperator(space, CMat::Identity(space.dimension(), space.dimension()));
}

CVec coherent_amplitudes(cplx z, int cutoff) {
    CVec v(cutoff + 1);
    v(0) = std::exp(-0.5 * std::norm(z));
    for (int n = 1; n <= cutoff; ++n) v(n) = v(n - 1) * z / std::sqrt(double(n));
    return v;
}

CVec position_amplitudes(double q, int cutoff) {
    auto psi = numerics::hermite_functions(q, cutoff);
    CVec v(cutoff + 1);
    for (int n = 0; n <= cutoff; ++n) v(n) = psi[n];
    return v;
}

CVec momentum_amplitudes(double p, int cutoff) {
    auto psi = numerics::hermite_functions(p, cutoff);
    const cplx phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    CVec v(cutoff + 1);
    for (int n = 0; n <= cutoff; ++n) v(n) = phases[n % 4] * psi[n];
    return v;
}

double coherent_tail_mass(cplx z, int cutoff) {
    const double x = std::norm(z);
    // Poisson terms e^{-x} x^n / n!, summed from n = cutoff + 1 upward.
    double term = std::exp(-x);
    for (int n = 1; n <= cutoff + 1; ++n) term *= x / n;
    double tail = 0.0;
    for (int n = cutoff + 1; n < cutoff + 2000; ++n) {
        tail += term;
        term *= x / (n + 1);
        if (term < 1e-300 || term < 1e-18 * tail) break;
    }
    return tail;
}

namespace {

CVec mode_vector(const ModeSpec& spec, int cutoff, bool& flagged) {
    const double trusted = std::sqrt(2.0 * cutoff) / 2.0;
    switch (spec.kind) {
        case ModeSpec::Kind::vacuum: {
            CVec v = CVec::Zero(cutoff + 1);
            v(0) = 1.0;
            return v;
        }
        case ModeSpec::Kind::number: {
            if (spec.n < 0 || spec.n > cutoff)
                throw std::invalid_argument("basis_state: number state above the cutoff");
            CVec v = CVec::Zero(cutoff + 1);
            v(spec.n) = 1.0;
            return v;
        }
        case ModeSpec::Kind::coherent: {
            double tail = coherent_tail_mass(spec.z, cutoff);
            if (tail > kLeakageLimit) {
                std::ostringstream msg;
                msg << "basis_state: coherent amplitude |z|=" << std::abs(spec.z)
                    << " leaks tail mass " << tail << " above cutoff " << cutoff;
                throw LeakageError(msg.str(), tail);
            }
            return coherent_amplitudes(spec.z, cutoff);
        }
        case ModeSpec::Kind::position:
            if (std::abs(spec.x) > trusted) flagged = true;
            return position_amplitudes(spec.x, cutoff);
        case ModeSpec::Kind::momentum:
            if (std::abs(spec.x) > trusted) flagged = true;
            return momentum_amplitudes(spec.x, cutoff);
    }
    throw std::logic_error("unreachable");
}

}  // namespace

FockState basis_state(const FockSpace& space, const std::vector<ModeSpec>& specs) {
    if (int(specs.size()) != space.modes)
        throw std::invalid_argument("basis_state: need one spec per mode");
    bool flagged = false;
    CVec va = mode_vector(specs[0], space.cutoff, flagged);
    if (space.modes == 1) return FockState(space, va, flagged);
    CVec vb = mode_vector(specs[1], space.cutoff, flagged);
    return FockState(space, Eigen::kroneckerProduct(va, vb).eval(), flagged);
}

FockState product_state(const FockSpace& space, const CVec& va, const CVec& vb) {
    if (space.modes != 2) throw std::invalid_argument("product_state: needs a 2-mode space");
    return FockState(space, Eigen::kroneckerProduct(va, vb).eval());
}

FockOperator compose(const std::vector<FockOperator>& ops) {
    if (ops.empty()) throw std::invalid_argument("compose: empty operator list");
    CMat m = ops.front().matrix();
    for (std::size_t i = 1; i < ops.size(); ++i) {
        require_same(ops[0].space(), ops[i].space(), "compose");
        m = m * ops[i].matrix();
    }
    return FockOperator(ops[0].space(), std::move(m));
}

FockOperator adjoint(const FockOperator& op) { return FockOperator(op.space(), op.matrix().adjoint()); }

FockOperator scale(const FockOperator& op, cplx c) { return FockOperator(op.space(), c * op.matrix()); }

FockOperator sum(const FockOperator& x, const FockOperator& y) {
    require_same(x.space(), y.space(), "sum");
    return FockOperator(x.space(), x.matrix() + y.matrix());
}

FockOperator matrix_exp(const FockOperator& op) {
    // FockOperator already rejects non-finite entries.
    return FockOperator(op.space(), op.matrix().exp());
}

FockState apply(const FockOperator& op, const FockState& state) {
    require_same(op.space(), state.space(), "apply");
    return FockState(state.space(), op.matrix() * state.amplitudes());
}

cplx inner(const FockState& bra, const FockState& ket) {
    require_same(bra.space(), ket.space(), "inner");
    return bra.amplitudes().dot(ket.amplitudes());
}

double truncation_leakage(const FockState& state, int k) {
    const FockSpace& sp = state.space();
    if (k < 0 || k > sp.cutoff) throw std::invalid_argument("truncation_leakage: k out of range");
    const double total = state.amplitudes().squaredNorm();
    if (total == 0.0) return 0.0;
    const int edge = sp.cutoff - k;
    double outer = 0.0;
    for (int na = 0; na <= sp.cutoff; ++na) {
        if (sp.modes == 1) {
            if (na > edge) outer += std::norm(state.amplitudes()(na));
            continue;
        }
        for (int nb = 0; nb <= sp.cutoff; ++nb)
            if (na > edge || nb > edge) outer += std::norm(state.amplitudes()(sp.index(na, nb)));
    }
    return outer / total;
}

std::vector<int> inner_indices(const FockSpace& space, int k) {
    if (k < 0 || k > space.cutoff) throw std::invalid_argument("inner block size out of range");
    std::vector<int> idx;
    if (space.modes == 1) {
        for (int n = 0; n <= k; ++n) idx.push_back(n);
    } else {
        for (int na = 0; na <= k; ++na)
            for (int nb = 0; nb <= k; ++nb) idx.push_back(space.index(na, nb));
    }
    return idx;
}

CMat inner_block(const CMat& m, const FockSpace& space, int k) {
    auto idx = inner_indices(space, k);
    CMat out(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = m(idx[i], idx[j]);
    return out;
}

CVec inner_components(const CVec& v, const FockSpace& space, int k) {
    auto idx = inner_indices(space, k);
    CVec out(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) out(i) = v(idx[i]);
    return out;
}

double spectral_norm(const CMat& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMat> svd(m);
    return svd.singularValues()(0);
}

double inner_block_distance(const FockOperator& x, const FockOperator& y, int k) {
    require_same(x.space(), y.space(), "inner_block_distance");
    if (k >= x.space().cutoff) throw std::invalid_argument("inner_block_distance: k must be below the cutoff");
    return spectral_norm(inner_block(x.matrix() - y.matrix(), x.space(), k));
}

CVec change_cutoff(const CVec& v, const FockSpace& from, const FockSpace& to) {
    if (from.modes != to.modes) throw std::invalid_argument("change_cutoff: mode count differs");
    CVec out = CVec::Zero(to.dimension());
    const int m = std::min(from.cutoff, to.cutoff);
    for (int na = 0; na <= m; ++na) {
        if (from.modes == 1) {
            out(na) = v(na);
            continue;
        }
        for (int nb = 0; nb <= m; ++nb) out(to.index(na, nb)) = v(from.index(na, nb));
    }
    return out;
}

CMat change_cutoff(const CMat& mat, const FockSpace& from, const FockSpace& to) {
    if (from.modes != to.modes) throw std::invalid_argument("change_cutoff: mode count differs");
    const int m = std::min(from.cutoff, to.cutoff);
    auto src = inner_indices(from, m);
    auto dst = inner_indices(to, m);
    CMat out = CMat::Zero(to.dimension(), to.dimension());
    for (std::size_t i = 0; i < src.size(); ++i)
        for (std::size_t j = 0; j < src.size(); ++j) out(dst[i], dst[j]) = mat(src[i], src[j]);
    return out;
}

double phase_aligned_residual(const CVec& v, const CVec& w) {
    if (v.size() != w.size()) throw std::invalid_argument("phase_aligned_residual: size mismatch");
    const double nv = v.norm();
    if (nv == 0.0) throw std::invalid_argument("phase_aligned_residual: zero reference vector");
    Eigen::Index i;
    v.cwiseAbs().maxCoeff(&i);
    cplx phase = 1.0;
    if (std::abs(w(i)) > 0.0) {
        cplx ratio = v(i) / w(i);
        phase = ratio / std::abs(ratio);
    }
    return (v - phase * w).norm() / nv;
}

}  // namespace ices::fock
