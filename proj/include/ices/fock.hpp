#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ices {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;

// hbar = 1 throughout.

// Thrown when a coherent amplitude puts more than the allowed probability
// mass above the cutoff.
class LeakageError : public std::runtime_error {
public:
    LeakageError(const std::string& what, double tail_mass)
        : std::runtime_error(what), tail_mass_(tail_mass) {}
    double tail_mass() const { return tail_mass_; }

private:
    double tail_mass_;
};

namespace fock {

constexpr double kLeakageLimit = 1e-8;

// Two-mode index = n_a * (N + 1) + n_b, mode a slow.
struct FockSpace {
    int modes = 1;
    int cutoff = 1;

    int levels() const { return cutoff + 1; }
    int dimension() const { return modes == 1 ? levels() : levels() * levels(); }
    int index(int na, int nb = 0) const { return modes == 1 ? na : na * levels() + nb; }
    bool operator==(const FockSpace&) const = default;
};

FockSpace make_space(int modes, int cutoff);

enum class Mode { a, b };
enum class OpKind { annihilate, create, Q, P, number };

class FockState {
public:
    FockState(FockSpace space, CVec amplitudes, bool flagged = false);
    const FockSpace& space() const { return space_; }
    const CVec& amplitudes() const { return amp_; }
    // Set for position/momentum kets outside the trusted range |x| <= sqrt(2N)/2.
    bool flagged() const { return flagged_; }
    double norm() const { return amp_.norm(); }

private:
    FockSpace space_;
    CVec amp_;
    bool flagged_;
};

class FockOperator {
public:
    FockOperator(FockSpace space, CMat matrix);
    const FockSpace& space() const { return space_; }
    const CMat& matrix() const { return mat_; }

private:
    FockSpace space_;
    CMat mat_;
};

struct ModeSpec {
    enum class Kind { vacuum, number, coherent, position, momentum };
    Kind kind = Kind::vacuum;
    int n = 0;
    cplx z{0.0, 0.0};
    double x = 0.0;

    static ModeSpec vacuum() { return {}; }
    static ModeSpec number(int n) { return {Kind::number, n, {}, 0.0}; }
    static ModeSpec coherent(cplx z) { return {Kind::coherent, 0, z, 0.0}; }
    static ModeSpec position(double q) { return {Kind::position, 0, {}, q}; }
    static ModeSpec momentum(double p) { return {Kind::momentum, 0, {}, p}; }
};

// Single-mode ladder matrix on levels 0..N.
RMat ladder(int cutoff);
// Lifts a single-mode matrix onto `mode` of the space.
CMat embed_mode(const FockSpace& space, Mode mode, const CMat& single);

FockOperator mode_operator(const FockSpace& space, Mode mode, OpKind kind);
FockOperator identity(const FockSpace& space);

// Single-mode amplitude vectors on levels 0..N.
CVec coherent_amplitudes(cplx z, int cutoff);
CVec position_amplitudes(double q, int cutoff);
CVec momentum_amplitudes(double p, int cutoff);
double coherent_tail_mass(cplx z, int cutoff);

// One spec per mode; two-mode states are tensor products.
FockState basis_state(const FockSpace& space, const std::vector<ModeSpec>& specs);
FockState product_state(const FockSpace& space, const CVec& va, const CVec& vb);

FockOperator compose(const std::vector<FockOperator>& ops);
FockOperator adjoint(const FockOperator& op);
FockOperator scale(const FockOperator& op, cplx c);
FockOperator sum(const FockOperator& x, const FockOperator& y);
FockOperator matrix_exp(const FockOperator& op);
FockState apply(const FockOperator& op, const FockState& state);

cplx inner(const FockState& bra, const FockState& ket);
double truncation_leakage(const FockState& state, int k);

// Indices of basis states with every occupation <= k.
std::vector<int> inner_indices(const FockSpace& space, int k);
CMat inner_block(const CMat& m, const FockSpace& space, int k);
CVec inner_components(const CVec& v, const FockSpace& space, int k);
double spectral_norm(const CMat& m);
// Spectral-norm distance of the occupation <= k blocks.
double inner_block_distance(const FockOperator& x, const FockOperator& y, int k);

// Copies amplitudes between cutoffs of the same mode count (drops or zero-pads levels).
CVec change_cutoff(const CVec& v, const FockSpace& from, const FockSpace& to);
CMat change_cutoff(const CMat& m, const FockSpace& from, const FockSpace& to);

// ||v - e^{i phi} w|| / ||v|| with the phase fixed on the largest |v| component.
double phase_aligned_residual(const CVec& v, const CVec& w);

}  // namespace fock
}  // namespace ices
