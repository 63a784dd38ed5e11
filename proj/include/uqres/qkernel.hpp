#pragma once

// Foundation types and exact dense linear algebra: Hilbert-space layouts,
// pure and mixed states, unitaries, Kraus channels, entropies, named gates
// and seeded random ensembles.
//
// Subsystem order is big-endian: subsystem 0 is the most significant digit of
// a basis index. Entropies use log base 2.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "uqres/error.hpp"

namespace uqres {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Rng = std::mt19937_64;

inline constexpr std::size_t kDefaultDimensionCap = 4096;
inline constexpr double kInvariantTol = 1e-10;
inline constexpr double kChannelTol = 1e-9;

class HilbertSpec {
  public:
    HilbertSpec() = default;
    explicit HilbertSpec(std::vector<int> dims, std::size_t cap = kDefaultDimensionCap);

    static HilbertSpec qubits(int n, std::size_t cap = kDefaultDimensionCap);
    static HilbertSpec uniform(int n, int d, std::size_t cap = kDefaultDimensionCap);

    const std::vector<int>& dims() const { return dims_; }
    int size() const { return static_cast<int>(dims_.size()); }
    int dim(int k) const { return dims_.at(static_cast<std::size_t>(k)); }
    std::size_t total_dim() const { return total_; }
    std::size_t cap() const { return cap_; }

    // Concatenated layout (this first).
    HilbertSpec concat(const HilbertSpec& other) const;
    // Sub-layout of the listed subsystems, in the listed order.
    HilbertSpec select(std::span<const int> subsystems) const;
    // Layout with the listed subsystems removed.
    HilbertSpec without(std::span<const int> subsystems) const;

    // Stride of subsystem k inside a flat basis index.
    std::size_t stride(int k) const;
    std::vector<int> digits(std::size_t index) const;
    std::size_t index(std::span<const int> digits) const;

    bool operator==(const HilbertSpec& other) const { return dims_ == other.dims_; }

  private:
    std::vector<int> dims_;
    std::size_t total_ = 1;
    std::size_t cap_ = kDefaultDimensionCap;
};

class DensityOperator;

class StateVector {
  public:
    // Throws InvariantError unless the squared norm is 1 within 1e-10.
    StateVector(HilbertSpec spec, Vec amplitudes);

    // Rescales to unit norm; throws InvariantError on (near-)zero vectors.
    static StateVector normalized(HilbertSpec spec, Vec amplitudes);
    static StateVector basis(HilbertSpec spec, std::size_t index);
    static StateVector basis(HilbertSpec spec, std::span<const int> digits);
    // Uniform superposition (1/sqrt(d)) sum_i |i>.
    static StateVector uniform(HilbertSpec spec);

    const HilbertSpec& spec() const { return spec_; }
    const Vec& amplitudes() const { return amps_; }
    cplx operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }
    std::size_t dim() const { return spec_.total_dim(); }

    DensityOperator density() const;

  private:
    HilbertSpec spec_;
    Vec amps_;
};

class DensityOperator {
  public:
    // Validates hermiticity, unit trace and positivity (eigenvalues >= -1e-10).
    DensityOperator(HilbertSpec spec, Mat matrix);

    static DensityOperator pure(const StateVector& psi);
    static DensityOperator maximally_mixed(HilbertSpec spec);
    static DensityOperator diagonal(HilbertSpec spec, std::span<const double> probabilities);

    const HilbertSpec& spec() const { return spec_; }
    const Mat& matrix() const { return rho_; }
    std::size_t dim() const { return spec_.total_dim(); }
    double purity() const;

  private:
    HilbertSpec spec_;
    Mat rho_;
};

class UnitaryOp {
  public:
    UnitaryOp(HilbertSpec spec, Mat matrix);

    static UnitaryOp identity(HilbertSpec spec);

    const HilbertSpec& spec() const { return spec_; }
    const Mat& matrix() const { return u_; }
    std::size_t dim() const { return spec_.total_dim(); }
    UnitaryOp adjoint() const;

    // this * other (other acts first).
    UnitaryOp operator*(const UnitaryOp& other) const;

  private:
    HilbertSpec spec_;
    Mat u_;
};

class QuantumChannel {
  public:
    // Validates sum_k K^dagger K = 1 within 1e-9.
    QuantumChannel(HilbertSpec in, HilbertSpec out, std::vector<Mat> kraus);

    static QuantumChannel identity(HilbertSpec spec);
    static QuantumChannel unitary(const UnitaryOp& u);
    // Delta: kills every off-diagonal entry in the computational basis.
    static QuantumChannel dephasing(HilbertSpec spec);

    const HilbertSpec& in_spec() const { return in_; }
    const HilbertSpec& out_spec() const { return out_; }
    const std::vector<Mat>& kraus() const { return kraus_; }
    bool is_square() const { return in_.total_dim() == out_.total_dim(); }

    // E(X) for an arbitrary (not necessarily positive) operator X.
    Mat apply_to_operator(const Mat& x) const;

  private:
    HilbertSpec in_;
    HilbertSpec out_;
    std::vector<Mat> kraus_;
};

// ---------------------------------------------------------------------------
// Core operations

StateVector tensor(const StateVector& a, const StateVector& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);
UnitaryOp tensor(const UnitaryOp& a, const UnitaryOp& b);
QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b);

DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep);
Mat partial_trace(const HilbertSpec& spec, const Mat& rho, std::span<const int> keep);

double von_neumann_entropy(const DensityOperator& rho);
double von_neumann_entropy(const Mat& hermitian);
double shannon_entropy(std::span<const double> probabilities);
double binary_entropy(double p);

DensityOperator apply_channel(const QuantumChannel& channel, const DensityOperator& rho);

StateVector apply(const UnitaryOp& u, const StateVector& psi);
DensityOperator conjugate(const UnitaryOp& u, const DensityOperator& rho);

// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);
// <psi|rho|psi>
double fidelity(const StateVector& psi, const DensityOperator& rho);
// |<a|b>|^2 for raw normalised vectors.
double overlap_fidelity(const Vec& a, const Vec& b);

// ---------------------------------------------------------------------------
// Applying local operators to subsets of subsystems

// Applies a square operator acting on `wires` (in that order) to a flat state
// vector over `spec`.
Vec apply_on(const HilbertSpec& spec, const Vec& v, const Mat& op, std::span<const int> wires);
// Applies op to the columns of m (m's rows are indexed by `spec`).
Mat apply_on_columns(const HilbertSpec& spec, const Mat& m, const Mat& op,
                     std::span<const int> wires);
// op rho op^dagger with op acting on `wires`.
Mat conjugate_on(const HilbertSpec& spec, const Mat& rho, const Mat& op,
                 std::span<const int> wires);
// Full matrix of `op` on `wires`, identity elsewhere.
Mat embed(const HilbertSpec& spec, const Mat& op, std::span<const int> wires);
// <psi| op_wires |psi>
cplx expectation(const StateVector& psi, const Mat& op, std::span<const int> wires);

// ---------------------------------------------------------------------------
// Matrix utilities

RVec hermitian_eigenvalues(const Mat& h);
double spectral_norm(const Mat& m);
bool is_hermitian(const Mat& m, double tol = kInvariantTol);
bool is_unitary(const Mat& m, double tol = kInvariantTol);
// exp(i t h) for Hermitian h.
Mat exp_i_hermitian(const Mat& h, double t);
Mat kron(const Mat& a, const Mat& b);
// Unitary whose first columns are the given orthonormal columns; remaining
// columns come from Gram-Schmidt over the standard basis in index order.
Mat complete_to_unitary(const Mat& isometry_columns);

// ---------------------------------------------------------------------------
// Named gates

namespace gates {

Mat identity(int d);
Mat h();
// diag(tau, conj(tau)), tau = exp(i pi/8).
Mat t();
Mat s();
Mat sdg();
Mat x();
Mat y();
Mat z();
Mat cx();
Mat cz();
Mat ccx();
Mat swap();
// diag(1, exp(i phi)).
Mat phase(double phi);
// Qudit shift |j> -> |j+1 mod d>.
Mat shift(int d);
// Qudit clock diag(omega^j).
Mat clock(int d);
// Fourier matrix F_{jk} = omega^{jk}/sqrt(d).
Mat fourier(int d);
// Generalised CX on C^d x C^d: |i>|j> -> |i>|j+i mod d>.
Mat csum(int d);
// Computational-basis permutation matrix: column j has its 1 at row perm[j].
Mat permutation(std::span<const int> perm);

// Looks up "H", "T", "S", "Sdg", "X", "Y", "Z", "CX", "CZ", "CCX", "SWAP", "I".
Mat by_name(std::string_view name);
int arity(std::string_view name);

} // namespace gates

// ---------------------------------------------------------------------------
// Seeded random ensembles

Vec random_complex_gaussian(std::size_t n, Rng& rng);
StateVector random_state(const HilbertSpec& spec, Rng& rng);
// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
Mat random_unitary(int d, Rng& rng);
UnitaryOp random_unitary(const HilbertSpec& spec, Rng& rng);
// Full-rank Ginibre-induced density operator.
DensityOperator random_density(const HilbertSpec& spec, Rng& rng);
Mat random_hermitian(int d, Rng& rng);
std::vector<int> random_permutation(int d, Rng& rng);

} // namespace uqres
