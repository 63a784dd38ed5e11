#include "uqres/qkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace uqres {

namespace {

constexpr double kPi = std::numbers::pi;

std::string dims_to_string(const std::vector<int>& dims) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
    os << "]";
    return os.str();
}

void require_same_spec(const HilbertSpec& a, const HilbertSpec& b, const char* what) {
    if (!(a == b)) {
        throw InvariantError(std::string(what) + ": layout mismatch " + dims_to_string(a.dims()) +
                             " vs " + dims_to_string(b.dims()));
    }
}

void check_wires(const HilbertSpec& spec, std::span<const int> wires, std::size_t op_dim) {
    std::size_t sub = 1;
    for (std::size_t i = 0; i < wires.size(); ++i) {
        if (wires[i] < 0 || wires[i] >= spec.size())
            throw InvariantError("wire index out of range");
        for (std::size_t j = 0; j < i; ++j)
            if (wires[i] == wires[j]) throw InvariantError("duplicate wire index");
        sub *= static_cast<std::size_t>(spec.dim(wires[i]));
    }
    if (sub != op_dim) throw InvariantError("operator dimension does not match its wires");
}

// Offsets of every sub-index of `wires` relative to a base index whose digits
// on `wires` are zero, and the list of such base indices.
struct WireLayout {
    std::vector<std::size_t> offsets;
    std::vector<std::size_t> bases;
};

WireLayout layout_for(const HilbertSpec& spec, std::span<const int> wires) {
    WireLayout out;
    std::size_t sub = 1;
    for (int w : wires) sub *= static_cast<std::size_t>(spec.dim(w));
    out.offsets.resize(sub);
    for (std::size_t s = 0; s < sub; ++s) {
        std::size_t rem = s;
        std::size_t off = 0;
        for (std::size_t k = wires.size(); k-- > 0;) {
            const auto d = static_cast<std::size_t>(spec.dim(wires[k]));
            off += (rem % d) * spec.stride(wires[k]);
            rem /= d;
        }
        out.offsets[s] = off;
    }
    const std::size_t total = spec.total_dim();
    out.bases.reserve(total / sub);
    for (std::size_t i = 0; i < total; ++i) {
        bool zero = true;
        for (int w : wires) {
            if ((i / spec.stride(w)) % static_cast<std::size_t>(spec.dim(w)) != 0) {
                zero = false;
                break;
            }
        }
        if (zero) out.bases.push_back(i);
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// HilbertSpec

HilbertSpec::HilbertSpec(std::vector<int> dims, std::size_t cap) : dims_(std::move(dims)), cap_(cap) {
    total_ = 1;
    for (int d : dims_) {
        if (d < 2) throw InvariantError("subsystem dimension must be >= 2");
        total_ *= static_cast<std::size_t>(d);
        if (total_ > cap_) {
            throw CapError("total dimension exceeds cap " + std::to_string(cap_) + " for dims " +
                           dims_to_string(dims_));
        }
    }
}

HilbertSpec HilbertSpec::qubits(int n, std::size_t cap) { return uniform(n, 2, cap); }

HilbertSpec HilbertSpec::uniform(int n, int d, std::size_t cap) {
    return HilbertSpec(std::vector<int>(static_cast<std::size_t>(n), d), cap);
}

HilbertSpec HilbertSpec::concat(const HilbertSpec& other) const {
    std::vector<int> dims = dims_;
    dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
    return HilbertSpec(std::move(dims), std::max(cap_, other.cap_));
}

HilbertSpec HilbertSpec::select(std::span<const int> subsystems) const {
    std::vector<int> dims;
    for (int k : subsystems) dims.push_back(dim(k));
    return HilbertSpec(std::move(dims), cap_);
}

HilbertSpec HilbertSpec::without(std::span<const int> subsystems) const {
    std::vector<int> dims;
    for (int k = 0; k < size(); ++k)
        if (std::find(subsystems.begin(), subsystems.end(), k) == subsystems.end())
            dims.push_back(dims_[static_cast<std::size_t>(k)]);
    return HilbertSpec(std::move(dims), cap_);
}

std::size_t HilbertSpec::stride(int k) const {
    std::size_t s = 1;
    for (int j = size() - 1; j > k; --j) s *= static_cast<std::size_t>(dims_[static_cast<std::size_t>(j)]);
    return s;
}

std::vector<int> HilbertSpec::digits(std::size_t index) const {
    std::vector<int> out(dims_.size());
    for (std::size_t k = dims_.size(); k-- > 0;) {
        out[k] = static_cast<int>(index % static_cast<std::size_t>(dims_[k]));
        index /= static_cast<std::size_t>(dims_[k]);
    }
    return out;
}

std::size_t HilbertSpec::index(std::span<const int> digits) const {
    if (digits.size() != dims_.size()) throw InvariantError("digit count mismatch");
    std::size_t idx = 0;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        if (digits[k] < 0 || digits[k] >= dims_[k]) throw InvariantError("digit out of range");
        idx = idx * static_cast<std::size_t>(dims_[k]) + static_cast<std::size_t>(digits[k]);
    }
    return idx;
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(HilbertSpec spec, Vec amplitudes) : spec_(std::move(spec)), amps_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amps_.size()) != spec_.total_dim())
        throw InvariantError("amplitude count does not match layout");
    if (std::abs(amps_.squaredNorm() - 1.0) > kInvariantTol)
        throw InvariantError("state vector is not normalised");
}

StateVector StateVector::normalized(HilbertSpec spec, Vec amplitudes) {
    const double n = amplitudes.norm();
    if (n < 1e-12) throw InvariantError("cannot normalise a zero vector");
    return StateVector(std::move(spec), amplitudes / n);
}

StateVector StateVector::basis(HilbertSpec spec, std::size_t index) {
    if (index >= spec.total_dim()) throw InvariantError("basis index out of range");
    Vec v = Vec::Zero(static_cast<Eigen::Index>(spec.total_dim()));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(std::move(spec), std::move(v));
}

StateVector StateVector::basis(HilbertSpec spec, std::span<const int> digits) {
    const std::size_t idx = spec.index(digits);
    return basis(std::move(spec), idx);
}

StateVector StateVector::uniform(HilbertSpec spec) {
    const auto n = static_cast<Eigen::Index>(spec.total_dim());
    return StateVector(std::move(spec), Vec::Constant(n, 1.0 / std::sqrt(static_cast<double>(n))));
}

DensityOperator StateVector::density() const { return DensityOperator::pure(*this); }

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator::DensityOperator(HilbertSpec spec, Mat matrix) : spec_(std::move(spec)), rho_(std::move(matrix)) {
    const auto n = static_cast<Eigen::Index>(spec_.total_dim());
    if (rho_.rows() != n || rho_.cols() != n) throw InvariantError("density matrix shape mismatch");
    if (!is_hermitian(rho_)) throw InvariantError("density matrix is not Hermitian");
    if (std::abs(rho_.trace() - cplx(1.0)) > kInvariantTol) throw InvariantError("density matrix trace != 1");
    const RVec ev = hermitian_eigenvalues(rho_);
    if (ev.minCoeff() < -kInvariantTol) throw InvariantError("density matrix is not positive");
}

DensityOperator DensityOperator::pure(const StateVector& psi) {
    const Vec& v = psi.amplitudes();
    return DensityOperator(psi.spec(), v * v.adjoint());
}

DensityOperator DensityOperator::maximally_mixed(HilbertSpec spec) {
    const auto n = static_cast<Eigen::Index>(spec.total_dim());
    Mat m = Mat::Identity(n, n) / static_cast<double>(n);
    return DensityOperator(std::move(spec), std::move(m));
}

DensityOperator DensityOperator::diagonal(HilbertSpec spec, std::span<const double> probabilities) {
    const auto n = static_cast<Eigen::Index>(spec.total_dim());
    if (static_cast<Eigen::Index>(probabilities.size()) != n) throw InvariantError("probability count mismatch");
    Mat m = Mat::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = probabilities[static_cast<std::size_t>(i)];
    return DensityOperator(std::move(spec), std::move(m));
}

double DensityOperator::purity() const { return (rho_ * rho_).trace().real(); }

// ---------------------------------------------------------------------------
// UnitaryOp

UnitaryOp::UnitaryOp(HilbertSpec spec, Mat matrix) : spec_(std::move(spec)), u_(std::move(matrix)) {
    const auto n = static_cast<Eigen::Index>(spec_.total_dim());
    if (u_.rows() != n || u_.cols() != n) throw InvariantError("unitary shape mismatch");
    if (!is_unitary(u_)) throw InvariantError("matrix is not unitary");
}

UnitaryOp UnitaryOp::identity(HilbertSpec spec) {
    const auto n = static_cast<Eigen::Index>(spec.total_dim());
    return UnitaryOp(std::move(spec), Mat::Identity(n, n));
}

UnitaryOp UnitaryOp::adjoint() const { return UnitaryOp(spec_, u_.adjoint()); }

UnitaryOp UnitaryOp::operator*(const UnitaryOp& other) const {
    require_same_spec(spec_, other.spec_, "unitary product");
    return UnitaryOp(spec_, u_ * other.u_);
}

// ---------------------------------------------------------------------------
// QuantumChannel

QuantumChannel::QuantumChannel(HilbertSpec in, HilbertSpec out, std::vector<Mat> kraus)
    : in_(std::move(in)), out_(std::move(out)), kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw InvariantError("channel needs at least one Kraus operator");
    const auto din = static_cast<Eigen::Index>(in_.total_dim());
    const auto dout = static_cast<Eigen::Index>(out_.total_dim());
    Mat sum = Mat::Zero(din, din);
    for (const Mat& k : kraus_) {
        if (k.rows() != dout || k.cols() != din) throw InvariantError("Kraus operator shape mismatch");
        sum += k.adjoint() * k;
    }
    if ((sum - Mat::Identity(din, din)).cwiseAbs().maxCoeff() > kChannelTol)
        throw InvariantError("Kraus operators are not trace preserving");
}

QuantumChannel QuantumChannel::identity(HilbertSpec spec) {
    const auto n = static_cast<Eigen::Index>(spec.total_dim());
    return QuantumChannel(spec, spec, {Mat::Identity(n, n)});
}

QuantumChannel QuantumChannel::unitary(const UnitaryOp& u) {
    return QuantumChannel(u.spec(), u.spec(), {u.matrix()});
}

QuantumChannel QuantumChannel::dephasing(HilbertSpec spec) {
    const auto n = static_cast<Eigen::Index>(spec.total_dim());
    std::vector<Mat> kraus;
    kraus.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        Mat p = Mat::Zero(n, n);
        p(i, i) = 1.0;
        kraus.push_back(std::move(p));
    }
    return QuantumChannel(spec, spec, std::move(kraus));
}

Mat QuantumChannel::apply_to_operator(const Mat& x) const {
    const auto dout = static_cast<Eigen::Index>(out_.total_dim());
    Mat out = Mat::Zero(dout, dout);
    for (const Mat& k : kraus_) out += k * x * k.adjoint();
    return out;
}

// ---------------------------------------------------------------------------
// Core operations

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    HilbertSpec spec = a.spec().concat(b.spec());
    Vec v(static_cast<Eigen::Index>(spec.total_dim()));
    const Eigen::Index nb = b.amplitudes().size();
    for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i)
        v.segment(i * nb, nb) = a.amplitudes()(i) * b.amplitudes();
    return StateVector::normalized(std::move(spec), std::move(v));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
    return DensityOperator(a.spec().concat(b.spec()), kron(a.matrix(), b.matrix()));
}

UnitaryOp tensor(const UnitaryOp& a, const UnitaryOp& b) {
    return UnitaryOp(a.spec().concat(b.spec()), kron(a.matrix(), b.matrix()));
}

QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b) {
    std::vector<Mat> kraus;
    for (const Mat& ka : a.kraus())
        for (const Mat& kb : b.kraus()) kraus.push_back(kron(ka, kb));
    return QuantumChannel(a.in_spec().concat(b.in_spec()), a.out_spec().concat(b.out_spec()), std::move(kraus));
}

Mat partial_trace(const HilbertSpec& spec, const Mat& rho, std::span<const int> keep) {
    if (keep.empty()) throw InvariantError("partial_trace: keep set is empty");
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= spec.size()) throw InvariantError("partial_trace: index out of range");
        for (std::size_t j = 0; j < i; ++j)
            if (keep[i] == keep[j]) throw InvariantError("partial_trace: duplicate index");
    }
    std::vector<int> traced;
    for (int k = 0; k < spec.size(); ++k)
        if (std::find(keep.begin(), keep.end(), k) == keep.end()) traced.push_back(k);

    std::size_t dk = 1;
    for (int k : keep) dk *= static_cast<std::size_t>(spec.dim(k));
    std::size_t dt = 1;
    for (int k : traced) dt *= static_cast<std::size_t>(spec.dim(k));

    auto offsets = [&](std::span<const int> wires, std::size_t n) {
        std::vector<std::size_t> off(n);
        for (std::size_t s = 0; s < n; ++s) {
            std::size_t rem = s;
            std::size_t o = 0;
            for (std::size_t k = wires.size(); k-- > 0;) {
                const auto d = static_cast<std::size_t>(spec.dim(wires[k]));
                o += (rem % d) * spec.stride(wires[k]);
                rem /= d;
            }
            off[s] = o;
        }
        return off;
    };
    const auto ko = offsets(keep, dk);
    const auto to = offsets(traced, dt);

    Mat out = Mat::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    for (std::size_t i = 0; i < dk; ++i)
        for (std::size_t j = 0; j < dk; ++j) {
            cplx acc = 0.0;
            for (std::size_t t = 0; t < dt; ++t)
                acc += rho(static_cast<Eigen::Index>(ko[i] + to[t]), static_cast<Eigen::Index>(ko[j] + to[t]));
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
        }
    return out;
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep) {
    Mat reduced = partial_trace(rho.spec(), rho.matrix(), keep);
    reduced = 0.5 * (reduced + reduced.adjoint()).eval();
    return DensityOperator(rho.spec().select(keep), std::move(reduced));
}

double shannon_entropy(std::span<const double> probabilities) {
    double h = 0.0;
    for (double p : probabilities)
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

double binary_entropy(double p) {
    const double q[2] = {p, 1.0 - p};
    return shannon_entropy(q);
}

double von_neumann_entropy(const Mat& hermitian) {
    const RVec ev = hermitian_eigenvalues(hermitian);
    std::vector<double> p(static_cast<std::size_t>(ev.size()));
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        double v = ev(i);
        if (v < 0.0 && v > -kInvariantTol) v = 0.0;
        p[static_cast<std::size_t>(i)] = v;
    }
    return shannon_entropy(p);
}

double von_neumann_entropy(const DensityOperator& rho) { return von_neumann_entropy(rho.matrix()); }

DensityOperator apply_channel(const QuantumChannel& channel, const DensityOperator& rho) {
    require_same_spec(channel.in_spec(), rho.spec(), "apply_channel");
    Mat out = channel.apply_to_operator(rho.matrix());
    out = 0.5 * (out + out.adjoint()).eval();
    return DensityOperator(channel.out_spec(), std::move(out));
}

StateVector apply(const UnitaryOp& u, const StateVector& psi) {
    require_same_spec(u.spec(), psi.spec(), "apply");
    return StateVector::normalized(psi.spec(), u.matrix() * psi.amplitudes());
}

DensityOperator conjugate(const UnitaryOp& u, const DensityOperator& rho) {
    require_same_spec(u.spec(), rho.spec(), "conjugate");
    Mat out = u.matrix() * rho.matrix() * u.matrix().adjoint();
    out = 0.5 * (out + out.adjoint()).eval();
    return DensityOperator(rho.spec(), std::move(out));
}

double overlap_fidelity(const Vec& a, const Vec& b) { return std::norm(a.dot(b)); }

double fidelity(const StateVector& a, const StateVector& b) {
    require_same_spec(a.spec(), b.spec(), "fidelity");
    return overlap_fidelity(a.amplitudes(), b.amplitudes());
}

double fidelity(const StateVector& psi, const DensityOperator& rho) {
    require_same_spec(psi.spec(), rho.spec(), "fidelity");
    return (psi.amplitudes().adjoint() * rho.matrix() * psi.amplitudes())(0).real();
}

// ---------------------------------------------------------------------------
// Local operators

Vec apply_on(const HilbertSpec& spec, const Vec& v, const Mat& op, std::span<const int> wires) {
    if (static_cast<std::size_t>(v.size()) != spec.total_dim()) throw InvariantError("apply_on: vector size mismatch");
    if (op.rows() != op.cols()) throw InvariantError("apply_on: operator must be square");
    check_wires(spec, wires, static_cast<std::size_t>(op.rows()));
    const WireLayout lay = layout_for(spec, wires);
    const auto sub = static_cast<Eigen::Index>(lay.offsets.size());
    Vec out(v.size());
    Vec local(sub);
    for (std::size_t base : lay.bases) {
        for (Eigen::Index s = 0; s < sub; ++s) local(s) = v(static_cast<Eigen::Index>(base + lay.offsets[static_cast<std::size_t>(s)]));
        const Vec r = op * local;
        for (Eigen::Index s = 0; s < sub; ++s) out(static_cast<Eigen::Index>(base + lay.offsets[static_cast<std::size_t>(s)])) = r(s);
    }
    return out;
}

Mat apply_on_columns(const HilbertSpec& spec, const Mat& m, const Mat& op, std::span<const int> wires) {
    Mat out(m.rows(), m.cols());
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.col(c) = apply_on(spec, m.col(c), op, wires);
    return out;
}

Mat conjugate_on(const HilbertSpec& spec, const Mat& rho, const Mat& op, std::span<const int> wires) {
    const Mat left = apply_on_columns(spec, rho, op, wires);
    const Mat right = apply_on_columns(spec, left.adjoint(), op, wires);
    return right.adjoint();
}

Mat embed(const HilbertSpec& spec, const Mat& op, std::span<const int> wires) {
    const auto n = static_cast<Eigen::Index>(spec.total_dim());
    return apply_on_columns(spec, Mat::Identity(n, n), op, wires);
}

cplx expectation(const StateVector& psi, const Mat& op, std::span<const int> wires) {
    return psi.amplitudes().dot(apply_on(psi.spec(), psi.amplitudes(), op, wires));
}

// ---------------------------------------------------------------------------
// Matrix utilities

RVec hermitian_eigenvalues(const Mat& h) {
    Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double spectral_norm(const Mat& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

bool is_hermitian(const Mat& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Mat& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m.adjoint() * m - Mat::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

Mat exp_i_hermitian(const Mat& h, double t) {
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    const Mat& v = es.eigenvectors();
    Vec phases(h.rows());
    for (Eigen::Index i = 0; i < h.rows(); ++i) phases(i) = std::polar(1.0, t * es.eigenvalues()(i));
    return v * phases.asDiagonal() * v.adjoint();
}

Mat complete_to_unitary(const Mat& cols) {
    const Eigen::Index n = cols.rows();
    Mat u = Mat::Zero(n, n);
    Eigen::Index filled = 0;
    for (Eigen::Index c = 0; c < cols.cols(); ++c) u.col(filled++) = cols.col(c);
    for (Eigen::Index e = 0; e < n && filled < n; ++e) {
        Vec v = Vec::Zero(n);
        v(e) = 1.0;
        for (Eigen::Index k = 0; k < filled; ++k) v -= u.col(k).dot(v) * u.col(k);
        // second pass for numerical orthogonality
        for (Eigen::Index k = 0; k < filled; ++k) v -= u.col(k).dot(v) * u.col(k);
        const double nv = v.norm();
        if (nv > 1e-8) u.col(filled++) = v / nv;
    }
    if (filled != n) throw InvariantError("complete_to_unitary: columns are not orthonormal");
    return u;
}

// ---------------------------------------------------------------------------
// Gates

namespace gates {

Mat identity(int d) { return Mat::Identity(d, d); }

Mat h() {
    Mat m(2, 2);
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
}

Mat t() {
    const cplx tau = std::polar(1.0, kPi / 8.0);
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = tau;
    m(1, 1) = std::conj(tau);
    return m;
}

Mat s() { return phase(kPi / 2.0); }
Mat sdg() { return phase(-kPi / 2.0); }

Mat x() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Mat y() {
    Mat m(2, 2);
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}

Mat z() {
    Mat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Mat cx() {
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = m(1, 1) = 1;
    m(2, 3) = m(3, 2) = 1;
    return m;
}

Mat cz() {
    Mat m = Mat::Identity(4, 4);
    m(3, 3) = -1;
    return m;
}

Mat ccx() {
    Mat m = Mat::Identity(8, 8);
    m(6, 6) = m(7, 7) = 0;
    m(6, 7) = m(7, 6) = 1;
    return m;
}

Mat swap() {
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = m(3, 3) = 1;
    m(1, 2) = m(2, 1) = 1;
    return m;
}

Mat phase(double phi) {
    Mat m = Mat::Identity(2, 2);
    m(1, 1) = std::polar(1.0, phi);
    return m;
}

Mat shift(int d) {
    Mat m = Mat::Zero(d, d);
    for (int j = 0; j < d; ++j) m((j + 1) % d, j) = 1;
    return m;
}

Mat clock(int d) {
    Mat m = Mat::Zero(d, d);
    for (int j = 0; j < d; ++j) m(j, j) = std::polar(1.0, 2.0 * kPi * j / d);
    return m;
}

Mat fourier(int d) {
    Mat m(d, d);
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) m(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(d)), 2.0 * kPi * ((j * k) % d) / d);
    return m;
}

Mat csum(int d) {
    Mat m = Mat::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i * d + (i + j) % d, i * d + j) = 1;
    return m;
}

Mat permutation(std::span<const int> perm) {
    const auto n = static_cast<Eigen::Index>(perm.size());
    Mat m = Mat::Zero(n, n);
    std::vector<bool> seen(perm.size(), false);
    for (Eigen::Index j = 0; j < n; ++j) {
        const int r = perm[static_cast<std::size_t>(j)];
        if (r < 0 || r >= n || seen[static_cast<std::size_t>(r)]) throw InvariantError("not a permutation");
        seen[static_cast<std::size_t>(r)] = true;
        m(r, j) = 1;
    }
    return m;
}

Mat by_name(std::string_view name) {
    if (name == "H") return h();
    if (name == "T") return t();
    if (name == "S") return s();
    if (name == "Sdg") return sdg();
    if (name == "X") return x();
    if (name == "Y") return y();
    if (name == "Z") return z();
    if (name == "CX" || name == "CNOT") return cx();
    if (name == "CZ") return cz();
    if (name == "CCX" || name == "TOFFOLI") return ccx();
    if (name == "SWAP") return swap();
    if (name == "I") return identity(2);
    throw ParseError("unknown gate name: " + std::string(name));
}

int arity(std::string_view name) {
    const Mat m = by_name(name);
    int n = 0;
    for (Eigen::Index d = m.rows(); d > 1; d /= 2) ++n;
    return n;
}

} // namespace gates

// ---------------------------------------------------------------------------
// Random ensembles

Vec random_complex_gaussian(std::size_t n, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vec v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = g(rng);
        const double im = g(rng);
        v(i) = cplx(re, im);
    }
    return v;
}

StateVector random_state(const HilbertSpec& spec, Rng& rng) {
    return StateVector::normalized(spec, random_complex_gaussian(spec.total_dim(), rng));
}

Mat random_unitary(int d, Rng& rng) {
    Mat g(d, d);
    for (int c = 0; c < d; ++c) g.col(c) = random_complex_gaussian(static_cast<std::size_t>(d), rng);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ() * Mat::Identity(d, d);
    const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) {
        const cplx ri = r(i, i);
        const double a = std::abs(ri);
        if (a > 0) q.col(i) *= ri / a;
    }
    return q;
}

UnitaryOp random_unitary(const HilbertSpec& spec, Rng& rng) {
    return UnitaryOp(spec, random_unitary(static_cast<int>(spec.total_dim()), rng));
}

DensityOperator random_density(const HilbertSpec& spec, Rng& rng) {
    const auto n = static_cast<int>(spec.total_dim());
    Mat g(n, n);
    for (int c = 0; c < n; ++c) g.col(c) = random_complex_gaussian(static_cast<std::size_t>(n), rng);
    Mat rho = g * g.adjoint();
    rho /= rho.trace();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityOperator(spec, std::move(rho));
}

Mat random_hermitian(int d, Rng& rng) {
    Mat g(d, d);
    for (int c = 0; c < d; ++c) g.col(c) = random_complex_gaussian(static_cast<std::size_t>(d), rng);
    return 0.5 * (g + g.adjoint());
}

std::vector<int> random_permutation(int d, Rng& rng) {
    std::vector<int> p(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) p[static_cast<std::size_t>(i)] = i;
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

} // namespace uqres
