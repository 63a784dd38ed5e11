#include "uqres/hamiltonian.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace uqres {

TermSum::TermSum(HilbertSpec spec, std::vector<HamiltonianTerm> terms)
    : spec_(std::move(spec)), terms_(std::move(terms)) {
    for (const auto& t : terms_) {
        std::size_t d = 1;
        for (int s : t.sites) {
            if (s < 0 || s >= spec_.size()) throw InvariantError("term support outside the layout");
            d *= static_cast<std::size_t>(spec_.dim(s));
        }
        if (t.sites.empty() || static_cast<std::size_t>(t.matrix.rows()) != d || t.matrix.cols() != t.matrix.rows())
            throw InvariantError("term matrix does not match its support");
        if (!is_hermitian(t.matrix)) throw InvariantError("term matrix is not Hermitian");
    }
}

bool is_stoquastic(const Mat& h, const std::optional<Mat>& basis) {
    if (!is_hermitian(h)) throw InvariantError("is_stoquastic expects a Hermitian matrix");
    Mat m = h;
    if (basis) {
        if (basis->rows() != h.rows() || !is_unitary(*basis, kChannelTol))
            throw InvariantError("basis must be a unitary of matching size");
        m = basis->adjoint() * h * *basis;
    }
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i == j) continue;
            if (std::abs(m(i, j).imag()) >= 1e-10 || m(i, j).real() >= 1e-10) return false;
        }
    return true;
}

bool is_stoquastic(const TermSum& terms, const std::optional<Mat>& basis) {
    return is_stoquastic(assemble(terms), basis);
}

Mat assemble(const TermSum& terms) {
    const auto d = static_cast<Eigen::Index>(terms.spec().total_dim());
    Mat h = Mat::Zero(d, d);
    for (const auto& t : terms.terms()) h += t.weight * embed(terms.spec(), t.matrix, t.sites);
    return h;
}

UnitaryOp trotter_evolve(const TermSum& terms, double t, int steps) {
    if (steps < 1) throw InvariantError("Trotter step count must be >= 1");
    const auto d = static_cast<Eigen::Index>(terms.spec().total_dim());
    Mat step = Mat::Identity(d, d);
    for (const auto& term : terms.terms()) {
        const Mat local = exp_i_hermitian(term.matrix, t * term.weight / steps);
        step = apply_on_columns(terms.spec(), step, local, term.sites);
    }
    Mat u = Mat::Identity(d, d);
    for (int k = 0; k < steps; ++k) u = step * u;
    return UnitaryOp(terms.spec(), u);
}

UnitaryOp exact_evolve(const TermSum& terms, double t) {
    return UnitaryOp(terms.spec(), exp_i_hermitian(assemble(terms), t));
}

double simulation_error(const Mat& hprime, const Mat& h, const Mat& encode, double delta) {
    if (!is_hermitian(hprime) || !is_hermitian(h)) throw InvariantError("simulation_error expects Hermitian inputs");
    if (encode.rows() != hprime.rows() || encode.cols() != h.rows())
        throw InvariantError("encoding has the wrong shape");
    if ((encode.adjoint() * encode - Mat::Identity(h.rows(), h.rows())).cwiseAbs().maxCoeff() > kChannelTol)
        throw InvariantError("encoding is not an isometry");
    Eigen::SelfAdjointEigenSolver<Mat> es(hprime);
    Mat low = Mat::Zero(hprime.rows(), hprime.cols());
    int kept = 0;
    for (Eigen::Index k = 0; k < hprime.rows(); ++k) {
        if (es.eigenvalues()(k) <= delta) {
            const Vec v = es.eigenvectors().col(k);
            low += es.eigenvalues()(k) * v * v.adjoint();
            ++kept;
        }
    }
    if (kept == 0) throw InvariantError("no eigenvalue of H' lies below the cutoff");
    return spectral_norm(low - encode * h * encode.adjoint());
}

// ---------------------------------------------------------------------------
// Cellular automaton

HqcaLocalTerm hqca_local_term() {
    HqcaLocalTerm out;
    Mat p0 = Mat::Zero(2, 2), p1 = Mat::Zero(2, 2);
    p0(0, 0) = 1;
    p1(1, 1) = 1;
    out.w = kron(p0, gates::identity(2)) + kron(p1, Mat(gates::h() * gates::z()));
    out.swap = gates::swap();
    Mat q0 = Mat::Zero(3, 3), q1 = Mat::Zero(3, 3), q2 = Mat::Zero(3, 3);
    q0(0, 0) = 1;
    q1(1, 1) = 1;
    q2(2, 2) = 1;
    out.u = kron(q0, gates::identity(4)) + kron(q1, out.w) + kron(q2, out.swap);
    Mat up = Mat::Zero(2, 2), down = Mat::Zero(2, 2);
    up(0, 1) = 1;
    down(1, 0) = 1;
    out.h = kron(up, out.u) + kron(down, Mat(out.u.adjoint()));
    return out;
}

Mat hqca_gate(int program) {
    const auto t = hqca_local_term();
    switch (program) {
    case 0:
        return gates::identity(4);
    case 1:
        return t.w;
    case 2:
        return t.swap;
    }
    throw InvariantError("program value must be 0, 1 or 2");
}

int hqca_active_pairs(int data_qubits, int layer) {
    int n = 0;
    for (int i = layer % 2; i + 1 < data_qubits; i += 2) ++n;
    return n;
}

HqcaResult hqca_run(const std::vector<HqcaLayer>& layers, const StateVector& data) {
    const int n = data.spec().size();
    if (n < 2 || n > 4 || data.spec() != HilbertSpec::qubits(n))
        throw InvariantError("hqca_run expects 2 to 4 data qubits");
    const HqcaLocalTerm term = hqca_local_term();
    const Mat quench = exp_i_hermitian(term.h, std::numbers::pi / 2.0);
    HqcaResult res{data, 1.0};
    Vec v = data.amplitudes();
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const auto& programs = layers[l];
        const int pairs = hqca_active_pairs(n, static_cast<int>(l));
        if (static_cast<int>(programs.size()) != pairs)
            throw InvariantError("layer " + std::to_string(l) + " needs " + std::to_string(pairs) + " programs");
        for (int p : programs)
            if (p < 0 || p > 2) throw InvariantError("program value must be 0, 1 or 2");
        if (pairs == 0) continue;

        // Layout: data qubits, then (ancilla, program) per active pair.
        std::vector<int> dims(static_cast<std::size_t>(n), 2);
        for (int k = 0; k < pairs; ++k) {
            dims.push_back(2);
            dims.push_back(3);
        }
        const HilbertSpec spec(dims);
        Vec full = v;
        for (int k = 0; k < pairs; ++k) {
            Vec ap = Vec::Zero(6);
            ap(1 * 3 + programs[static_cast<std::size_t>(k)]) = 1.0;  // ancilla |1>, program |p>
            Vec next(full.size() * 6);
            for (Eigen::Index a = 0; a < full.size(); ++a) next.segment(a * 6, 6) = full(a) * ap;
            full = std::move(next);
        }
        int first = static_cast<int>(l % 2);
        for (int k = 0; k < pairs; ++k) {
            const int i = first + 2 * k;
            const int anc = n + 2 * k;
            full = apply_on(spec, full, quench, std::vector<int>{anc, anc + 1, i, i + 1});
        }
        // Side conditions: every ancilla in |0>, every program unchanged.
        const std::size_t reg_dim = spec.total_dim() / (std::size_t{1} << n);
        std::size_t expected = 0;
        for (int k = 0; k < pairs; ++k) expected = expected * 6 + static_cast<std::size_t>(programs[static_cast<std::size_t>(k)]);
        Vec out(std::size_t{1} << n);
        for (Eigen::Index i = 0; i < out.size(); ++i)
            out(i) = full(static_cast<Eigen::Index>(static_cast<std::size_t>(i) * reg_dim + expected));
        res.side_condition = std::min(res.side_condition, out.squaredNorm());
        if (out.squaredNorm() < 1.0 - 1e-8) throw InvariantError("cellular automaton side condition violated");
        v = out / out.norm();
    }
    res.data = StateVector::normalized(data.spec(), std::move(v));
    return res;
}

// ---------------------------------------------------------------------------
// History states and adiabatic scans

std::vector<double> HistoryState::clock_probabilities() const {
    const int c = length + 1;
    if (c == 1) return {1.0};
    std::vector<double> p(static_cast<std::size_t>(c), 0.0);
    for (Eigen::Index i = 0; i < state.amplitudes().size(); ++i) p[static_cast<std::size_t>(i % c)] += std::norm(state.amplitudes()(i));
    return p;
}

HistoryState history_state(const std::vector<Mat>& circuit, const StateVector& psi0) {
    const int length = static_cast<int>(circuit.size());
    if (length == 0) return {0, psi0};
    const HilbertSpec spec = psi0.spec().concat(HilbertSpec({length + 1}, psi0.spec().cap()));
    const auto dd = static_cast<Eigen::Index>(psi0.dim());
    const Eigen::Index c = length + 1;
    Vec v = Vec::Zero(dd * c);
    Vec cur = psi0.amplitudes();
    const double amp = 1.0 / std::sqrt(static_cast<double>(c));
    for (Eigen::Index l = 0; l < c; ++l) {
        if (l > 0) {
            const Mat& u = circuit[static_cast<std::size_t>(l - 1)];
            if (u.rows() != dd || !is_unitary(u, kChannelTol)) throw InvariantError("history_state expects unitaries on the data");
            cur = u * cur;
        }
        for (Eigen::Index i = 0; i < dd; ++i) v(i * c + l) = amp * cur(i);
    }
    return {length, StateVector::normalized(spec, std::move(v))};
}

Mat walk_hamiltonian(int length) {
    if (length < 1) throw InvariantError("walk Hamiltonian needs L >= 1");
    const int n = length + 1;
    Mat h = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        h(i, i) = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        if (i + 1 < n) h(i, i + 1) = h(i + 1, i) = -0.5;
    }
    return h;
}

Mat interpolate(const Mat& h_start, const Mat& h_end, double s) {
    if (h_start.rows() != h_end.rows() || h_start.cols() != h_end.cols())
        throw InvariantError("interpolation endpoints differ in dimension");
    return (1.0 - s) * h_start + s * h_end;
}

Mat interpolate_literal(const Mat& h0, const Mat& h1, double t) { return interpolate(h1, h0, t); }

std::vector<GapPoint> adiabatic_gap_scan(const Mat& h_start, const Mat& h_end, int grid) {
    if (grid < 2) throw InvariantError("gap scan needs at least two grid points");
    if (h_start.rows() < 2) throw InvariantError("gap scan needs at least two levels");
    std::vector<GapPoint> out;
    for (int g = 0; g < grid; ++g) {
        const double s = static_cast<double>(g) / (grid - 1);
        const RVec ev = hermitian_eigenvalues(interpolate(h_start, h_end, s));
        out.push_back({s, ev(1) - ev(0)});
    }
    return out;
}

std::pair<Mat, Mat> z_to_x_preset() {
    const double r = 1.0 / std::sqrt(2.0);
    return {r * gates::z(), r * gates::x()};
}

std::pair<Mat, Mat> clock_walk_preset(int length) {
    const Mat hw = walk_hamiltonian(length);
    Mat start = Mat::Identity(hw.rows(), hw.cols());
    start(0, 0) = 0.0;
    return {start, hw};
}

} // namespace uqres
