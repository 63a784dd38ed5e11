#include "uqres/algorithms.hpp"

#include <cmath>

#include "uqres/measures.hpp"

namespace uqres {

void AlgorithmReport::validate() const {
    for (const auto& [name, r] : residuals)
        if (!std::isfinite(r) || r < 0.0) throw InvariantError("residual '" + name + "' must be non-negative");
}

double sandwiched_interference(const Mat& v, const Multiplexer& cu, const Mat& w) {
    const int d1 = cu.control_dim();
    const int d2 = cu.target_dim();
    if (v.rows() != d1 || v.cols() != d1 || w.rows() != d1 || w.cols() != d1)
        throw InvariantError("V and W must match the multiplexer control dimension");
    if (!is_unitary(v, kChannelTol) || !is_unitary(w, kChannelTol)) throw InvariantError("V and W must be unitary");
    double total = 0.0;
    std::vector<double> p(static_cast<std::size_t>(d1 * d2));
    for (int b = 0; b < d1; ++b)
        for (int nu = 0; nu < d2; ++nu) {
            for (int a = 0; a < d1; ++a)
                for (int mu = 0; mu < d2; ++mu) {
                    cplx amp = 0.0;
                    for (int i = 0; i < d1; ++i) amp += v(a, i) * w(i, b) * cu.branches()[static_cast<std::size_t>(i)](mu, nu);
                    p[static_cast<std::size_t>(a * d2 + mu)] = std::norm(amp);
                }
            total += shannon_entropy(p);
        }
    return total / (d1 * d2);
}

Mat v_epsilon(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw InvariantError("epsilon must lie strictly between 0 and 1");
    Mat v(2, 2);
    v << std::sqrt(1.0 - eps), -std::sqrt(eps), std::sqrt(eps), std::sqrt(1.0 - eps);
    return v;
}

namespace {

int qubit_count(const UnitaryOp& u) {
    const HilbertSpec& s = u.spec();
    if (s != HilbertSpec::qubits(s.size())) throw InvariantError("expected a unitary on qubits");
    return s.size();
}

} // namespace

std::pair<Circuit, StateVector> vdn_build(const UnitaryOp& u, double eps) {
    const Mat v = v_epsilon(eps);
    const int n = qubit_count(u);
    if (n < 1 || n > 6) throw InvariantError("vdn_build supports 1 to 6 qubits");
    Circuit c(HilbertSpec::qubits(n + 1));
    std::vector<int> data;
    for (int k = 1; k <= n; ++k) data.push_back(k);
    const auto dd = static_cast<Eigen::Index>(u.spec().total_dim());
    c.gate(v, {0}, "V_eps");
    c.mux(0, {Mat::Identity(dd, dd), u.matrix()}, data);
    const auto branches = simulate(c, StateVector::basis(c.wires(), std::size_t{0}));
    return {c, *branches.front().pure};
}

VdnDecomposition vdn_interference_decomposition(const UnitaryOp& u, double eps) {
    const auto [c, state] = vdn_build(u, eps);
    VdnDecomposition d;
    d.i_circuit = interference_power(circuit_unitary(c));
    d.i_v = interference_power(v_epsilon(eps));
    d.i_u = interference_power(u);
    d.residual = std::abs(d.i_circuit - d.i_v - 0.5 * d.i_u);
    return d;
}

LcuResult lcu_apply(const std::vector<cplx>& c, const std::vector<UnitaryOp>& us, const StateVector& psi) {
    if (c.empty() || c.size() != us.size()) throw InvariantError("weights and unitaries must pair up");
    for (const auto& u : us)
        if (u.spec() != psi.spec()) throw InvariantError("LCU unitaries must act on the input space");
    double l1 = 0.0;
    for (const auto& ci : c) l1 += std::abs(ci);
    if (l1 <= 0.0) throw InvariantError("LCU weights are all zero");

    // A single term still needs a two-level control; pad with a zero weight.
    const std::size_t m = std::max<std::size_t>(c.size(), 2);
    Vec amp = Vec::Zero(static_cast<Eigen::Index>(m));
    std::vector<Mat> branches;
    const auto dd = static_cast<Eigen::Index>(psi.dim());
    for (std::size_t i = 0; i < m; ++i) {
        if (i < c.size()) {
            amp(static_cast<Eigen::Index>(i)) = std::sqrt(std::abs(c[i]) / l1);
            const cplx phase = std::abs(c[i]) > 0.0 ? c[i] / std::abs(c[i]) : cplx(1.0);
            branches.push_back(phase * us[i].matrix());
        } else {
            branches.push_back(Mat::Identity(dd, dd));
        }
    }
    const Mat prep = complete_to_unitary(amp);

    std::vector<int> dims{static_cast<int>(m)};
    std::vector<int> data;
    for (int k = 0; k < psi.spec().size(); ++k) {
        dims.push_back(psi.spec().dim(k));
        data.push_back(k + 1);
    }
    Circuit circ(HilbertSpec(dims, psi.spec().cap()));
    circ.gate(prep, {0}, "PREP");
    circ.mux(0, branches, data);
    circ.gate(Mat(prep.adjoint()), {0}, "UNPREP");
    circ.measure(0, Basis::Z, "c");
    circ.discard(0);

    const StateVector input(circ.wires(), kron(StateVector::basis(HilbertSpec({static_cast<int>(m)}), std::size_t{0}).amplitudes(),
                                               psi.amplitudes()));
    const auto kept = postselect(simulate(circ, input), "c", 0);
    if (kept.empty() || kept.front().probability < 1e-24)
        throw InvariantError("linear combination annihilates the input state");
    return {*kept.front().pure, kept.front().probability};
}

std::vector<GroverStep> grover_trace(int n, int marked, int iterations) {
    if (n < 1 || n > 6) throw InvariantError("grover_trace supports 1 to 6 qubits");
    const int big_n = 1 << n;
    if (marked < 0 || marked >= big_n) throw InvariantError("marked index out of range");
    if (iterations < 0) throw InvariantError("iteration count must be non-negative");
    const HilbertSpec spec = HilbertSpec::qubits(n);

    Vec uniform = Vec::Constant(big_n, 1.0 / std::sqrt(static_cast<double>(big_n)));
    Mat frame = Mat::Zero(big_n, 2);
    frame(marked, 0) = 1.0;
    for (int i = 0; i < big_n; ++i)
        if (i != marked) frame(i, 1) = 1.0 / std::sqrt(static_cast<double>(big_n - 1));
    const Mat rotated = complete_to_unitary(frame);

    const double theta = std::asin(std::pow(2.0, -0.5 * n));
    std::vector<GroverStep> out;
    Vec v = uniform;
    for (int k = 0; k <= iterations; ++k) {
        if (k > 0) {
            v(marked) = -v(marked);
            const cplx ov = uniform.dot(v);
            v = 2.0 * ov * uniform - v;
        }
        const auto rho = DensityOperator::pure(StateVector(spec, v));
        GroverStep s;
        s.iteration = k;
        s.success_probability = std::norm(v(marked));
        s.closed_form = std::pow(std::sin((2 * k + 1) * theta), 2);
        s.coherence = rel_ent_coherence(rho);
        s.rotated_coherence = rel_ent_coherence(rho, rotated);
        out.push_back(s);
    }
    return out;
}

} // namespace uqres
