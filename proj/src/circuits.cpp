#include "uqres/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Eigenvalues>

namespace uqres {

namespace {

std::size_t product_dim(const HilbertSpec& spec, const std::vector<int>& wires) {
    std::size_t d = 1;
    for (int w : wires) d *= static_cast<std::size_t>(spec.dim(w));
    return d;
}

bool is_monomial(const Mat& m, double tol = 1e-12) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        int nonzero = 0;
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            if (std::abs(m(r, c)) > tol) ++nonzero;
        if (nonzero != 1) return false;
    }
    return true;
}

Mat mux_matrix(const MuxOp& op) {
    const auto t = op.branches.front().rows();
    const auto c = static_cast<Eigen::Index>(op.branches.size());
    Mat m = Mat::Zero(c * t, c * t);
    for (Eigen::Index i = 0; i < c; ++i) m.block(i * t, i * t, t, t) = op.branches[static_cast<std::size_t>(i)];
    return m;
}

std::vector<int> mux_wires(const MuxOp& op) {
    std::vector<int> w{op.control};
    w.insert(w.end(), op.targets.begin(), op.targets.end());
    return w;
}

struct Branch {
    OutcomeRecord rec;
    double p = 1.0;
    std::vector<int> live;
    HilbertSpec spec;
    bool pure = true;
    Vec v;
    Mat rho;
};

std::vector<int> positions(const Branch& b, const std::vector<int>& wires) {
    std::vector<int> out;
    out.reserve(wires.size());
    for (int w : wires) {
        auto it = std::find(b.live.begin(), b.live.end(), w);
        if (it == b.live.end()) throw InvariantError("operation touches a discarded wire");
        out.push_back(static_cast<int>(it - b.live.begin()));
    }
    return out;
}

void apply_gate(Branch& b, const Mat& op, const std::vector<int>& wires) {
    const auto pos = positions(b, wires);
    if (b.pure) {
        b.v = apply_on(b.spec, b.v, op, pos);
    } else {
        b.rho = conjugate_on(b.spec, b.rho, op, pos);
    }
}

bool matches(const OutcomeRecord& rec, const OutcomeRecord& when) {
    for (const auto& [name, value] : when) {
        auto it = rec.find(name);
        if (it == rec.end() || it->second != value) return false;
    }
    return true;
}

// Contracts wire `pos` of a pure vector against <phi|.
Vec contract_wire(const HilbertSpec& spec, const Vec& v, int pos, const Vec& phi) {
    const std::size_t stride = spec.stride(pos);
    const auto d = static_cast<std::size_t>(spec.dim(pos));
    Vec w = Vec::Zero(static_cast<Eigen::Index>(spec.total_dim() / d));
    for (std::size_t i = 0; i < spec.total_dim(); ++i) {
        const std::size_t digit = (i / stride) % d;
        const std::size_t rest = (i / (stride * d)) * stride + i % stride;
        w(static_cast<Eigen::Index>(rest)) += std::conj(phi(static_cast<Eigen::Index>(digit))) * v(static_cast<Eigen::Index>(i));
    }
    return w;
}

void discard(Branch& b, int wire) {
    const int pos = positions(b, {wire}).front();
    const std::vector<int> gone{pos};
    if (b.live.size() == 1) {
        b.live.clear();
        b.spec = HilbertSpec(std::vector<int>{}, b.spec.cap());
        b.pure = true;
        b.v = Vec::Ones(1);
        b.rho = Mat();
        return;
    }
    std::vector<int> keep;
    for (int k = 0; k < b.spec.size(); ++k)
        if (k != pos) keep.push_back(k);
    HilbertSpec rest = b.spec.without(gone);
    if (b.pure) {
        const Mat reduced = partial_trace(b.spec, b.v * b.v.adjoint(), gone);
        const double purity = (reduced * reduced).trace().real();
        if (purity > 1.0 - kInvariantTol) {
            Eigen::SelfAdjointEigenSolver<Mat> es(reduced);
            Vec phi = es.eigenvectors().col(es.eigenvectors().cols() - 1);
            Eigen::Index big = 0;
            phi.cwiseAbs().maxCoeff(&big);
            phi *= std::conj(phi(big)) / std::abs(phi(big));
            Vec w = contract_wire(b.spec, b.v, pos, phi);
            b.v = w / w.norm();
        } else {
            b.pure = false;
            b.rho = partial_trace(b.spec, b.v * b.v.adjoint(), keep);
            b.v = Vec();
        }
    } else {
        b.rho = partial_trace(b.spec, b.rho, keep);
    }
    b.spec = std::move(rest);
    b.live.erase(b.live.begin() + pos);
}

std::vector<Branch> measure(const Branch& b, const MeasureOp& op) {
    const int pos = positions(b, {op.wire}).front();
    const int d = b.spec.dim(pos);
    const Mat basis = basis_unitary(op.basis, d, op.custom);
    std::vector<Branch> out;
    for (int k = 0; k < d; ++k) {
        const Mat proj = basis.col(k) * basis.col(k).adjoint();
        Branch nb;
        nb.rec = b.rec;
        nb.rec[op.out] = k;
        nb.live = b.live;
        nb.spec = b.spec;
        nb.pure = b.pure;
        double q = 0.0;
        if (b.pure) {
            nb.v = apply_on(b.spec, b.v, proj, std::vector<int>{pos});
            q = nb.v.squaredNorm();
            if (b.p * q < kBranchPruneTol) continue;
            nb.v /= std::sqrt(q);
        } else {
            nb.rho = conjugate_on(b.spec, b.rho, proj, std::vector<int>{pos});
            q = nb.rho.trace().real();
            if (b.p * q < kBranchPruneTol) continue;
            nb.rho /= q;
        }
        nb.p = b.p * q;
        out.push_back(std::move(nb));
    }
    return out;
}

std::vector<BranchOutcome> run(const Circuit& c, Branch start) {
    c.validate();
    std::vector<Branch> branches{std::move(start)};
    for (const Instruction& ins : c.ops()) {
        if (const auto* g = std::get_if<GateOp>(&ins)) {
            for (auto& b : branches) apply_gate(b, g->matrix, g->wires);
        } else if (const auto* m = std::get_if<MuxOp>(&ins)) {
            const Mat op = mux_matrix(*m);
            const auto wires = mux_wires(*m);
            for (auto& b : branches) apply_gate(b, op, wires);
        } else if (const auto* ms = std::get_if<MeasureOp>(&ins)) {
            std::vector<Branch> next;
            for (const auto& b : branches) {
                for (auto& nb : measure(b, *ms)) next.push_back(std::move(nb));
                if (next.size() > kMaxBranches) throw CapError("circuit exceeds the branch cap of 65536");
            }
            branches = std::move(next);
        } else if (const auto* cd = std::get_if<CondOp>(&ins)) {
            for (auto& b : branches)
                if (matches(b.rec, cd->when)) apply_gate(b, cd->gate.matrix, cd->gate.wires);
        } else if (const auto* ds = std::get_if<DiscardOp>(&ins)) {
            for (auto& b : branches) discard(b, ds->wire);
        }
    }
    std::vector<BranchOutcome> out;
    out.reserve(branches.size());
    for (auto& b : branches) {
        BranchOutcome o;
        o.outcomes = std::move(b.rec);
        o.probability = b.p;
        o.wires = std::move(b.live);
        if (b.pure) {
            o.pure = StateVector::normalized(b.spec, std::move(b.v));
        } else {
            Mat r = 0.5 * (b.rho + b.rho.adjoint());
            r /= r.trace().real();
            o.mixed = DensityOperator(b.spec, std::move(r));
        }
        out.push_back(std::move(o));
    }
    return out;
}

Instruction shifted(const Instruction& ins, int n) {
    auto shift = [n](std::vector<int> w) {
        for (int& x : w) x += n;
        return w;
    };
    return std::visit(
        [&](const auto& op) -> Instruction {
            using T = std::decay_t<decltype(op)>;
            T copy = op;
            if constexpr (std::is_same_v<T, GateOp>) {
                copy.wires = shift(op.wires);
            } else if constexpr (std::is_same_v<T, MuxOp>) {
                copy.control += n;
                copy.targets = shift(op.targets);
            } else if constexpr (std::is_same_v<T, MeasureOp>) {
                copy.wire += n;
            } else if constexpr (std::is_same_v<T, CondOp>) {
                copy.gate.wires = shift(op.gate.wires);
            } else {
                copy.wire += n;
            }
            return copy;
        },
        ins);
}

void check_wire_list(const HilbertSpec& spec, const std::vector<int>& wires, const std::set<int>& gone) {
    if (wires.empty()) throw InvariantError("operation has no wires");
    for (std::size_t i = 0; i < wires.size(); ++i) {
        if (wires[i] < 0 || wires[i] >= spec.size()) throw InvariantError("wire index out of range");
        if (gone.count(wires[i])) throw InvariantError("operation touches a discarded wire");
        for (std::size_t j = 0; j < i; ++j)
            if (wires[i] == wires[j]) throw InvariantError("duplicate wire in operation");
    }
}

void check_gate(const HilbertSpec& spec, const GateOp& g, const std::set<int>& gone) {
    check_wire_list(spec, g.wires, gone);
    const auto d = static_cast<Eigen::Index>(product_dim(spec, g.wires));
    if (g.matrix.rows() != d || g.matrix.cols() != d)
        throw InvariantError("gate '" + g.name + "' has the wrong size for its wires");
    if (!is_unitary(g.matrix, kChannelTol)) throw InvariantError("gate '" + g.name + "' is not unitary");
}

} // namespace

Mat basis_unitary(Basis basis, int dim, const Mat& custom) {
    switch (basis) {
    case Basis::Z:
        return Mat::Identity(dim, dim);
    case Basis::X:
        return dim == 2 ? gates::h() : gates::fourier(dim);
    case Basis::Y:
        if (dim != 2) throw InvariantError("Y-basis measurement needs a qubit");
        return gates::s() * gates::h();
    case Basis::custom:
        if (custom.rows() != dim || !is_unitary(custom, kChannelTol))
            throw InvariantError("custom measurement basis must be a unitary of the wire dimension");
        return custom;
    }
    throw InvariantError("unknown basis");
}

Mat BranchOutcome::density() const {
    if (pure) return pure->amplitudes() * pure->amplitudes().adjoint();
    return mixed->matrix();
}

// ---------------------------------------------------------------------------
// Circuit

Circuit& Circuit::gate(std::string_view name, std::vector<int> wires) {
    return gate(gates::by_name(name), std::move(wires), std::string(name));
}

Circuit& Circuit::gate(Mat matrix, std::vector<int> wires, std::string name) {
    return append(GateOp{std::move(matrix), std::move(wires), std::move(name)});
}

Circuit& Circuit::mux(int control, std::vector<Mat> branches, std::vector<int> targets) {
    return append(MuxOp{control, std::move(branches), std::move(targets)});
}

Circuit& Circuit::measure(int wire, Basis basis, std::string out, Mat custom) {
    return append(MeasureOp{wire, basis, std::move(custom), std::move(out)});
}

Circuit& Circuit::cond(OutcomeRecord when, GateOp g) { return append(CondOp{std::move(when), std::move(g)}); }

Circuit& Circuit::discard(int wire) { return append(DiscardOp{wire}); }

Circuit& Circuit::append(Instruction op) {
    ops_.push_back(std::move(op));
    return *this;
}

void Circuit::validate() const {
    std::set<std::string> produced;
    std::set<int> gone;
    for (const Instruction& ins : ops_) {
        if (const auto* g = std::get_if<GateOp>(&ins)) {
            check_gate(wires_, *g, gone);
        } else if (const auto* m = std::get_if<MuxOp>(&ins)) {
            check_wire_list(wires_, mux_wires(*m), gone);
            if (static_cast<int>(m->branches.size()) != wires_.dim(m->control))
                throw InvariantError("multiplexer branch count must equal the control dimension");
            const auto t = static_cast<Eigen::Index>(product_dim(wires_, m->targets));
            for (const Mat& b : m->branches)
                if (b.rows() != t || b.cols() != t || !is_unitary(b, kChannelTol))
                    throw InvariantError("multiplexer branch has the wrong size or is not unitary");
        } else if (const auto* ms = std::get_if<MeasureOp>(&ins)) {
            check_wire_list(wires_, {ms->wire}, gone);
            if (ms->out.empty()) throw InvariantError("measurement needs an outcome name");
            if (!produced.insert(ms->out).second) throw InvariantError("outcome name reused: " + ms->out);
            basis_unitary(ms->basis, wires_.dim(ms->wire), ms->custom);
        } else if (const auto* cd = std::get_if<CondOp>(&ins)) {
            for (const auto& kv : cd->when)
                if (!produced.count(kv.first))
                    throw InvariantError("condition refers to an outcome not yet measured: " + kv.first);
            check_gate(wires_, cd->gate, gone);
        } else if (const auto* ds = std::get_if<DiscardOp>(&ins)) {
            check_wire_list(wires_, {ds->wire}, gone);
            gone.insert(ds->wire);
        }
    }
}

std::vector<int> Circuit::live_wires() const {
    std::vector<int> live;
    for (int w = 0; w < wires_.size(); ++w) {
        bool dropped = false;
        for (const auto& ins : ops_)
            if (const auto* ds = std::get_if<DiscardOp>(&ins); ds && ds->wire == w) dropped = true;
        if (!dropped) live.push_back(w);
    }
    return live;
}

// ---------------------------------------------------------------------------
// Simulation

std::vector<BranchOutcome> simulate(const Circuit& c, const StateVector& input) {
    if (!(input.spec() == c.wires())) throw InvariantError("input layout does not match circuit wires");
    Branch b;
    b.spec = c.wires();
    for (int w = 0; w < c.wires().size(); ++w) b.live.push_back(w);
    b.v = input.amplitudes();
    return run(c, std::move(b));
}

std::vector<BranchOutcome> simulate(const Circuit& c, const DensityOperator& input) {
    if (!(input.spec() == c.wires())) throw InvariantError("input layout does not match circuit wires");
    Branch b;
    b.spec = c.wires();
    for (int w = 0; w < c.wires().size(); ++w) b.live.push_back(w);
    b.pure = false;
    b.rho = input.matrix();
    return run(c, std::move(b));
}

std::vector<BranchOutcome> postselect(const std::vector<BranchOutcome>& branches, const std::string& name,
                                      int value) {
    std::vector<BranchOutcome> out;
    for (const auto& b : branches) {
        auto it = b.outcomes.find(name);
        if (it != b.outcomes.end() && it->second == value) out.push_back(b);
    }
    return out;
}

DeterminismReport is_deterministic(const std::vector<BranchOutcome>& branches, double tol) {
    DeterminismReport r;
    if (branches.empty()) return r;
    const Mat ref = branches.front().density();
    bool all_pure = true;
    for (const auto& b : branches) {
        if (!b.is_pure()) all_pure = false;
        if (!(b.spec() == branches.front().spec())) {
            r.max_infidelity = 1.0;
            continue;
        }
        double f = 0.0;
        if (b.is_pure() && branches.front().is_pure()) {
            f = overlap_fidelity(b.pure->amplitudes(), branches.front().pure->amplitudes());
        } else {
            f = (ref * b.density()).trace().real();
        }
        r.max_infidelity = std::max(r.max_infidelity, 1.0 - f);
    }
    r.max_infidelity = std::max(0.0, r.max_infidelity);
    r.deterministic = all_pure && r.max_infidelity < tol;
    return r;
}

DeterminismReport is_deterministic(const Circuit& c, const std::vector<StateVector>& inputs, double tol) {
    DeterminismReport r;
    r.deterministic = true;
    for (const auto& psi : inputs) {
        const auto one = is_deterministic(simulate(c, psi), tol);
        r.deterministic = r.deterministic && one.deterministic;
        r.max_infidelity = std::max(r.max_infidelity, one.max_infidelity);
    }
    return r;
}

bool free_circuit_check(const Circuit& c) {
    for (const Instruction& ins : c.ops()) {
        if (const auto* g = std::get_if<GateOp>(&ins)) {
            if (!is_monomial(g->matrix)) return false;
        } else if (const auto* m = std::get_if<MuxOp>(&ins)) {
            for (const Mat& b : m->branches)
                if (!is_monomial(b)) return false;
        } else if (const auto* ms = std::get_if<MeasureOp>(&ins)) {
            if (ms->basis == Basis::custom) {
                if (!is_monomial(ms->custom)) return false;
            } else if (ms->basis != Basis::Z) {
                return false;
            }
        } else if (const auto* cd = std::get_if<CondOp>(&ins)) {
            if (!is_monomial(cd->gate.matrix)) return false;
        }
    }
    return true;
}

DensityOperator average_channel_choi(const Circuit& c, const std::vector<int>& inputs) {
    c.validate();
    std::vector<int> fed = inputs;
    if (fed.empty())
        for (int w = 0; w < c.wires().size(); ++w) fed.push_back(w);
    const HilbertSpec ref = c.wires().select(fed);
    const int n = ref.size();
    const HilbertSpec ext = ref.concat(c.wires());
    Circuit big(ext);
    for (const auto& ins : c.ops()) big.append(shifted(ins, n));
    const auto din = ref.total_dim();
    const auto dc = c.wires().total_dim();
    Vec omega = Vec::Zero(static_cast<Eigen::Index>(din * dc));
    std::vector<int> digits(static_cast<std::size_t>(c.wires().size()), 0);
    for (std::size_t i = 0; i < din; ++i) {
        const auto in = ref.digits(i);
        for (std::size_t k = 0; k < fed.size(); ++k) digits[static_cast<std::size_t>(fed[k])] = in[k];
        omega(static_cast<Eigen::Index>(i * dc + c.wires().index(digits))) = 1.0 / std::sqrt(static_cast<double>(din));
    }
    const auto branches = simulate(big, StateVector(ext, omega));
    Mat acc = Mat::Zero(static_cast<Eigen::Index>(branches.front().spec().total_dim()),
                        static_cast<Eigen::Index>(branches.front().spec().total_dim()));
    for (const auto& b : branches) acc += b.probability * b.density();
    acc = 0.5 * (acc + acc.adjoint()).eval();
    acc /= acc.trace().real();
    return DensityOperator(branches.front().spec(), std::move(acc));
}

double choi_fidelity(const DensityOperator& choi, const Mat& g) {
    const Eigen::Index dout = g.rows();
    const Eigen::Index din = g.cols();
    if (choi.matrix().rows() != din * dout) throw InvariantError("Choi state and gate sizes disagree");
    Vec phi(din * dout);
    for (Eigen::Index i = 0; i < din; ++i)
        for (Eigen::Index j = 0; j < dout; ++j) phi(i * dout + j) = g(j, i) / std::sqrt(static_cast<double>(din));
    return (phi.adjoint() * choi.matrix() * phi)(0).real();
}

Mat circuit_unitary(const Circuit& c) {
    c.validate();
    const auto d = static_cast<Eigen::Index>(c.wires().total_dim());
    Mat u = Mat::Identity(d, d);
    for (const Instruction& ins : c.ops()) {
        if (const auto* g = std::get_if<GateOp>(&ins)) {
            u = apply_on_columns(c.wires(), u, g->matrix, g->wires);
        } else if (const auto* m = std::get_if<MuxOp>(&ins)) {
            u = apply_on_columns(c.wires(), u, mux_matrix(*m), mux_wires(*m));
        } else {
            throw InvariantError("circuit contains a non-unitary instruction");
        }
    }
    return u;
}

// ---------------------------------------------------------------------------
// Contextual constructions

Circuit contextual_circuit(const Mat& u1, const Multiplexer& cu, const Mat& u2, const std::vector<Mat>& cv,
                           const HilbertSpec& data) {
    const int c = cu.control_dim();
    if (u1.rows() != c || u2.rows() != c || static_cast<int>(cv.size()) != c)
        throw InvariantError("contextual circuit: control dimensions disagree");
    if (static_cast<std::size_t>(cu.target_dim()) != data.total_dim())
        throw InvariantError("contextual circuit: data dimensions disagree");
    Circuit circ(HilbertSpec({c}).concat(data));
    std::vector<int> dw;
    for (int k = 0; k < data.size(); ++k) dw.push_back(k + 1);
    circ.gate(u1, {0}, "U1");
    circ.mux(0, cu.branches(), dw);
    circ.gate(u2, {0}, "U2");
    circ.measure(0, Basis::Z, "c");
    for (int k = 0; k < c; ++k) {
        const Mat& v = cv[static_cast<std::size_t>(k)];
        if ((v - Mat::Identity(v.rows(), v.cols())).cwiseAbs().maxCoeff() < 1e-15) continue;
        circ.cond({{"c", k}}, GateOp{v, dw, "V" + std::to_string(k)});
    }
    circ.discard(0);
    return circ;
}

Circuit h_teleportation_circuit() {
    Circuit c(HilbertSpec::qubits(2));
    c.gate("H", {1}).gate("CZ", {0, 1}).measure(0, Basis::X, "m");
    c.cond({{"m", 1}}, GateOp{gates::x(), {1}, "X"});
    c.discard(0);
    return c;
}

Circuit contextual_h_circuit() {
    const Multiplexer cu({gates::x(), gates::z()});
    return contextual_circuit(gates::h(), cu, gates::h(), {gates::identity(2), Mat(gates::z() * gates::x())},
                              HilbertSpec::qubits(1));
}

Circuit t_injection_circuit(int key_a) {
    Circuit c(HilbertSpec::qubits(2));
    c.gate("H", {1}).gate("T", {1}).gate("CX", {0, 1}).measure(1, Basis::Z, "m");
    c.cond({{"m", 1}}, GateOp{gates::sdg(), {0}, "Sdg"});
    c.discard(1);
    if (key_a) c.gate("S", {0});
    return c;
}

} // namespace uqres
