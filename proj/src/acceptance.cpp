#include "uqres/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "uqres/algorithms.hpp"
#include "uqres/circuits.hpp"
#include "uqres/hamiltonian.hpp"
#include "uqres/interference.hpp"
#include "uqres/measures.hpp"
#include "uqres/mps.hpp"
#include "uqres/protocols.hpp"
#include "uqres/wigner.hpp"

namespace uqres {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

CriterionResult bound(int id, std::string name, double worst, double tol, std::string detail = "") {
    return {id, std::move(name), worst <= tol, worst, tol, std::move(detail)};
}

CriterionResult interference_table() {
    struct Row {
        const char* gate;
        double expected;
    };
    const Row rows[] = {{"H", 1}, {"X", 0}, {"Y", 0}, {"Z", 0}, {"T", 0},
                        {"S", 0}, {"CX", 0}, {"CZ", 0}, {"CCX", 0}};
    double worst = 0.0;
    std::string where;
    for (const auto& r : rows) {
        const double dev = std::abs(interference_power(gates::by_name(r.gate)) - r.expected);
        if (dev >= worst) {
            worst = dev;
            where = r.gate;
        }
    }
    return bound(1, "interference table", worst, 1e-9, "worst gate " + where);
}

CriterionResult additivity(Rng& rng) {
    std::uniform_int_distribution<int> dim(2, 4);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const int d1 = dim(rng), d2 = dim(rng);
        const Mat v = random_unitary(d1, rng).matrix();
        const auto cu = Multiplexer::random(d1, d2, rng);
        const auto r = interference_additivity_check(v, cu);
        worst = std::max({worst, r.residual_cu_after_v, r.residual_v_after_cu});
    }
    return bound(2, "interference additivity", worst, 1e-9, "100 samples, both orders");
}

CriterionResult vdn(Rng& rng) {
    double residual = 0.0, coh = 0.0;
    for (int k = 0; k < 50; ++k) {
        const int n = 1 + k % 3;
        const auto u = random_unitary(HilbertSpec::qubits(n), rng);
        for (double eps : {1e-3, 1e-2, 0.1}) residual = std::max(residual, vdn_interference_decomposition(u, eps).residual);
    }
    for (double eps : {1e-3, 1e-2, 0.1, 0.25, 0.5, 0.9}) {
        const Vec col = v_epsilon(eps).col(0);
        const auto rho = DensityOperator::pure(StateVector(HilbertSpec::qubits(1), col));
        coh = std::max(coh, std::abs(l1_coherence(rho) - 2.0 * std::sqrt(eps * (1.0 - eps))));
        coh = std::max(coh, std::abs(rel_ent_coherence(rho) - binary_entropy(eps)));
    }
    CriterionResult r = bound(3, "controlled-unitary decomposition", residual, 1e-9,
                              "coherence deviation " + fmt(coh));
    r.passed = r.passed && coh <= 1e-12;
    return r;
}

CriterionResult log_coherence_additivity(Rng& rng) {
    std::uniform_int_distribution<int> dim(2, 3);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const auto rho = random_density(HilbertSpec({dim(rng)}), rng);
        const auto sigma = random_density(HilbertSpec({dim(rng)}), rng);
        const double joint = log_coherence(tensor(rho, sigma));
        worst = std::max(worst, std::abs(joint - log_coherence(rho) - log_coherence(sigma)));
    }
    double top = 0.0;
    for (int d = 2; d <= 8; ++d) {
        const auto u = DensityOperator::pure(StateVector::uniform(HilbertSpec({d})));
        top = std::max(top, std::abs(log_coherence(u) - std::log2(static_cast<double>(d))));
    }
    CriterionResult r = bound(4, "log-coherence additivity", worst, 1e-9, "uniform-state deviation " + fmt(top));
    r.passed = r.passed && top <= 1e-12;
    return r;
}

CriterionResult wigner_checks(Rng& rng) {
    const auto stab = stabilizer_states(3);
    double mana_max = 0.0;
    for (const auto& s : stab.states) mana_max = std::max(mana_max, std::abs(mana(DensityOperator::pure(s), 3)));
    double norm_dev = 0.0, purity_dev = 0.0, margin = 1e9;
    for (int k = 0; k < 200; ++k) {
        const auto rho = k % 2 ? DensityOperator::pure(random_state(HilbertSpec({3}), rng))
                               : random_density(HilbertSpec({3}), rng);
        const auto w = wigner_function(rho, 3);
        norm_dev = std::max(norm_dev, std::abs(w.sum() - 1.0));
        purity_dev = std::max(purity_dev, std::abs(3.0 * w.sum_squares() - rho.purity()));
        margin = std::min(margin, l1_coherence(rho) - sum_negativity(w));
    }
    const bool ok = stab.states.size() == 12 && mana_max <= 1e-12 && norm_dev <= 1e-10 && purity_dev <= 1e-9 &&
                    margin >= -1e-9;
    return {5, "Wigner and mana", ok, std::max({mana_max, norm_dev, purity_dev}), 1e-9,
            std::to_string(stab.states.size()) + " stabilizer states, mana " + fmt(mana_max) + ", normalisation " +
                fmt(norm_dev) + ", purity " + fmt(purity_dev) + ", N<=C margin " + fmt(margin)};
}

// Every branch of a free circuit leaves each basis input in a basis state.
bool basis_preserving(const Circuit& c) {
    const auto dim = c.wires().total_dim();
    for (std::size_t i = 0; i < dim; ++i) {
        for (const auto& b : simulate(c, StateVector::basis(c.wires(), i))) {
            const Vec& a = b.pure->amplitudes();
            if (std::abs(a.cwiseAbs2().maxCoeff() - 1.0) > 1e-9) return false;
        }
    }
    return true;
}

Circuit random_free_circuit(int wires, Rng& rng) {
    Circuit c(HilbertSpec::qubits(wires));
    std::uniform_int_distribution<int> wire(0, wires - 1), kind(0, 5);
    int measured = 0;
    for (int step = 0; step < 8; ++step) {
        const int a = wire(rng);
        int b = wire(rng);
        if (b == a) b = (a + 1) % wires;
        switch (kind(rng)) {
        case 0:
            c.gate("X", {a});
            break;
        case 1:
            c.gate(gates::phase(std::uniform_real_distribution<double>(0, 6.28)(rng)), {a}, "P");
            break;
        case 2:
            c.gate("CX", {a, b});
            break;
        case 3:
            c.gate("CZ", {a, b});
            break;
        case 4:
            c.gate("SWAP", {a, b});
            break;
        case 5: {
            const std::string name = "m" + std::to_string(measured++);
            c.measure(a, Basis::Z, name);
            c.cond({{name, 1}}, GateOp{gates::x(), {b}, "X"});
            break;
        }
        }
    }
    return c;
}

CriterionResult contextual(Rng& rng) {
    std::vector<StateVector> inputs;
    for (int k = 0; k < 6; ++k) inputs.push_back(random_state(HilbertSpec::qubits(1), rng));
    auto lift = [](const Circuit& c, const StateVector& psi) {
        // psi on the first wire, |0> elsewhere.
        Vec v = psi.amplitudes();
        for (int w = 1; w < c.wires().size(); ++w) v = kron(v, StateVector::basis(HilbertSpec({c.wires().dim(w)}), std::size_t{0}).amplitudes());
        return StateVector(c.wires(), v);
    };
    double infid = 0.0, choi = 0.0;
    const std::pair<Circuit, Mat> cases[] = {{h_teleportation_circuit(), gates::h()},
                                             {t_injection_circuit(), gates::t()}};
    for (const auto& [c, g] : cases) {
        std::vector<StateVector> lifted;
        for (const auto& psi : inputs) lifted.push_back(lift(c, psi));
        const auto det = is_deterministic(c, lifted);
        infid = std::max(infid, det.deterministic ? det.max_infidelity : 1.0);
        choi = std::max(choi, 1.0 - choi_fidelity(average_channel_choi(c, {0}), g));
    }
    std::uniform_int_distribution<int> width(1, 5);
    bool free_ok = true;
    int checked = 0;
    for (int k = 0; k < 20; ++k) {
        const Circuit c = random_free_circuit(std::max(2, width(rng)), rng);
        if (!free_circuit_check(c)) continue;
        ++checked;
        free_ok = free_ok && basis_preserving(c);
    }
    const bool ok = infid < 1e-9 && choi <= 1e-9 && free_ok && checked > 0;
    return {6, "contextual circuits", ok, std::max(infid, choi), 1e-9,
            "branch infidelity " + fmt(infid) + ", Choi infidelity " + fmt(choi) + ", " + std::to_string(checked) +
                " free circuits basis-preserving=" + (free_ok ? "yes" : "no")};
}

CriterionResult btt_check(Rng& rng) {
    double worst = 0.0;
    int directed = 0, runs = 0;
    bool lobc = true;
    for (int s = 0; s < 20; ++s) {
        const auto psi = random_state(HilbertSpec::qubits(1), rng);
        const StateVector target(psi.spec(), gates::t() * psi.amplitudes());
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                const PauliKey key{a, b};
                for (const auto& r : btt_all_branches(pauli_encrypt(psi, key), key)) {
                    ++runs;
                    worst = std::max(worst, 1.0 - fidelity(pauli_decrypt(r.output, r.new_key), target));
                    const auto rep = validate_lobc(r.transcript);
                    directed += rep.directed_messages;
                    lobc = lobc && rep.ok;
                }
            }
    }
    CriterionResult r = bound(7, "PR-box T teleportation", worst, 1e-10,
                              std::to_string(runs) + " branches, directed messages " + std::to_string(directed));
    r.passed = r.passed && directed == 0 && lobc;
    return r;
}

CriterionResult pmqc_check(Rng& rng) {
    double worst = 0.0;
    bool accounting = true;
    int max_physical = 0;
    for (int s = 0; s < 10; ++s) {
        const int q = 1 + s % 2;
        const auto prog = PmqcProgram::random(q, rng);
        const auto plain = random_state(HilbertSpec::qubits(q), rng);
        std::vector<PauliKey> keys;
        std::uniform_int_distribution<int> bit(0, 1);
        for (int k = 0; k < q; ++k) keys.push_back({bit(rng), bit(rng)});
        ResourcePool pool{prog.t_count(), prog.t_count()};
        OutcomeSource src(rng);
        const auto r = pmqc_run(prog, pauli_encrypt(plain, keys), keys, pool, src);
        const StateVector target(plain.spec(), prog.unitary() * plain.amplitudes());
        worst = std::max(worst, 1.0 - fidelity(pauli_decrypt(r.output, r.keys), target));
        accounting = accounting && r.t_events == prog.t_count() && r.ebits_used == r.t_events &&
                     r.boxes_used == r.t_events && r.physical_qubits <= kPmqcMaxQubits;
        max_physical = std::max(max_physical, r.physical_qubits);
    }
    CriterionResult r = bound(8, "blind gate sequences", worst, 1e-9,
                              std::string("one ebit and one box per T: ") + (accounting ? "yes" : "no") +
                                  ", max physical qubits " + std::to_string(max_physical));
    r.passed = r.passed && accounting;
    return r;
}

// Direct gate for program p, assembled from primitive gates.
Mat direct_pair_gate(int p) {
    if (p == 0) return gates::identity(4);
    if (p == 2) return gates::swap();
    Mat w = Mat::Identity(4, 4);
    w.bottomRightCorner(2, 2) = gates::h() * gates::z();
    return w;
}

CriterionResult hqca_check(Rng& rng) {
    const auto term = hqca_local_term();
    const double quench = (exp_i_hermitian(term.h, std::numbers::pi / 2.0) - cplx(0, 1) * term.h).cwiseAbs().maxCoeff();
    std::uniform_int_distribution<int> prog(0, 2);
    double worst = 0.0, side = 1.0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto psi = random_state(HilbertSpec::qubits(4), rng);
        const int layers = 1 + trial % 2;
        std::vector<HqcaLayer> ls;
        Vec direct = psi.amplitudes();
        for (int l = 0; l < layers; ++l) {
            HqcaLayer layer;
            Mat u = l % 2 == 0 ? Mat::Identity(1, 1) : gates::identity(2);
            for (int k = 0; k < hqca_active_pairs(4, l); ++k) {
                layer.push_back(prog(rng));
                u = kron(u, direct_pair_gate(layer.back()));
            }
            if (l % 2 == 1) u = kron(u, gates::identity(2));
            direct = u * direct;
            ls.push_back(layer);
        }
        const auto r = hqca_run(ls, psi);
        worst = std::max(worst, 1.0 - overlap_fidelity(direct, r.data.amplitudes()));
        side = std::min(side, r.side_condition);
    }
    const bool ok = quench <= 1e-10 && worst <= 1e-10 && side >= 1.0 - 1e-10;
    return {9, "cellular automaton", ok, std::max(quench, worst), 1e-10,
            "quench deviation " + fmt(quench) + ", run infidelity " + fmt(worst) + ", side-condition weight " +
                fmt(side)};
}

CriterionResult walk_checks(Rng& rng) {
    bool entries = true, stoq = true;
    double uniform = 0.0, gap = 0.0, clock = 0.0;
    for (int len = 1; len <= 10; ++len) {
        const Mat h = walk_hamiltonian(len);
        const int n = len + 1;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double e = 0.0;
                if (i == j) e = (i == 0 || i == n - 1) ? 0.5 : 1.0;
                if (std::abs(i - j) == 1) e = -0.5;
                entries = entries && h(i, j) == cplx(e, 0.0);
            }
        const Vec u = Vec::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
        uniform = std::max(uniform, (h * u).norm());
        const RVec ev = hermitian_eigenvalues(h);
        gap = std::max(gap, std::abs(ev(1) - ev(0) - (1.0 - std::cos(std::numbers::pi / (len + 1)))));
        stoq = stoq && is_stoquastic(h);
        std::vector<Mat> circ;
        for (int k = 0; k < len; ++k) circ.push_back(random_unitary(2, rng).matrix());
        const auto hs = history_state(circ, random_state(HilbertSpec::qubits(1), rng));
        for (double p : hs.clock_probabilities()) clock = std::max(clock, std::abs(p - 1.0 / (len + 1)));
    }
    const auto [hz, hx] = z_to_x_preset();
    const int grid = 101;
    GapPoint lowest{0.0, 1e9};
    for (const auto& p : adiabatic_gap_scan(hz, hx, grid))
        if (p.gap < lowest.gap) lowest = p;
    const double res = 1.0 / (grid - 1);
    const bool scan_ok = std::abs(lowest.gap - 1.0) <= 1e-9 && std::abs(lowest.s - 0.5) <= res;
    const bool ok = entries && stoq && uniform < 1e-12 && gap <= 1e-9 && clock <= 1e-12 && scan_ok;
    return {10, "walk Hamiltonian and adiabatic scan", ok, std::max({uniform, gap, clock}), 1e-9,
            std::string("entries exact=") + (entries ? "yes" : "no") + ", uniform eigenvalue " + fmt(uniform) +
                ", gap deviation " + fmt(gap) + ", clock deviation " + fmt(clock) + ", min gap " + fmt(lowest.gap) +
                " at " + fmt(lowest.s)};
}

CriterionResult mps_checks(Rng& rng) {
    std::uniform_int_distribution<int> len(2, 5), phys(2, 3), bond(1, 3);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const auto chain = MPSChain::random(len(rng), phys(rng), bond(rng), rng);
        worst = std::max(worst, 1.0 - fidelity(contract(chain), sequential_prepare(chain).state));
    }
    double stab = 0.0;
    std::vector<GraphSpec> graphs{GraphSpec::line(4), GraphSpec::line(6)};
    GraphSpec ring{5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}, {}};
    GraphSpec tailed{3, {{0, 1}, {1, 2}}, {true, false, true}};
    graphs.push_back(ring);
    graphs.push_back(tailed);
    for (const auto& g : graphs) {
        const auto psi = cluster_state(g);
        for (const auto& p : graph_stabilizers(g)) stab = std::max(stab, std::abs(pauli_expectation(psi, p) - 1.0));
    }
    const Vec plus0 = gates::cx() * kron(StateVector::uniform(HilbertSpec::qubits(1)).amplitudes(),
                                         StateVector::basis(HilbertSpec::qubits(1), std::size_t{0}).amplitudes());
    const double ebit = (make_ebit(2).amplitudes() - plus0).cwiseAbs().maxCoeff();
    const bool ok = worst <= 1e-10 && stab <= 1e-10 && ebit <= 1e-15;
    return {11, "matrix product states", ok, std::max(worst, stab), 1e-10,
            "prepare infidelity " + fmt(worst) + ", stabilizer deviation " + fmt(stab) + ", ebit deviation " +
                fmt(ebit)};
}

CriterionResult trotter_check(Rng& rng) {
    double lo = 1e9, hi = 0.0;
    for (int s = 0; s < 3; ++s) {
        const HilbertSpec spec = HilbertSpec::qubits(3);
        std::vector<HamiltonianTerm> terms;
        for (int k = 0; k < 3; ++k) terms.push_back({{k, (k + 1) % 3}, random_hermitian(4, rng), 1.0});
        const TermSum ts(spec, terms);
        const Mat exact = exact_evolve(ts, 1.0).matrix();
        const double e1 = spectral_norm(trotter_evolve(ts, 1.0, 32).matrix() - exact);
        const double e2 = spectral_norm(trotter_evolve(ts, 1.0, 64).matrix() - exact);
        lo = std::min(lo, e1 / e2);
        hi = std::max(hi, e1 / e2);
    }
    const bool ok = lo >= 1.7 && hi <= 2.3;
    return {12, "Trotter error halving", ok, std::abs(hi - 2.0) > std::abs(lo - 2.0) ? hi : lo, 2.3,
            "ratios in [" + fmt(lo) + ", " + fmt(hi) + "], accepted [1.7, 2.3]"};
}

} // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
    Rng rng(seed + static_cast<std::uint64_t>(id));
    try {
        switch (id) {
        case 1:
            return interference_table();
        case 2:
            return additivity(rng);
        case 3:
            return vdn(rng);
        case 4:
            return log_coherence_additivity(rng);
        case 5:
            return wigner_checks(rng);
        case 6:
            return contextual(rng);
        case 7:
            return btt_check(rng);
        case 8:
            return pmqc_check(rng);
        case 9:
            return hqca_check(rng);
        case 10:
            return walk_checks(rng);
        case 11:
            return mps_checks(rng);
        case 12:
            return trotter_check(rng);
        }
    } catch (const std::exception& e) {
        return {id, "criterion " + std::to_string(id), false, 0.0, 0.0, std::string("exception: ") + e.what()};
    }
    throw InvariantError("no acceptance criterion " + std::to_string(id));
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, seed));
    return out;
}

} // namespace uqres
