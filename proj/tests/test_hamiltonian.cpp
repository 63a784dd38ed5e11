#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "uqres/hamiltonian.hpp"

using namespace uqres;

namespace {

TermSum random_terms(int qubits, Rng& rng) {
    std::vector<HamiltonianTerm> terms;
    for (int k = 0; k < qubits; ++k) terms.push_back({{k, (k + 1) % qubits}, random_hermitian(4, rng), 0.5 + k});
    return TermSum(HilbertSpec::qubits(qubits), terms);
}

} // namespace

TEST_CASE("stoquasticity") {
    CHECK(is_stoquastic(Mat(-gates::x())));
    CHECK_FALSE(is_stoquastic(gates::x()));
    CHECK_FALSE(is_stoquastic(gates::y()));
    CHECK(is_stoquastic(gates::z()));
    // X is stoquastic in the Hadamard basis, where it becomes Z.
    CHECK(is_stoquastic(gates::x(), gates::h()));
    CHECK_THROWS_AS(is_stoquastic(Mat::Ones(2, 3)), InvariantError);
    Mat nonherm(2, 2);
    nonherm << 0, 1, 0, 0;
    CHECK_THROWS_AS(is_stoquastic(nonherm), InvariantError);
    CHECK_THROWS_AS(is_stoquastic(gates::x(), Mat::Ones(2, 2)), InvariantError);

    // Conjugating both the Hamiltonian and the basis leaves the verdict unchanged.
    Rng rng(1);
    for (int k = 0; k < 10; ++k) {
        const Mat h = random_hermitian(4, rng);
        const Mat b = random_unitary(4, rng);
        const Mat w = random_unitary(4, rng);
        CHECK(is_stoquastic(h, b) == is_stoquastic(Mat(w * h * w.adjoint()), Mat(w * b)));
    }

    const TermSum ising(HilbertSpec::qubits(2), {{{0, 1}, gates::cz(), 1.0}, {{0}, Mat(-gates::x()), 1.0}});
    CHECK(is_stoquastic(ising));
}

TEST_CASE("term sums validate supports") {
    CHECK_THROWS_AS(TermSum(HilbertSpec::qubits(2), {{{2}, gates::z(), 1.0}}), InvariantError);
    CHECK_THROWS_AS(TermSum(HilbertSpec::qubits(2), {{{0}, gates::cz(), 1.0}}), InvariantError);
    CHECK_THROWS_AS(TermSum(HilbertSpec::qubits(2), {{{0}, gates::s(), 1.0}}), InvariantError);
    const TermSum t(HilbertSpec::qubits(2), {{{1}, gates::z(), 2.0}});
    CHECK((assemble(t) - 2.0 * kron(gates::identity(2), gates::z())).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("exact evolution matches the matrix exponential") {
    Rng rng(2);
    const auto ts = random_terms(3, rng);
    CHECK((exact_evolve(ts, 0.7).matrix() - oracle::expm_i(assemble(ts), 0.7)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("first-order Trotter error halves when the step count doubles") {
    Rng rng(3);
    for (int s = 0; s < 3; ++s) {
        const auto ts = random_terms(3, rng);
        const Mat exact = oracle::expm_i(assemble(ts), 1.0);
        const double e1 = spectral_norm(trotter_evolve(ts, 1.0, 32).matrix() - exact);
        const double e2 = spectral_norm(trotter_evolve(ts, 1.0, 64).matrix() - exact);
        CHECK(e1 / e2 >= 1.7);
        CHECK(e1 / e2 <= 2.3);
    }
    // Commuting terms are exact at one step.
    const TermSum diag(HilbertSpec::qubits(2), {{{0}, gates::z(), 0.3}, {{0, 1}, gates::cz(), 1.1}});
    CHECK(spectral_norm(trotter_evolve(diag, 2.0, 1).matrix() - exact_evolve(diag, 2.0).matrix()) < 1e-12);
    CHECK_THROWS_AS(trotter_evolve(diag, 1.0, 0), InvariantError);
}

TEST_CASE("simulation error on the low-energy subspace") {
    Rng rng(4);
    const Mat h = random_hermitian(2, rng);
    Mat v = Mat::Zero(4, 2);
    v(0, 0) = v(1, 1) = 1.0;
    // Junk block far above the cutoff.
    Mat hp = Mat::Zero(4, 4);
    hp.topLeftCorner(2, 2) = h;
    hp(2, 2) = 50.0;
    hp(3, 3) = 60.0;
    CHECK(simulation_error(hp, h, v, 10.0) < 1e-12);

    Mat w = random_hermitian(4, rng);
    w /= spectral_norm(w);
    const Mat perturbed = v * h * v.adjoint() + 1e-3 * w;
    CHECK(simulation_error(perturbed, h, v, 1e6) <= 1e-3 + 1e-9);
    CHECK_THROWS_AS(simulation_error(hp, h, v, -1e6), InvariantError);
    CHECK_THROWS_AS(simulation_error(hp, h, Mat(2.0 * v), 10.0), InvariantError);
}

TEST_CASE("cellular-automaton local term") {
    const auto t = hqca_local_term();
    CHECK(t.h.rows() == 24);
    CHECK(is_hermitian(t.h));
    CHECK(is_unitary(t.u));
    CHECK((t.h * t.h - Mat::Identity(24, 24)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((exp_i_hermitian(t.h, std::numbers::pi / 2) - cplx(0, 1) * t.h).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((oracle::expm_i(t.h, std::numbers::pi / 2) - cplx(0, 1) * t.h).cwiseAbs().maxCoeff() < 1e-10);
    CHECK_THROWS_AS(hqca_gate(3), InvariantError);
}

TEST_CASE("brickwork runs match direct circuits") {
    Rng rng(5);
    CHECK(hqca_active_pairs(4, 0) == 2);
    CHECK(hqca_active_pairs(4, 1) == 1);
    CHECK(hqca_active_pairs(3, 1) == 1);
    std::uniform_int_distribution<int> prog(0, 2);
    for (int k = 0; k < 12; ++k) {
        const auto psi = random_state(HilbertSpec::qubits(4), rng);
        std::vector<HqcaLayer> layers{{prog(rng), prog(rng)}};
        if (k % 2) layers.push_back({prog(rng)});
        const auto r = hqca_run(layers, psi);
        Vec direct = psi.amplitudes();
        for (std::size_t l = 0; l < layers.size(); ++l)
            for (std::size_t p = 0; p < layers[l].size(); ++p) {
                const int i = static_cast<int>(l % 2 + 2 * p);
                direct = oracle::embed_by_indices(psi.spec(), hqca_gate(layers[l][p]), {i, i + 1}) * direct;
            }
        CHECK(oracle::global_phase_fidelity(direct, r.data.amplitudes()) > 1 - 1e-10);
        CHECK(r.side_condition > 1 - 1e-10);
    }
    const auto psi = random_state(HilbertSpec::qubits(4), rng);
    CHECK_THROWS_AS(hqca_run({{1}}, psi), InvariantError);
    CHECK_THROWS_AS(hqca_run({{1, 5}}, psi), InvariantError);
}

TEST_CASE("history states spread evenly over the clock") {
    Rng rng(6);
    for (int len = 0; len <= 8; ++len) {
        std::vector<Mat> circ;
        for (int k = 0; k < len; ++k) circ.push_back(random_unitary(4, rng));
        const auto psi = random_state(HilbertSpec::qubits(2), rng);
        const auto hs = history_state(circ, psi);
        const auto p = hs.clock_probabilities();
        CHECK(static_cast<int>(p.size()) == len + 1);
        for (double x : p) CHECK(std::abs(x - 1.0 / (len + 1)) < 1e-12);
        if (len > 0) {
            // The clock-L slice holds the circuit output.
            Vec last(4);
            for (int i = 0; i < 4; ++i) last(i) = hs.state.amplitudes()(i * (len + 1) + len);
            Vec out = psi.amplitudes();
            for (const auto& u : circ) out = u * out;
            CHECK(oracle::global_phase_fidelity(last, out) > 1 - 1e-12);
        }
    }
}

TEST_CASE("walk Hamiltonian") {
    const Mat h3 = walk_hamiltonian(3);
    Mat printed(4, 4);
    printed << 0.5, -0.5, 0, 0, -0.5, 1, -0.5, 0, 0, -0.5, 1, -0.5, 0, 0, -0.5, 0.5;
    CHECK((h3 - printed).cwiseAbs().maxCoeff() == 0.0);
    for (int len = 1; len <= 10; ++len) {
        const Mat h = walk_hamiltonian(len);
        const Vec u = Vec::Constant(len + 1, 1.0 / std::sqrt(len + 1.0));
        CHECK((h * u).norm() < 1e-12);
        const RVec ev = hermitian_eigenvalues(h);
        CHECK(std::abs(ev(1) - ev(0) - oracle::walk_gap(len)) < 1e-9);
        CHECK(is_stoquastic(h));
    }
    CHECK_THROWS_AS(walk_hamiltonian(0), InvariantError);
}

TEST_CASE("adiabatic gap scans") {
    const auto [hz, hx] = z_to_x_preset();
    const auto scan = adiabatic_gap_scan(hz, hx, 101);
    CHECK(scan.size() == 101);
    GapPoint low{0, 1e9};
    for (const auto& p : scan) {
        // Closed form sqrt2 * sqrt((1-s)^2 + s^2).
        CHECK(std::abs(p.gap - std::sqrt(2.0) * std::hypot(1 - p.s, p.s)) < 1e-12);
        if (p.gap < low.gap) low = p;
    }
    CHECK(low.gap == doctest::Approx(1.0));
    CHECK(low.s == doctest::Approx(0.5));

    // The literal form walks the same path with its endpoints swapped.
    CHECK((interpolate_literal(hz, hx, 0.3) - interpolate(hx, hz, 0.3)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((interpolate_literal(hz, hx, 0.3) - interpolate(hz, hx, 0.7)).cwiseAbs().maxCoeff() < 1e-15);

    const auto [start, end] = clock_walk_preset(4);
    for (const auto& p : adiabatic_gap_scan(start, end, 21)) CHECK(p.gap > 0.0);
    CHECK_THROWS_AS(adiabatic_gap_scan(hz, hx, 1), InvariantError);
    CHECK_THROWS_AS(interpolate(hz, walk_hamiltonian(3), 0.5), InvariantError);
}
