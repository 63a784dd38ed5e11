#include <doctest.h>

#include "oracles.hpp"
#include "uqres/circuits.hpp"

using namespace uqres;

namespace {

StateVector with_zero_ancilla(const StateVector& psi, int extra) {
    Vec v = psi.amplitudes();
    for (int k = 0; k < extra; ++k) v = kron(v, StateVector::basis(HilbertSpec::qubits(1), std::size_t{0}).amplitudes());
    return StateVector(HilbertSpec::qubits(psi.spec().size() + extra), v);
}

} // namespace

TEST_CASE("validation rejects malformed circuits") {
    Circuit bad_wire(HilbertSpec::qubits(2));
    bad_wire.gate("H", {2});
    CHECK_THROWS_AS(bad_wire.validate(), InvariantError);

    Circuit dup(HilbertSpec::qubits(2));
    dup.gate("CX", {1, 1});
    CHECK_THROWS_AS(dup.validate(), InvariantError);

    Circuit unknown(HilbertSpec::qubits(2));
    unknown.cond({{"m", 1}}, GateOp{gates::x(), {0}, "X"});
    CHECK_THROWS_AS(unknown.validate(), InvariantError);

    Circuit reused(HilbertSpec::qubits(2));
    reused.measure(0, Basis::Z, "m").measure(1, Basis::Z, "m");
    CHECK_THROWS_AS(reused.validate(), InvariantError);

    Circuit after_discard(HilbertSpec::qubits(2));
    after_discard.discard(0).gate("H", {0});
    CHECK_THROWS_AS(after_discard.validate(), InvariantError);

    Circuit nonunitary(HilbertSpec::qubits(1));
    nonunitary.gate(Mat::Ones(2, 2), {0});
    CHECK_THROWS_AS(nonunitary.validate(), InvariantError);

    Circuit y_qutrit(HilbertSpec({3}));
    y_qutrit.measure(0, Basis::Y, "m");
    CHECK_THROWS_AS(simulate(y_qutrit, StateVector::basis(y_qutrit.wires(), std::size_t{0})), InvariantError);
}

TEST_CASE("measurement branches follow the Born rule") {
    Rng rng(1);
    const auto psi = random_state(HilbertSpec::qubits(1), rng);
    Circuit c(HilbertSpec::qubits(1));
    c.measure(0, Basis::X, "m");
    const auto branches = simulate(c, psi);
    REQUIRE(branches.size() == 2);
    const Vec plus = gates::h().col(0);
    double total = 0.0;
    for (const auto& b : branches) {
        total += b.probability;
        if (b.outcomes.at("m") == 0) CHECK(b.probability == doctest::Approx(std::norm(plus.dot(psi.amplitudes()))));
    }
    CHECK(total == doctest::Approx(1.0));
    CHECK(postselect(branches, "m", 1).size() == 1);
}

TEST_CASE("H teleportation is deterministic and realises H") {
    Rng rng(2);
    const Circuit c = h_teleportation_circuit();
    std::vector<StateVector> inputs;
    for (int k = 0; k < 5; ++k) inputs.push_back(with_zero_ancilla(random_state(HilbertSpec::qubits(1), rng), 1));
    const auto det = is_deterministic(c, inputs);
    CHECK(det.deterministic);
    CHECK(det.max_infidelity < 1e-9);
    for (const auto& in : inputs) {
        // Input amplitudes sit at even indices with the ancilla in |0>.
        Vec psi(2);
        psi << in.amplitudes()(0), in.amplitudes()(2);
        for (const auto& b : simulate(c, in))
            CHECK(oracle::global_phase_fidelity(b.pure->amplitudes(), gates::h() * psi) > 1 - 1e-10);
    }
    CHECK(choi_fidelity(average_channel_choi(c, {0}), gates::h()) > 1 - 1e-9);
    CHECK(c.live_wires() == std::vector<int>{1});
}

TEST_CASE("T injection and its keyed form") {
    Rng rng(3);
    const Circuit c = t_injection_circuit();
    CHECK(choi_fidelity(average_channel_choi(c, {0}), gates::t()) > 1 - 1e-9);
    for (int k = 0; k < 4; ++k) {
        const auto psi = random_state(HilbertSpec::qubits(1), rng);
        for (const auto& b : simulate(c, with_zero_ancilla(psi, 1))) {
            REQUIRE(b.is_pure());
            CHECK(oracle::global_phase_fidelity(b.pure->amplitudes(), gates::t() * psi.amplitudes()) > 1 - 1e-10);
        }
    }
    // An input encrypted with X^a Z^b leaves as X^a Z^b T |psi>.
    const auto psi = random_state(HilbertSpec::qubits(1), rng);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            Mat key = Mat::Identity(2, 2);
            if (a) key = gates::x() * key;
            if (b) key = key * gates::z();
            const StateVector enc(psi.spec(), key * psi.amplitudes());
            for (const auto& br : simulate(t_injection_circuit(a), with_zero_ancilla(enc, 1)))
                CHECK(oracle::global_phase_fidelity(br.pure->amplitudes(), key * gates::t() * psi.amplitudes()) >
                      1 - 1e-10);
        }
}

TEST_CASE("contextual H through a controlled-unitary sandwich") {
    Rng rng(4);
    const Circuit c = contextual_h_circuit();
    std::vector<StateVector> inputs;
    for (int k = 0; k < 5; ++k) {
        const auto psi = random_state(HilbertSpec::qubits(1), rng);
        const Vec v = kron(StateVector::basis(HilbertSpec::qubits(1), std::size_t{0}).amplitudes(), psi.amplitudes());
        inputs.emplace_back(HilbertSpec::qubits(2), v);
    }
    CHECK(is_deterministic(c, inputs).deterministic);
    CHECK(choi_fidelity(average_channel_choi(c, {1}), gates::h()) > 1 - 1e-9);
}

TEST_CASE("free circuits keep basis states as basis states") {
    Circuit c(HilbertSpec::qubits(3));
    c.gate("X", {0}).gate("CX", {0, 1}).gate(gates::phase(0.3), {2}, "P").measure(1, Basis::Z, "m");
    c.cond({{"m", 1}}, GateOp{gates::x(), {2}, "X"}).gate("SWAP", {0, 2}).gate("CCX", {0, 1, 2});
    CHECK(free_circuit_check(c));
    for (std::size_t i = 0; i < 8; ++i)
        for (const auto& b : simulate(c, StateVector::basis(c.wires(), i)))
            CHECK(b.pure->amplitudes().cwiseAbs2().maxCoeff() == doctest::Approx(1.0));

    Circuit coherent(HilbertSpec::qubits(1));
    coherent.gate("H", {0});
    CHECK_FALSE(free_circuit_check(coherent));
    Circuit xmeas(HilbertSpec::qubits(1));
    xmeas.measure(0, Basis::X, "m");
    CHECK_FALSE(free_circuit_check(xmeas));
}

TEST_CASE("discarding an entangled wire leaves a mixed branch") {
    Circuit c(HilbertSpec::qubits(2));
    c.gate("H", {0}).gate("CX", {0, 1}).discard(0);
    const auto b = simulate(c, StateVector::basis(c.wires(), std::size_t{0}));
    REQUIRE(b.size() == 1);
    CHECK_FALSE(b[0].is_pure());
    CHECK((b[0].density() - Mat::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_FALSE(is_deterministic(b).deterministic);
}

TEST_CASE("a single post-selected branch counts as deterministic") {
    Circuit c(HilbertSpec::qubits(2));
    c.gate("H", {0}).gate("CX", {0, 1}).measure(0, Basis::Z, "c").discard(0);
    const auto kept = postselect(simulate(c, StateVector::basis(c.wires(), std::size_t{0})), "c", 0);
    REQUIRE(kept.size() == 1);
    CHECK(is_deterministic(kept).deterministic);
}

TEST_CASE("branch explosion hits the cap") {
    Circuit c(HilbertSpec::qubits(1));
    for (int k = 0; k < 17; ++k) c.measure(0, k % 2 ? Basis::Z : Basis::X, "m" + std::to_string(k));
    CHECK_THROWS_AS(simulate(c, StateVector::basis(c.wires(), std::size_t{0})), CapError);
}

TEST_CASE("circuit unitary composes gates and multiplexers in order") {
    Circuit c(HilbertSpec::qubits(2));
    c.gate("H", {0}).mux(0, {gates::identity(2), gates::x()}, {1});
    CHECK((circuit_unitary(c) - gates::cx() * kron(gates::h(), gates::identity(2))).cwiseAbs().maxCoeff() < 1e-15);
    c.measure(0, Basis::Z, "m");
    CHECK_THROWS_AS(circuit_unitary(c), InvariantError);
}

TEST_CASE("qudit X-basis measurement uses the Fourier basis") {
    const Mat b = basis_unitary(Basis::X, 3);
    CHECK((b - gates::fourier(3)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((basis_unitary(Basis::Y, 2) - gates::s() * gates::h()).cwiseAbs().maxCoeff() < 1e-15);
}
