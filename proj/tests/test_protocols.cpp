#include <doctest.h>

#include "oracles.hpp"
#include "uqres/protocols.hpp"

using namespace uqres;

TEST_CASE("one-time pad round trip and Pauli twirl") {
    Rng rng(1);
    const auto psi = random_state(HilbertSpec::qubits(2), rng);
    for (int k = 0; k < 16; ++k) {
        const std::vector<PauliKey> keys{{k & 1, (k >> 1) & 1}, {(k >> 2) & 1, (k >> 3) & 1}};
        CHECK(fidelity(pauli_decrypt(pauli_encrypt(psi, keys), keys), psi) > 1 - 1e-12);
    }
    // Averaging over all keys of one qubit gives the maximally mixed state.
    const auto one = random_state(HilbertSpec::qubits(1), rng);
    Mat avg = Mat::Zero(2, 2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const Vec v = pauli_encrypt(one, PauliKey{a, b}).amplitudes();
            avg += 0.25 * v * v.adjoint();
        }
    CHECK((avg - Mat::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THROWS_AS(pauli_encrypt(psi, std::vector<PauliKey>{{1, 0}}), InvariantError);
}

TEST_CASE("PR boxes satisfy a xor b = xy and are single use") {
    for (int h = 0; h < 2; ++h)
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) {
                PRBox box(0, h);
                const auto [a, b] = box.call(x, y);
                CHECK((a ^ b) == (x & y));
                CHECK(box.consumed());
                CHECK_THROWS_AS(box.call(x, y), ResourceError);
            }
    CHECK(chsh_win_rate() == 1.0);
    Rng rng(2);
    const auto s = chsh_sample(4000, rng);
    CHECK(s.win_rate == 1.0);
    // Each party alone sees a fair coin.
    CHECK(std::abs(s.a_ones - 0.5) < 0.05);
    CHECK(std::abs(s.b_ones - 0.5) < 0.05);
}

TEST_CASE("transcript validation") {
    Transcript ok;
    ok.add("A", "local-op");
    ok.add("B", "measure");
    ok.add("A", "broadcast", {{"alpha", "1"}});
    CHECK(validate_lobc(ok).ok);
    CHECK(ok.count("broadcast") == 1);
    CHECK(ok.events()[2].t == 2);

    Transcript directed = ok;
    directed.add("B", "message", {{"bit", "0"}});
    const auto r = validate_lobc(directed);
    CHECK_FALSE(r.ok);
    CHECK(r.directed_messages == 1);

    Transcript two = ok;
    two.add("B", "broadcast");
    CHECK_FALSE(validate_lobc(two).ok);
}

TEST_CASE("resource pool accounting") {
    ResourcePool pool{1, 1};
    pool.take_ebit();
    pool.take_box();
    CHECK(pool.ebits_used == 1);
    CHECK_THROWS_AS(pool.take_ebit(), ResourceError);
    CHECK_THROWS_AS(pool.take_box(), ResourceError);
}

TEST_CASE("T teleportation through an ebit and a PR box") {
    Rng rng(3);
    for (int s = 0; s < 10; ++s) {
        const auto psi = random_state(HilbertSpec::qubits(1), rng);
        const Vec target = gates::t() * psi.amplitudes();
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                const PauliKey key{a, b};
                const auto all = btt_all_branches(pauli_encrypt(psi, key), key);
                double total = 0.0;
                for (const auto& r : all) {
                    CHECK(oracle::global_phase_fidelity(pauli_decrypt(r.output, r.new_key).amplitudes(), target) >
                          1 - 1e-10);
                    CHECK(r.new_key.a == a);
                    const auto lobc = validate_lobc(r.transcript);
                    CHECK(lobc.ok);
                    CHECK(lobc.directed_messages == 0);
                    CHECK(lobc.broadcasts == 1);
                    total += r.probability;
                }
                // Branch probabilities sum to one for each hidden bit.
                CHECK(total == doctest::Approx(2.0));
            }
    }
    ResourcePool empty{0, 0};
    const auto psi = random_state(HilbertSpec::qubits(1), rng);
    CHECK_THROWS_AS(btt(psi, PauliKey{}, empty, rng), ResourceError);
}

TEST_CASE("A's view in T teleportation does not depend on the key") {
    Rng rng(4);
    const auto psi = random_state(HilbertSpec::qubits(1), rng);
    const BttBranch fixed{0, 0, 0};
    std::vector<Mat> avg;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            ResourcePool pool{1, 1};
            const auto r = btt(pauli_encrypt(psi, PauliKey{a, b}), PauliKey{a, b}, pool, rng, fixed);
            if (avg.empty()) avg.assign(r.a_views.size(), Mat::Zero(2, 2));
            for (std::size_t k = 0; k < r.a_views.size(); ++k) avg[k] += 0.25 * r.a_views[k];
        }
    for (const auto& v : avg) CHECK((v - Mat::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("blind gate sequences decrypt to the plain circuit") {
    Rng rng(5);
    for (int s = 0; s < 12; ++s) {
        const int q = 1 + s % 2;
        const auto prog = PmqcProgram::random(q, rng);
        CHECK(prog.physical_qubits() <= kPmqcMaxQubits);
        const auto plain = random_state(HilbertSpec::qubits(q), rng);
        std::vector<PauliKey> keys;
        for (int k = 0; k < q; ++k) keys.push_back({s & 1, (s >> 1) & 1});
        ResourcePool pool{prog.t_count(), prog.t_count()};
        OutcomeSource src(rng);
        const auto r = pmqc_run(prog, pauli_encrypt(plain, keys), keys, pool, src);
        CHECK(oracle::global_phase_fidelity(pauli_decrypt(r.output, r.keys).amplitudes(),
                                            prog.unitary() * plain.amplitudes()) > 1 - 1e-9);
        CHECK(r.t_events == prog.t_count());
        CHECK(r.ebits_used == r.t_events);
        CHECK(r.boxes_used == r.t_events);
        CHECK(validate_lobc(r.transcript).directed_messages == 0);
    }
}

TEST_CASE("blind gate sequences check resources before running") {
    Rng rng(6);
    PmqcProgram p;
    p.qubits = 1;
    p.pre = {{LogicalGate::T, LogicalGate::H, LogicalGate::T}};
    p.post = {{}};
    const auto plain = random_state(HilbertSpec::qubits(1), rng);
    const std::vector<PauliKey> keys{{0, 0}};
    ResourcePool short_boxes{2, 1};
    OutcomeSource src(rng);
    CHECK_THROWS_AS(pmqc_run(p, plain, keys, short_boxes, src), ResourceError);
    CHECK(short_boxes.ebits_used == 0);

    PmqcProgram big;
    big.qubits = 2;
    big.pre = {std::vector<LogicalGate>(4, LogicalGate::T), std::vector<LogicalGate>(4, LogicalGate::T)};
    big.post = {{}, {}};
    ResourcePool plenty{10, 10};
    CHECK(big.physical_qubits() == 18);
    const auto plain2 = random_state(HilbertSpec::qubits(2), rng);
    CHECK_THROWS_AS(pmqc_run(big, plain2, {{0, 0}, {0, 0}}, plenty, src), CapError);

    PmqcProgram long_row;
    long_row.qubits = 1;
    long_row.pre = {std::vector<LogicalGate>(5, LogicalGate::H)};
    long_row.post = {{}};
    CHECK_THROWS_AS(long_row.validate(), InvariantError);

    PmqcProgram cz_one;
    cz_one.qubits = 1;
    cz_one.pre = {{}};
    cz_one.post = {{}};
    cz_one.cz = true;
    CHECK_THROWS_AS(cz_one.validate(), InvariantError);
}

TEST_CASE("forced outcomes replay a run exactly") {
    Rng rng(7);
    const auto prog = PmqcProgram::random(2, rng);
    const auto plain = random_state(HilbertSpec::qubits(2), rng);
    const std::vector<PauliKey> keys{{1, 0}, {0, 1}};
    ResourcePool p1{prog.t_count(), prog.t_count()};
    OutcomeSource sampled(rng);
    const auto first = pmqc_run(prog, pauli_encrypt(plain, keys), keys, p1, sampled);
    ResourcePool p2{prog.t_count(), prog.t_count()};
    OutcomeSource forced(sampled.history());
    const auto second = pmqc_run(prog, pauli_encrypt(plain, keys), keys, p2, forced);
    CHECK(first.keys == second.keys);
    CHECK(first.outcomes == second.outcomes);
    CHECK(fidelity(first.output, second.output) > 1 - 1e-12);
}

TEST_CASE("the server's averaged view is maximally mixed") {
    Rng rng(8);
    for (int s = 0; s < 4; ++s) {
        const int q = 1 + s % 2;
        const auto prog = PmqcProgram::random(q, rng);
        CHECK(pmqc_privacy_deviation(prog, random_state(HilbertSpec::qubits(q), rng), rng) < 1e-9);
    }
}

TEST_CASE("measurement-based rotations need adaptive angles") {
    Rng rng(9);
    const std::vector<double> angles{0.3, 0.7, 1.1};
    const auto psi = random_state(HilbertSpec::qubits(1), rng);
    const Vec target = mbqc_target(angles) * psi.amplitudes();
    const auto adaptive = mbqc_gate(psi, angles, true);
    CHECK(adaptive.size() == 8);
    for (const auto& b : adaptive) CHECK(fidelity(StateVector(psi.spec(), target), DensityOperator(b.spec(), b.density())) > 1 - 1e-10);
    CHECK(is_deterministic(adaptive).deterministic);
    CHECK_FALSE(is_deterministic(mbqc_gate(psi, angles, false)).deterministic);
    // Zero angles realise plain Hadamards.
    const auto h3 = mbqc_target({0.0, 0.0, 0.0});
    CHECK(std::abs(std::abs((h3.adjoint() * gates::h()).trace()) - 2.0) < 1e-12);
    CHECK_THROWS_AS(mbqc_circuit({}), InvariantError);
}
