#include <doctest.h>

#include "uqres/io.hpp"

using namespace uqres;
using io::json;

TEST_CASE("complex numbers and matrices") {
    CHECK(io::complex_from_json(json(2.5)) == cplx(2.5, 0));
    CHECK(io::complex_from_json(json::array({1, -2})) == cplx(1, -2));
    CHECK_THROWS_AS(io::complex_from_json(json::array({1, 2, 3})), ParseError);
    CHECK_THROWS_AS(io::complex_from_json(json("x")), ParseError);

    Rng rng(1);
    const Mat m = random_unitary(3, rng);
    CHECK((io::matrix_from_json(io::to_json(m)) - m).cwiseAbs().maxCoeff() == 0.0);
    CHECK((io::matrix_from_json(io::parse("[[1, 0], [0, -1]]")) - gates::z()).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(io::matrix_from_json(io::parse("[[1, 0], [0]]")), ParseError);
    CHECK_THROWS_AS(io::matrix_from_json(io::parse("[]")), ParseError);
    CHECK_THROWS_AS(io::vector_from_json(io::parse("{}")), ParseError);
    CHECK_THROWS_AS(io::parse("{not json"), ParseError);
    CHECK_THROWS_AS(io::read_file("/nonexistent/file.json"), ParseError);
}

TEST_CASE("states and densities round trip") {
    Rng rng(2);
    const auto psi = random_state(HilbertSpec({2, 3}), rng);
    const auto back = io::state_from_json(io::to_json(psi));
    CHECK(back.spec() == psi.spec());
    CHECK((back.amplitudes() - psi.amplitudes()).norm() == 0.0);

    const auto rho = random_density(HilbertSpec({3}), rng);
    CHECK((io::density_from_json(io::to_json(rho)).matrix() - rho.matrix()).cwiseAbs().maxCoeff() == 0.0);
    // A pure-state document is accepted where a density is expected.
    CHECK(io::density_from_json(io::to_json(psi)).purity() == doctest::Approx(1.0));

    CHECK_THROWS_AS(io::state_from_json(io::parse(R"({"amplitudes": [1, 0]})")), ParseError);
    CHECK_THROWS_AS(io::state_from_json(io::parse(R"({"dims": [2], "amplitudes": [1, 1]})")), InvariantError);
    CHECK_THROWS_AS(io::state_from_json(io::parse(R"({"dims": [2], "amplitudes": [1, 0, 0]})")), Error);
    CHECK_THROWS_AS(io::state_from_json(io::parse(R"({"dims": [64, 128], "amplitudes": [1]})")), CapError);
}

TEST_CASE("circuits round trip") {
    Circuit c(HilbertSpec({2, 2, 3}));
    c.gate("H", {0});
    c.gate(gates::fourier(3), {2}, "F3");
    c.mux(0, {gates::identity(2), gates::x()}, {1});
    c.measure(0, Basis::X, "m");
    c.cond({{"m", 1}}, GateOp{gates::z(), {1}, "Z"});
    c.discard(0);
    const json j = io::to_json(c);
    const Circuit back = io::circuit_from_json(j);
    CHECK(io::to_json(back) == j);
    CHECK(back.ops().size() == 6);
    CHECK_NOTHROW(back.validate());

    CHECK_THROWS_AS(io::circuit_from_json(io::parse(R"({"wires": [2], "ops": [{"type": "warp"}]})")), ParseError);
    CHECK_THROWS_AS(io::circuit_from_json(io::parse(R"({"wires": [2], "ops": [{"type": "gate", "name": "frob", "wires": [0]}]})")),
                    ParseError);
    CHECK_THROWS_AS(
        io::circuit_from_json(io::parse(R"({"wires": [2], "ops": [{"type": "measure", "wire": 0, "basis": "Q", "out": "a"}]})")),
        ParseError);
    CHECK_THROWS_AS(io::circuit_from_json(io::parse(R"({"wires": [2], "ops": {}})")), ParseError);
}

TEST_CASE("chains, term sums and programs round trip") {
    Rng rng(3);
    const auto chain = MPSChain::random(3, 2, 2, rng);
    const auto chain_back = io::mps_from_json(io::to_json(chain));
    CHECK(fidelity(contract(chain_back), contract(chain)) > 1 - 1e-14);

    const TermSum ts(HilbertSpec::qubits(2), {{{0, 1}, gates::cz(), 0.5}, {{1}, gates::x(), -1.0}});
    const auto ts_back = io::termsum_from_json(io::to_json(ts));
    CHECK((assemble(ts_back) - assemble(ts)).cwiseAbs().maxCoeff() == 0.0);
    const auto named = io::termsum_from_json(io::parse(R"({"dims": [2], "terms": [{"sites": [0], "name": "Z", "weight": 2}]})"));
    CHECK((assemble(named) - 2.0 * gates::z()).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(io::termsum_from_json(io::parse(R"({"dims": [2], "terms": [{"sites": [0], "name": "Z", "weight": "a"}]})")),
                    ParseError);

    const auto prog = PmqcProgram::random(2, rng);
    const auto prog_back = io::pmqc_from_json(io::to_json(prog));
    CHECK((prog_back.unitary() - prog.unitary()).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(io::pmqc_from_json(io::parse(R"({"qubits": 1, "pre": [["X"]], "post": [[]]})")), ParseError);
    CHECK_THROWS_AS(io::pmqc_from_json(io::parse(R"({"qubits": 2, "pre": [[], []], "post": [[], []], "cz": 1})")), ParseError);
}

TEST_CASE("transcripts serialise one event per line") {
    Transcript t;
    t.add("A", "local-op");
    t.add("A", "broadcast", {{"alpha", "1"}});
    const auto lines = io::transcript_lines(t);
    CHECK(std::count(lines.begin(), lines.end(), '\n') == 2);
    const json first = io::parse(lines.substr(0, lines.find('\n')));
    CHECK(first.at("party") == "A");
    CHECK(io::to_json(t).size() == 2);
}
