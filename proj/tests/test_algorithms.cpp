#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "uqres/algorithms.hpp"
#include "uqres/measures.hpp"

using namespace uqres;

TEST_CASE("sandwiched interference agrees with the full matrix") {
    Rng rng(1);
    for (int k = 0; k < 20; ++k) {
        const int c = 2 + k % 2;
        const int t = 2 + (k / 2) % 2;
        const auto cu = Multiplexer::random(c, t, rng);
        const Mat v = random_unitary(c, rng);
        const Mat w = random_unitary(c, rng);
        const Mat eye = Mat::Identity(t, t);
        const Mat full = kron(v, eye) * cu.matrix() * kron(w, eye);
        CHECK(std::abs(sandwiched_interference(v, cu, w) - interference_power(full)) < 1e-10);
    }
}

TEST_CASE("sandwich with identities averages the branches") {
    Rng rng(2);
    const auto cu = Multiplexer::random(3, 2, rng);
    double avg = 0.0;
    for (const auto& b : cu.branches()) avg += interference_power(b) / 3.0;
    const Mat i3 = Mat::Identity(3, 3);
    CHECK(std::abs(sandwiched_interference(i3, cu, i3) - avg) < 1e-10);
    // A classical multiplexer between Hadamards reduces to I(H W).
    const Multiplexer cx({gates::identity(2), gates::x()});
    const double expected = interference_power(Mat(kron(Mat(gates::h() * gates::h()), gates::identity(2))));
    CHECK(std::abs(sandwiched_interference(gates::identity(2), cx, gates::identity(2)) - expected) < 1e-12);
    CHECK_THROWS_AS(sandwiched_interference(i3, Multiplexer::random(2, 2, rng), i3), InvariantError);
}

TEST_CASE("V_eps") {
    for (double eps : {0.01, 0.3, 0.9}) {
        const Mat v = v_epsilon(eps);
        CHECK(is_unitary(v));
        CHECK(std::norm(v(1, 0)) == doctest::Approx(eps));
    }
    CHECK_THROWS_AS(v_epsilon(0.0), InvariantError);
    CHECK_THROWS_AS(v_epsilon(1.0), InvariantError);
    CHECK_THROWS_AS(v_epsilon(-0.2), InvariantError);
}

TEST_CASE("one-clean-qubit construction") {
    Rng rng(3);
    const UnitaryOp u = random_unitary(HilbertSpec::qubits(2), rng);
    const auto [circ, state] = vdn_build(u, 0.2);
    CHECK(circ.wires().size() == 3);
    // Output: sqrt(0.8)|0>|00> + sqrt(0.2)|1> U|00>.
    Vec expected = Vec::Zero(8);
    expected(0) = std::sqrt(0.8);
    expected.tail(4) = std::sqrt(0.2) * u.matrix().col(0);
    CHECK((state.amplitudes() - expected).norm() < 1e-12);
}

TEST_CASE("interference of the construction splits into V_eps and half of U") {
    Rng rng(4);
    for (int k = 0; k < 30; ++k) {
        const int n = 1 + k % 3;
        const double eps = 0.05 + 0.9 * std::uniform_real_distribution<double>()(rng);
        const auto d = vdn_interference_decomposition(random_unitary(HilbertSpec::qubits(n), rng), eps);
        CHECK(d.residual < 1e-9);
        CHECK(std::abs(d.i_v - binary_entropy(eps)) < 1e-12);
    }
    const auto hh = vdn_interference_decomposition(UnitaryOp(HilbertSpec::qubits(2), kron(gates::h(), gates::h())), 0.5);
    CHECK(hh.i_u == doctest::Approx(2.0));
    CHECK(hh.i_v == doctest::Approx(1.0));
}

TEST_CASE("linear combination of unitaries") {
    const auto q1 = HilbertSpec::qubits(1);
    const auto zero = StateVector::basis(q1, std::size_t{0});
    const auto r = lcu_apply({1.0, 1.0}, {UnitaryOp(q1, gates::x()), UnitaryOp(q1, gates::z())}, zero);
    CHECK(r.success_probability == doctest::Approx(0.5));
    CHECK(std::abs(r.state.amplitudes()(0)) == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK_THROWS_AS(lcu_apply({1.0, -1.0}, {UnitaryOp(q1, gates::identity(2)), UnitaryOp(q1, gates::identity(2))}, zero),
                    InvariantError);
    CHECK_THROWS_AS(lcu_apply({1.0}, {}, zero), InvariantError);

    Rng rng(5);
    for (int k = 0; k < 20; ++k) {
        const int m = 1 + k % 4;
        const auto spec = HilbertSpec::qubits(1 + k % 2);
        std::vector<cplx> c;
        std::vector<UnitaryOp> us;
        std::normal_distribution<double> g;
        for (int i = 0; i < m; ++i) {
            c.emplace_back(g(rng), g(rng));
            us.push_back(random_unitary(spec, rng));
        }
        const auto psi = random_state(spec, rng);
        Vec direct = Vec::Zero(static_cast<Eigen::Index>(psi.dim()));
        double l1 = 0.0;
        for (int i = 0; i < m; ++i) {
            direct += c[i] * (us[i].matrix() * psi.amplitudes());
            l1 += std::abs(c[i]);
        }
        const auto out = lcu_apply(c, us, psi);
        CHECK(oracle::global_phase_fidelity(out.state.amplitudes(), direct.normalized()) > 1 - 1e-10);
        CHECK(std::abs(out.success_probability - direct.squaredNorm() / (l1 * l1)) < 1e-10);
    }
}

TEST_CASE("Grover iterations follow sin^2((2k+1) theta)") {
    for (int n = 1; n <= 6; ++n) {
        const int big_n = 1 << n;
        const double theta = std::asin(std::sqrt(1.0 / big_n));
        const auto trace = grover_trace(n, big_n - 1, 20);
        CHECK(trace.size() == 21);
        for (const auto& s : trace) {
            const double closed = std::pow(std::sin((2 * s.iteration + 1) * theta), 2);
            CHECK(std::abs(s.success_probability - closed) < 1e-10);
            CHECK(std::abs(s.closed_form - closed) < 1e-12);
            // The state stays in the plane of |m> and the unmarked uniform state.
            CHECK(std::abs(s.rotated_coherence - binary_entropy(s.success_probability)) < 1e-9);
            CHECK(s.coherence <= n + 1e-9);
        }
    }
    CHECK(grover_trace(3, 0, 0).front().coherence == doctest::Approx(3.0));
    CHECK_THROWS_AS(grover_trace(7, 0, 1), InvariantError);
    CHECK_THROWS_AS(grover_trace(2, 4, 1), InvariantError);
}

TEST_CASE("Grover coherence matches a density-matrix oracle") {
    const int n = 3;
    const auto trace = grover_trace(n, 2, 3);
    const Mat h = kron(kron(gates::h(), gates::h()), gates::h());
    Vec psi = Vec::Constant(8, 1 / std::sqrt(8.0));
    Mat oracle_op = Mat::Identity(8, 8);
    oracle_op(2, 2) = -1;
    Mat reflect = -Mat::Identity(8, 8);
    reflect(0, 0) = 1;
    const Mat diffusion = h * reflect * h;
    for (const auto& s : trace) {
        CHECK(std::abs(s.coherence - oracle::rel_ent_coherence(Mat(psi * psi.adjoint()))) < 1e-9);
        psi = diffusion * oracle_op * psi;
    }
}

TEST_CASE("reports reject bad residuals") {
    AlgorithmReport r;
    r.residuals["x"] = -1.0;
    CHECK_THROWS_AS(r.validate(), InvariantError);
    r.residuals["x"] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(r.validate(), InvariantError);
    r.residuals["x"] = 0.0;
    CHECK_NOTHROW(r.validate());
}
