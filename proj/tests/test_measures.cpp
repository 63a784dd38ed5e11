#include <doctest.h>

#include "oracles.hpp"
#include "uqres/measures.hpp"

using namespace uqres;

namespace {

DensityOperator plus() { return DensityOperator::pure(StateVector::uniform(HilbertSpec::qubits(1))); }

} // namespace

TEST_CASE("coherence of |+> and |0>") {
    CHECK(l1_coherence(plus()) == doctest::Approx(1.0));
    CHECK(log_coherence(plus()) == doctest::Approx(1.0));
    CHECK(rel_ent_coherence(plus()) == doctest::Approx(1.0));
    const auto zero = DensityOperator::pure(StateVector::basis(HilbertSpec::qubits(1), std::size_t{0}));
    CHECK(l1_coherence(zero) == 0.0);
    CHECK(log_coherence(zero) == 0.0);
    CHECK(rel_ent_coherence(zero) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("uniform states reach the maximum log2 d") {
    for (int d = 2; d <= 7; ++d) {
        const auto u = DensityOperator::pure(StateVector::uniform(HilbertSpec({d})));
        CHECK(std::abs(log_coherence(u) - std::log2(d)) < 1e-12);
        CHECK(std::abs(rel_ent_coherence(u) - std::log2(d)) < 1e-12);
        CHECK(l1_coherence(u) == doctest::Approx(d - 1.0));
    }
}

TEST_CASE("relative-entropy coherence matches S(diag) - S(rho)") {
    Rng rng(1);
    for (int k = 0; k < 30; ++k) {
        const auto rho = random_density(HilbertSpec({2 + k % 3}), rng);
        CHECK(std::abs(rel_ent_coherence(rho) - oracle::rel_ent_coherence(rho.matrix())) < 1e-10);
    }
}

TEST_CASE("log-coherence is additive and monotone in dephasing") {
    Rng rng(2);
    for (int k = 0; k < 50; ++k) {
        const auto a = random_density(HilbertSpec({2 + k % 2}), rng);
        const auto b = random_density(HilbertSpec({3 - k % 2}), rng);
        CHECK(std::abs(log_coherence(tensor(a, b)) - log_coherence(a) - log_coherence(b)) < 1e-9);
        CHECK(rel_ent_coherence(apply_channel(QuantumChannel::dephasing(a.spec()), a)) < 1e-10);
    }
}

TEST_CASE("a basis change is applied as B^dagger rho B") {
    CHECK(l1_coherence(plus(), gates::h()) == doctest::Approx(0.0).epsilon(1e-12));
    Rng rng(4);
    const auto rho = random_density(HilbertSpec({3}), rng);
    const Mat u = random_unitary(3, rng);
    const DensityOperator rotated(rho.spec(), u * rho.matrix() * u.adjoint());
    CHECK(rel_ent_coherence(rotated, u) == doctest::Approx(rel_ent_coherence(rho)));
}

TEST_CASE("entanglement entropy matches the Schmidt spectrum") {
    Rng rng(5);
    const HilbertSpec s({2, 3, 2});
    for (int k = 0; k < 20; ++k) {
        const auto psi = random_state(s, rng);
        const std::vector<int> a{0};
        CHECK(std::abs(entanglement_entropy(psi, a) - oracle::schmidt_entropy(psi.amplitudes(), 2, 6)) < 1e-10);
        const std::vector<int> ab{0, 1};
        CHECK(std::abs(entanglement_entropy(psi, ab) - oracle::schmidt_entropy(psi.amplitudes(), 6, 2)) < 1e-10);
    }
    const std::vector<int> a{0};
    CHECK_THROWS_AS(entanglement_entropy(DensityOperator::maximally_mixed(HilbertSpec::qubits(2)), a), InvariantError);
}

TEST_CASE("distances") {
    const auto zero = DensityOperator::pure(StateVector::basis(HilbertSpec::qubits(1), std::size_t{0}));
    const auto one = DensityOperator::pure(StateVector::basis(HilbertSpec::qubits(1), std::size_t{1}));
    CHECK(trace_distance(zero, one) == doctest::Approx(1.0));
    CHECK(trace_distance(zero, zero) == doctest::Approx(0.0));
    CHECK(relative_entropy(zero, zero) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::isinf(relative_entropy(plus(), zero)));
    CHECK(relative_entropy(zero, DensityOperator::maximally_mixed(zero.spec())) == doctest::Approx(1.0));
}

TEST_CASE("sampled free sets give upper bounds on the true minimum") {
    Rng rng(6);
    for (int k = 0; k < 20; ++k) {
        const auto rho = random_density(HilbertSpec({3}), rng);
        const auto free = FreeSetSample::incoherent_basis(rho.spec());
        // The minimiser over incoherent states is the dephased state.
        std::vector<DensityOperator> with_delta = free.states();
        with_delta.push_back(apply_channel(QuantumChannel::dephasing(rho.spec()), rho));
        const FreeSetSample richer(with_delta, "incoherent+delta");
        CHECK(distance_resource(rho, richer, Metric::relative_entropy) <= rel_ent_coherence(rho) + 1e-9);
        CHECK(distance_resource(rho, free, Metric::relative_entropy) >= rel_ent_coherence(rho) - 1e-9);
    }
    const auto zero = DensityOperator::pure(StateVector::basis(HilbertSpec::qubits(1), std::size_t{0}));
    const std::vector<DensityOperator> resources{plus()};
    const FreeSetSample basis = FreeSetSample::incoherent_basis(zero.spec());
    CHECK(set_distance(resources, basis, Metric::trace) == doctest::Approx(distance_resource(plus(), basis, Metric::trace)));
}

TEST_CASE("measure reports") {
    const auto r = measure_report("rel", plus());
    CHECK(r.value == doctest::Approx(1.0));
    CHECK(r.basis == "computational");
    CHECK_FALSE(r.upper_bound);
    CHECK_THROWS_AS(measure_report("bogus", plus()), ParseError);
}
