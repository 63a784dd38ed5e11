#include <doctest.h>

#include "uqres/measures.hpp"
#include "uqres/wigner.hpp"

using namespace uqres;

TEST_CASE("odd prime detection") {
    CHECK(is_odd_prime(3));
    CHECK(is_odd_prime(7));
    CHECK_FALSE(is_odd_prime(2));
    CHECK_FALSE(is_odd_prime(9));
    CHECK_FALSE(is_odd_prime(1));
    CHECK_THROWS_AS(wigner_function(DensityOperator::maximally_mixed(HilbertSpec({4})), 4), InvariantError);
    CHECK_THROWS_AS(wigner_function(DensityOperator::maximally_mixed(HilbertSpec({9})), 9), InvariantError);
}

TEST_CASE("maximally mixed and basis qutrits") {
    const auto w = wigner_function(DensityOperator::maximally_mixed(HilbertSpec({3})), 3);
    for (int q = 0; q < 3; ++q)
        for (int p = 0; p < 3; ++p) CHECK(w.at(q, p) == doctest::Approx(1.0 / 9));
    CHECK(sum_negativity(w) == 0.0);

    const auto zero = DensityOperator::pure(StateVector::basis(HilbertSpec({3}), std::size_t{0}));
    const auto w0 = wigner_function(zero, 3);
    int thirds = 0;
    for (int q = 0; q < 3; ++q)
        for (int p = 0; p < 3; ++p) {
            CHECK(w0.at(q, p) > -1e-12);
            if (std::abs(w0.at(q, p) - 1.0 / 3) < 1e-12) ++thirds;
        }
    CHECK(thirds == 3);
    CHECK(w0.sum() == doctest::Approx(1.0));
}

TEST_CASE("phase-point operators are Hermitian with unit trace") {
    for (int d : {3, 5})
        for (int q = 0; q < d; ++q)
            for (int p = 0; p < d; ++p) {
                const Mat a = phase_point(d, q, p);
                CHECK(is_hermitian(a));
                CHECK(std::abs(a.trace() - cplx(1.0)) < 1e-12);
            }
}

TEST_CASE("stabilizer states form d+1 mutually unbiased bases") {
    for (int d : {3, 5}) {
        const auto set = stabilizer_states(d);
        CHECK(static_cast<int>(set.states.size()) == d * (d + 1));
        CHECK(set.basis_count() == d + 1);
        for (std::size_t i = 0; i < set.states.size(); ++i) {
            const auto rho = DensityOperator::pure(set.states[i]);
            CHECK(std::abs(mana(rho, d)) < 1e-12);
            const auto w = wigner_function(rho, d);
            for (const auto& row : w.values)
                for (double x : row) CHECK(x > -1e-10);
            for (std::size_t j = 0; j < set.states.size(); ++j) {
                const double f = fidelity(set.states[i], set.states[j]);
                const auto bi = i / static_cast<std::size_t>(d), bj = j / static_cast<std::size_t>(d);
                if (bi != bj)
                    CHECK(f == doctest::Approx(1.0 / d));
                else
                    CHECK(f == doctest::Approx(i == j ? 1.0 : 0.0));
            }
        }
    }
}

TEST_CASE("normalisation, purity identity and the coherence bound on random qutrits") {
    Rng rng(8);
    bool some_negative = false;
    for (int k = 0; k < 200; ++k) {
        const auto rho = k % 2 ? DensityOperator::pure(random_state(HilbertSpec({3}), rng))
                               : random_density(HilbertSpec({3}), rng);
        const auto w = wigner_function(rho, 3);
        CHECK(std::abs(w.sum() - 1.0) < 1e-10);
        CHECK(std::abs(3 * w.sum_squares() - rho.purity()) < 1e-9);
        const double n = sum_negativity(w);
        CHECK(n <= l1_coherence(rho) + 1e-9);
        CHECK(mana(rho, 3) == doctest::Approx(std::log2(2 * n + 1)));
        some_negative = some_negative || n > 1e-6;
    }
    CHECK(some_negative);
}

TEST_CASE("Weyl displacement translates the table") {
    Rng rng(9);
    const int d = 5;
    const auto rho = random_density(HilbertSpec({d}), rng);
    const auto w = wigner_function(rho, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            const Mat t = weyl(d, a, b);
            const DensityOperator moved(rho.spec(), t * rho.matrix() * t.adjoint());
            const auto wm = wigner_function(moved, d);
            double dev = 0.0;
            for (int q = 0; q < d; ++q)
                for (int p = 0; p < d; ++p) dev = std::max(dev, std::abs(wm.at((q + a) % d, (p + b) % d) - w.at(q, p)));
            CHECK(dev < 1e-10);
        }
}

TEST_CASE("mana is invariant under Clifford conjugation") {
    Rng rng(10);
    const int d = 3;
    const std::vector<Mat> gens{gates::fourier(d), clifford_phase(d), weyl(d, 1, 0), weyl(d, 0, 1)};
    std::uniform_int_distribution<int> pick(0, 3);
    for (int k = 0; k < 20; ++k) {
        Mat c = Mat::Identity(d, d);
        for (int j = 0; j < 6; ++j) c = gens[static_cast<std::size_t>(pick(rng))] * c;
        const auto rho = DensityOperator::pure(random_state(HilbertSpec({d}), rng));
        const DensityOperator moved(rho.spec(), c * rho.matrix() * c.adjoint());
        CHECK(std::abs(mana(moved, d) - mana(rho, d)) < 1e-9);
    }
}
