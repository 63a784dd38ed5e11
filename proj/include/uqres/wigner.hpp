#pragma once

// Discrete Wigner functions of single odd-prime qudits, sum negativity, mana
// and the stabilizer pure states.

#include <vector>

#include "uqres/qkernel.hpp"

namespace uqres {

bool is_odd_prime(int d);

struct WignerTable {
    int d = 0;
    // values[q][p]
    std::vector<std::vector<double>> values;

    double at(int q, int p) const { return values[static_cast<std::size_t>(q)][static_cast<std::size_t>(p)]; }
    double sum() const;
    double sum_squares() const;
};

// omega^{2^{-1} q p} X^q Z^p with 2^{-1} taken mod d.
Mat weyl(int d, int q, int p);
// A_(q,p) = T_u A_0 T_u^dagger with A_0 = (1/d) sum_u T_u.
Mat phase_point(int d, int q, int p);

WignerTable wigner_function(const DensityOperator& rho, int d);
double sum_negativity(const WignerTable& w);
// log2(2N + 1)
double mana(const DensityOperator& rho, int d);

struct StabilizerStateSet {
    int d = 0;
    int n = 1;
    std::vector<StateVector> states;
    // Each basis is a block of d consecutive states; d+1 bases in total.
    int basis_count() const { return static_cast<int>(states.size()) / d; }
};

StabilizerStateSet stabilizer_states(int d);

// Generators of the single-qudit Clifford group used for invariance checks:
// Fourier and the quadratic phase diag(omega^{2^{-1} j^2}).
Mat clifford_phase(int d);

} // namespace uqres
