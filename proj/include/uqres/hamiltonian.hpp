#pragma once

// Hamiltonian tools: stoquasticity, weighted term sums, Trotterised
// evolution, the low-energy simulation error, the cellular-automaton local
// term with its brickwork runner, history states, the walk Hamiltonian and
// adiabatic gap scans.

#include <optional>
#include <utility>
#include <vector>

#include "uqres/qkernel.hpp"

namespace uqres {

struct HamiltonianTerm {
    std::vector<int> sites;
    Mat matrix;  // Hermitian, acting on `sites` in that order
    double weight = 1.0;
};

class TermSum {
  public:
    TermSum(HilbertSpec spec, std::vector<HamiltonianTerm> terms);

    const HilbertSpec& spec() const { return spec_; }
    const std::vector<HamiltonianTerm>& terms() const { return terms_; }

  private:
    HilbertSpec spec_;
    std::vector<HamiltonianTerm> terms_;
};

// Off-diagonal entries of basis^dagger H basis real (|Im| < 1e-10) and
// non-positive (Re < 1e-10). Without a basis the computational one is used.
bool is_stoquastic(const Mat& h, const std::optional<Mat>& basis = std::nullopt);
bool is_stoquastic(const TermSum& terms, const std::optional<Mat>& basis = std::nullopt);

// sum_n j_n h_n embedded in the full space.
Mat assemble(const TermSum& terms);

// (prod_k exp(i (t/n) j_k h_k))^n, term 0 applied first within each step.
UnitaryOp trotter_evolve(const TermSum& terms, double t, int steps);
// exp(i t H) by exact diagonalisation.
UnitaryOp exact_evolve(const TermSum& terms, double t);

// || P H' P - V H V^dagger || with P the spectral projector of H' onto
// eigenvalues <= delta and V the encoding isometry.
double simulation_error(const Mat& hprime, const Mat& h, const Mat& encode, double delta);

// ---------------------------------------------------------------------------
// Cellular automaton

struct HqcaLocalTerm {
    Mat h;       // ancilla(2) x program(3) x data(2) x data(2)
    Mat u;       // program x data x data: P0 x 1 + P1 x W + P2 x Pi
    Mat w;       // P0 x 1 + P1 x HZ
    Mat swap;    // Pi
};

HqcaLocalTerm hqca_local_term();
// G_p in {1, W, Pi} for p in {0, 1, 2}.
Mat hqca_gate(int program);

// Programs of the active pairs in one layer; layer l acts on pairs (i, i+1)
// with i = l mod 2, l mod 2 + 2, ...
using HqcaLayer = std::vector<int>;

struct HqcaResult {
    StateVector data;
    // Smallest weight on the expected ancilla |0> and unchanged program over
    // every pair of every layer; 1 when the side conditions hold.
    double side_condition = 1.0;
};

HqcaResult hqca_run(const std::vector<HqcaLayer>& layers, const StateVector& data);
int hqca_active_pairs(int data_qubits, int layer);

// ---------------------------------------------------------------------------
// History states and adiabatic scans

struct HistoryState {
    int length = 0;  // L
    // data (x) clock; for L = 0 the one-dimensional clock is left out.
    StateVector state;
    std::vector<double> clock_probabilities() const;
};

// (1/sqrt(L+1)) sum_l (U_l ... U_1 |psi0>) |l>
HistoryState history_state(const std::vector<Mat>& circuit, const StateVector& psi0);

// Tridiagonal (L+1) x (L+1): diagonal (1/2, 1, ..., 1, 1/2), off-diagonals -1/2.
Mat walk_hamiltonian(int length);

// (1 - s) H_start + s H_end
Mat interpolate(const Mat& h_start, const Mat& h_end, double s);
// t H0 + (1 - t) H1, the same path with the endpoints swapped.
Mat interpolate_literal(const Mat& h0, const Mat& h1, double t);

struct GapPoint {
    double s = 0.0;
    double gap = 0.0;
};

// Gap between the two lowest eigenvalues of interpolate at `grid` equally
// spaced points in [0, 1].
std::vector<GapPoint> adiabatic_gap_scan(const Mat& h_start, const Mat& h_end, int grid);

// Z/sqrt2 -> X/sqrt2 on one qubit; minimum gap 1 at s = 1/2.
std::pair<Mat, Mat> z_to_x_preset();
// 1 - |0><0| on the clock, then the walk Hamiltonian.
std::pair<Mat, Mat> clock_walk_preset(int length);

} // namespace uqres
