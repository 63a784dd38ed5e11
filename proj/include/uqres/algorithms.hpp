#pragma once

// Resource analyses of textbook algorithms: interference of sandwiched
// controlled circuits, the one-clean-qubit style construction CU(V_eps x 1),
// linear combinations of unitaries, and Grover iterations.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "uqres/circuits.hpp"
#include "uqres/interference.hpp"
#include "uqres/qkernel.hpp"

namespace uqres {

struct AlgorithmReport {
    std::string algorithm;
    std::map<std::string, double> parameters;
    std::map<std::string, double> terms;
    std::map<std::string, double> residuals;
    std::vector<double> success_probabilities;

    // Throws InvariantError on a negative or non-finite residual.
    void validate() const;
};

// Relative-entropy interference of (V x 1) CU (W x 1), evaluated entry by
// entry from sum_i v_ai w_ib (U_i)_{mu nu}.
double sandwiched_interference(const Mat& v, const Multiplexer& cu, const Mat& w);

// [[sqrt(1-eps), -sqrt(eps)], [sqrt(eps), sqrt(1-eps)]]
Mat v_epsilon(double eps);

// Circuit on 1 + n qubits: V_eps on the control, then the controlled U. The
// returned state is its output on |0...0>.
std::pair<Circuit, StateVector> vdn_build(const UnitaryOp& u, double eps);

struct VdnDecomposition {
    double i_circuit = 0.0;
    double i_v = 0.0;
    double i_u = 0.0;
    double residual = 0.0;  // |I(circuit) - I(V_eps) - I(U)/2|
};
VdnDecomposition vdn_interference_decomposition(const UnitaryOp& u, double eps);

struct LcuResult {
    StateVector state;
    double success_probability = 0.0;
};

// Prepare-select-unprepare with control amplitudes sqrt(|c_i| / ||c||_1),
// post-selected on control |0>. The success probability is
// ||sum_i c_i U_i psi||^2 / ||c||_1^2. Throws InvariantError when the
// combination annihilates psi.
LcuResult lcu_apply(const std::vector<cplx>& c, const std::vector<UnitaryOp>& us, const StateVector& psi);

struct GroverStep {
    int iteration = 0;
    double success_probability = 0.0;
    double closed_form = 0.0;  // sin^2((2k+1) theta)
    double coherence = 0.0;    // relative-entropy coherence, computational basis
    double rotated_coherence = 0.0;  // basis led by |marked> and the unmarked uniform state
};

// Steps 0..k from the uniform superposition on n <= 6 qubits.
std::vector<GroverStep> grover_trace(int n, int marked, int iterations);

} // namespace uqres
