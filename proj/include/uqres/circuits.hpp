#pragma once

// Circuit IR with multiplexers, basis measurements, outcome-conditioned gates
// and discards, and an exact simulator that enumerates every measurement
// branch.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "uqres/interference.hpp"
#include "uqres/qkernel.hpp"

namespace uqres {

using OutcomeRecord = std::map<std::string, int>;

struct GateOp {
    Mat matrix;
    std::vector<int> wires;
    std::string name;  // informational; empty for raw matrices
};

// sum_i P_i (x) U_i with P_i on `control` and U_i on `targets`.
struct MuxOp {
    int control = 0;
    std::vector<Mat> branches;
    std::vector<int> targets;
};

enum class Basis { Z, X, Y, custom };

// Projective measurement. Outcome k projects onto column k of the basis
// unitary: identity for Z, the Fourier matrix for X (H on qubits), S*H for Y.
struct MeasureOp {
    int wire = 0;
    Basis basis = Basis::Z;
    Mat custom;  // used when basis == custom
    std::string out;
};

struct CondOp {
    OutcomeRecord when;
    GateOp gate;
};

struct DiscardOp {
    int wire = 0;
};

using Instruction = std::variant<GateOp, MuxOp, MeasureOp, CondOp, DiscardOp>;

inline constexpr std::size_t kMaxBranches = std::size_t{1} << 16;
inline constexpr double kBranchPruneTol = 1e-14;

Mat basis_unitary(Basis basis, int dim, const Mat& custom = Mat());

class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(HilbertSpec wires) : wires_(std::move(wires)) {}

    const HilbertSpec& wires() const { return wires_; }
    const std::vector<Instruction>& ops() const { return ops_; }

    Circuit& gate(std::string_view name, std::vector<int> wires);
    Circuit& gate(Mat matrix, std::vector<int> wires, std::string name = "");
    Circuit& mux(int control, std::vector<Mat> branches, std::vector<int> targets);
    Circuit& measure(int wire, Basis basis, std::string out, Mat custom = Mat());
    Circuit& cond(OutcomeRecord when, GateOp gate);
    Circuit& discard(int wire);
    Circuit& append(Instruction op);

    // Throws InvariantError on out-of-range wires, branch-count or dimension
    // mismatches, unknown outcome names, or use of a discarded wire.
    void validate() const;

    // Wires still present at the end, in original index order.
    std::vector<int> live_wires() const;

  private:
    HilbertSpec wires_;
    std::vector<Instruction> ops_;
};

struct BranchOutcome {
    OutcomeRecord outcomes;
    double probability = 0.0;
    // Original indices of the wires the state lives on.
    std::vector<int> wires;
    std::optional<StateVector> pure;
    std::optional<DensityOperator> mixed;

    bool is_pure() const { return pure.has_value(); }
    const HilbertSpec& spec() const { return pure ? pure->spec() : mixed->spec(); }
    Mat density() const;
};

std::vector<BranchOutcome> simulate(const Circuit& c, const StateVector& input);
std::vector<BranchOutcome> simulate(const Circuit& c, const DensityOperator& input);

// Keeps branches whose record has `name` == value.
std::vector<BranchOutcome> postselect(const std::vector<BranchOutcome>& branches, const std::string& name,
                                      int value);

struct DeterminismReport {
    bool deterministic = false;
    double max_infidelity = 0.0;
};

// All branches agree up to global phase within 1e-9 (default) on every input.
DeterminismReport is_deterministic(const Circuit& c, const std::vector<StateVector>& inputs,
                                   double tol = kChannelTol);
DeterminismReport is_deterministic(const std::vector<BranchOutcome>& branches, double tol = kChannelTol);

// Every gate diagonal or monomial in the computational basis and every
// measurement in Z.
bool free_circuit_check(const Circuit& c);

// Choi state of the branch-averaged channel, input layout first, normalised
// like choi_state. `inputs` names the wires fed by the reference (all wires
// when empty); the remaining wires start in |0>.
DensityOperator average_channel_choi(const Circuit& c, const std::vector<int>& inputs = {});
// <Phi_G| J |Phi_G> against the Choi vector of unitary G.
double choi_fidelity(const DensityOperator& choi, const Mat& g);

// Product of all gates and multiplexers; throws InvariantError on any
// measurement, conditioned gate or discard.
Mat circuit_unitary(const Circuit& c);

// Controlled-unitary sandwich on wires [control, data...]: U1 on control,
// CU, U2 on control, then CV compiled as a Z readout of the control with
// outcome-conditioned V_k on the data and a discard of the control.
Circuit contextual_circuit(const Mat& u1, const Multiplexer& cu, const Mat& u2, const std::vector<Mat>& cv,
                           const HilbertSpec& data);

// Wires [in, anc]: H anc, CZ, X readout of `in` as "m", X^m on anc, discard
// in. Output on anc is H|psi>.
Circuit h_teleportation_circuit();
// Contextual form of H on wires [control, data] with CU = {X, Z}.
Circuit contextual_h_circuit();
// Wires [data, anc]: T|+> ancilla, CX data->anc, Z readout "m", S^dagger fix
// on m = 1, discard anc. With key_a = 1 an S is appended so an input
// encrypted with X^a Z^b leaves encrypted with the same key.
Circuit t_injection_circuit(int key_a = 0);

} // namespace uqres
