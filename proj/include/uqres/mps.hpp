#pragma once

// Ebits, valence-bond states, matrix-product states with a boundary operator
// and their sequential preparation, plus (tailed) graph states.

#include <utility>
#include <vector>

#include "uqres/qkernel.hpp"

namespace uqres {

// Amplitudes psi_{i1..iN} = tr(B A_N^{iN} ... A_1^{i1}); site 1 is the most
// significant digit.
class MPSChain {
  public:
    // tensors[n][i] is the D x D matrix A_{n+1}^i.
    MPSChain(std::vector<std::vector<Mat>> tensors, Mat boundary);

    // The same site tensor on every site.
    static MPSChain uniform(int n, const std::vector<Mat>& site, Mat boundary);
    static MPSChain random(int n, int d, int bond, Rng& rng);

    int length() const { return static_cast<int>(tensors_.size()); }
    int phys_dim() const { return static_cast<int>(tensors_.front().size()); }
    int bond_dim() const { return static_cast<int>(boundary_.rows()); }
    const std::vector<std::vector<Mat>>& tensors() const { return tensors_; }
    const Mat& boundary() const { return boundary_; }

  private:
    std::vector<std::vector<Mat>> tensors_;
    Mat boundary_;
};

// A^0 = |0><0|, A^1 = |1><1|, B = 1.
MPSChain ghz_mps(int n);
// A^i_{ab} = delta_{ai} (-1)^{b i} / sqrt 2 with B = [[1,1],[0,0]]: the open
// 1D cluster state.
MPSChain cluster_mps(int n);

// (1/sqrt d) sum_i |ii>, built as CSUM (F|0>)|0>.
StateVector make_ebit(int d);

// Normalised (P_1 (x) ... (x) P_K) |omega>^{(x) ebits}. Halves are ordered
// 1a 1b 2a 2b ...; each P_k consumes the next log_d(cols) halves in order.
StateVector vbs_state(const std::vector<Mat>& ops, int d, int ebits);

StateVector contract(const MPSChain& chain);

struct PreparedState {
    StateVector state;
    // Chance that projecting the bond register onto the boundary succeeds
    // when the bond starts maximally entangled with a reference.
    double success_probability = 0.0;
};

// Left-canonicalises the chain, dilates every site isometry to a unitary on
// bond (x) site, runs the sites in order and projects the bond register
// according to the boundary operator.
PreparedState sequential_prepare(const MPSChain& chain);

struct GraphSpec {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    // Empty, or one flag per vertex; tailed vertices get an ebit partner.
    std::vector<bool> tails;

    static GraphSpec line(int n);
    void validate() const;
    int tail_count() const;
    std::vector<int> neighbours(int v) const;
};

// Untailed: CZ over edges on |+>^n. Tailed: CZ over edges on the head halves
// of ebits. Wire order: the n heads, then tails in vertex order.
StateVector cluster_state(const GraphSpec& g, std::size_t cap = kDefaultDimensionCap);

// Pauli string as (wire, 'X'|'Y'|'Z') pairs.
using PauliString = std::vector<std::pair<int, char>>;

// X_v Z_{N(v)} per vertex; tailed vertices contribute X_h X_t Z_{N(v)} and
// Z_h Z_t instead.
std::vector<PauliString> graph_stabilizers(const GraphSpec& g);
cplx pauli_expectation(const StateVector& psi, const PauliString& p);

} // namespace uqres
