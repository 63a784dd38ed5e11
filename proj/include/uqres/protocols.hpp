#pragma once

// Two-party protocols with a server A and a client B: Pauli one-time pad, PR
// boxes, T-gate teleportation through an ebit and a PR box, blind gate
// sequences on tailed clusters, and adaptive measurement-based gates.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uqres/circuits.hpp"
#include "uqres/qkernel.hpp"

namespace uqres {

struct PauliKey {
    int a = 0;  // X exponent
    int b = 0;  // Z exponent
    bool operator==(const PauliKey&) const = default;
};

// X^a Z^b on every qubit, qubit k using keys[k].
StateVector pauli_encrypt(const StateVector& psi, const std::vector<PauliKey>& keys);
StateVector pauli_encrypt(const StateVector& psi, const PauliKey& key);
// Inverse of pauli_encrypt (up to global phase): Z^b X^a per qubit.
StateVector pauli_decrypt(const StateVector& psi, const std::vector<PauliKey>& keys);
StateVector pauli_decrypt(const StateVector& psi, const PauliKey& key);

// Single-use nonlocal box: on inputs (x, y) returns (h, h xor x*y) with hidden
// uniform bit h.
class PRBox {
  public:
    PRBox(int id, int hidden) : id_(id), hidden_(hidden & 1) {}
    static PRBox sample(int id, Rng& rng);

    int id() const { return id_; }
    bool consumed() const { return consumed_; }
    // Throws ResourceError on reuse.
    std::pair<int, int> call(int x, int y);

  private:
    int id_;
    int hidden_;
    bool consumed_ = false;
};

// Win probability of the CHSH game with a PR box, exact over all inputs and
// hidden bits.
double chsh_win_rate();
// Fraction of `rounds` random-input games won with fresh sampled boxes, and
// the observed frequency of A's output bit being 1.
struct ChshSample {
    double win_rate = 0.0;
    double a_ones = 0.0;
    double b_ones = 0.0;
};
ChshSample chsh_sample(int rounds, Rng& rng);

// ---------------------------------------------------------------------------
// Transcripts

struct TranscriptEvent {
    int t = 0;
    std::string party;   // "A" or "B"
    std::string action;  // local-op, measure, pr-box-call, broadcast, message
    std::map<std::string, std::string> payload;
};

class Transcript {
  public:
    void add(std::string party, std::string action, std::map<std::string, std::string> payload = {});
    const std::vector<TranscriptEvent>& events() const { return events_; }
    int count(const std::string& action) const;

  private:
    std::vector<TranscriptEvent> events_;
};

struct LobcReport {
    bool ok = false;
    int directed_messages = 0;
    int broadcasts = 0;
    std::string reason;
};

// Local operations plus one broadcast: no directed message anywhere and at
// most one broadcast.
LobcReport validate_lobc(const Transcript& transcript);

struct ResourcePool {
    int ebits = 0;
    int pr_boxes = 0;
    int ebits_used = 0;
    int boxes_used = 0;

    void take_ebit();
    void take_box();
};

// Supplies measurement outcomes and hidden bits, either sampled from the
// Born rule with a seeded generator or replayed from a forced list.
class OutcomeSource {
  public:
    explicit OutcomeSource(Rng& rng) : rng_(&rng) {}
    explicit OutcomeSource(std::vector<int> forced) : forced_(std::move(forced)) {}

    // p0 is the probability of outcome 0 (0.5 for hidden bits).
    int next(double p0);
    const std::vector<int>& history() const { return history_; }

  private:
    Rng* rng_ = nullptr;
    std::vector<int> forced_;
    std::size_t pos_ = 0;
    std::vector<int> history_;
};

// ---------------------------------------------------------------------------
// T-gate teleportation

struct BttBranch {
    int m = 0;       // A's ancilla readout
    int k = 0;       // B's readout of its ebit half
    int hidden = 0;  // PR-box hidden bit
};

struct BttResult {
    StateVector output;  // A's qubit, X^a' Z^b' T|psi>
    PauliKey new_key;
    Transcript transcript;
    BttBranch branch;
    double probability = 0.0;
    // A's data-qubit state at each step, B's registers traced out.
    std::vector<Mat> a_views;
};

// A holds `encrypted`, B holds `key`. Consumes one ebit and one PR box from
// `pool`; with `force` the readouts and hidden bit are fixed instead of
// sampled.
BttResult btt(const StateVector& encrypted, const PauliKey& key, ResourcePool& pool, Rng& rng,
              const std::optional<BttBranch>& force = std::nullopt);

// Every branch of nonzero probability for every hidden bit.
std::vector<BttResult> btt_all_branches(const StateVector& encrypted, const PauliKey& key);

// ---------------------------------------------------------------------------
// Blind gate sequences on tailed clusters

enum class LogicalGate { H, T };

struct PmqcProgram {
    int qubits = 1;
    std::vector<std::vector<LogicalGate>> pre;
    bool cz = false;
    std::vector<std::vector<LogicalGate>> post;

    void validate() const;
    int t_count() const;
    int h_count() const;
    // Head sites of the tailed cluster: 1 + #H + 2 #T per row.
    int physical_qubits() const;
    // The plain circuit the program stands for.
    Mat unitary() const;

    static PmqcProgram random(int qubits, Rng& rng);
};

inline constexpr int kPmqcMaxQubits = 12;

struct PmqcResult {
    StateVector output;  // A's logical qubits, still encrypted
    std::vector<PauliKey> keys;
    Transcript transcript;
    int t_events = 0;
    int ebits_used = 0;
    int boxes_used = 0;
    int physical_qubits = 0;
    double probability = 1.0;
    std::vector<int> outcomes;
    std::vector<Mat> a_views;
};

// Runs `program` on inputs encrypted with `keys`. Checks resources before the
// run starts and throws ResourceError on any shortfall.
PmqcResult pmqc_run(const PmqcProgram& program, const StateVector& encrypted, const std::vector<PauliKey>& keys,
                    ResourcePool& pool, OutcomeSource& outcomes);

// Max entry deviation of A's view, averaged over every key assignment with
// the outcomes of one sampled run held fixed, from the maximally mixed state.
double pmqc_privacy_deviation(const PmqcProgram& program, const StateVector& plain, Rng& rng);

// ---------------------------------------------------------------------------
// Measurement-based gates on a 1D cluster row

// H Rz(-phi_k) ... H Rz(-phi_1) with Rz(t) = diag(1, e^{i t}).
Mat mbqc_target(const std::vector<double>& angles);
// Row of angles.size() + 1 qubits; input on wire 0, output on the last wire.
// Adaptive angles flip sign with the tracked X byproduct; Pauli corrections
// and discards of measured sites close the circuit.
Circuit mbqc_circuit(const std::vector<double>& angles, bool adaptive = true);
std::vector<BranchOutcome> mbqc_gate(const StateVector& input, const std::vector<double>& angles,
                                     bool adaptive = true);

} // namespace uqres
