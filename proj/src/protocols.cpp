#include "uqres/protocols.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace uqres {

namespace {

// Flat pure state over labelled qubits, with measured qubits removed.
class Register {
  public:
    void add(const std::string& label, const Vec& q) { add_joint({label}, q); }

    void add_joint(const std::vector<std::string>& labels, const Vec& amps) {
        Vec next(v_.size() * amps.size());
        for (Eigen::Index a = 0; a < v_.size(); ++a) next.segment(a * amps.size(), amps.size()) = v_(a) * amps;
        v_ = std::move(next);
        labels_.insert(labels_.end(), labels.begin(), labels.end());
    }

    void gate(const Mat& op, const std::vector<std::string>& labels) { v_ = apply_on(spec(), v_, op, positions(labels)); }

    // Projects `label` onto a column of `basis`, removes it, and multiplies
    // `prob` by the outcome probability.
    int measure(const std::string& label, const Mat& basis, OutcomeSource& src, double& prob) {
        const int pos = positions({label}).front();
        const HilbertSpec sp = spec();
        const Vec b0 = basis.col(0);
        const double p0 = std::clamp(contract(sp, pos, b0).squaredNorm(), 0.0, 1.0);
        const int k = src.next(p0);
        const Vec w = contract(sp, pos, basis.col(k));
        const double pk = w.squaredNorm();
        if (pk < kBranchPruneTol) throw InvariantError("forced outcome has zero probability");
        v_ = w / std::sqrt(pk);
        prob *= pk;
        labels_.erase(labels_.begin() + pos);
        return k;
    }

    Mat reduced(const std::vector<std::string>& keep) const {
        const auto pos = positions(keep);
        if (pos.size() == labels_.size()) {
            const Vec s = state(keep);
            return s * s.adjoint();
        }
        return partial_trace(spec(), v_ * v_.adjoint(), pos);
    }

    // Amplitudes with qubits reordered as `order`, which must list every label.
    Vec state(const std::vector<std::string>& order) const {
        if (order.size() != labels_.size()) throw InvariantError("state(): order must list every qubit");
        const auto pos = positions(order);
        const HilbertSpec sp = spec();
        const HilbertSpec out_spec = HilbertSpec::qubits(static_cast<int>(order.size()));
        Vec out(v_.size());
        for (std::size_t i = 0; i < sp.total_dim(); ++i) {
            const auto digits = sp.digits(i);
            std::vector<int> od(order.size());
            for (std::size_t k = 0; k < order.size(); ++k) od[k] = digits[static_cast<std::size_t>(pos[k])];
            out(static_cast<Eigen::Index>(out_spec.index(od))) = v_(static_cast<Eigen::Index>(i));
        }
        return out;
    }

  private:
    HilbertSpec spec() const { return HilbertSpec::qubits(static_cast<int>(labels_.size())); }

    std::vector<int> positions(const std::vector<std::string>& labels) const {
        std::vector<int> out;
        for (const auto& l : labels) {
            auto it = std::find(labels_.begin(), labels_.end(), l);
            if (it == labels_.end()) throw InvariantError("unknown register label " + l);
            out.push_back(static_cast<int>(it - labels_.begin()));
        }
        return out;
    }

    Vec contract(const HilbertSpec& sp, int pos, const Vec& phi) const {
        const std::size_t stride = sp.stride(pos);
        Vec w = Vec::Zero(v_.size() / 2);
        for (std::size_t i = 0; i < sp.total_dim(); ++i) {
            const std::size_t digit = (i / stride) % 2;
            const std::size_t rest = (i / (stride * 2)) * stride + i % stride;
            w(static_cast<Eigen::Index>(rest)) += std::conj(phi(static_cast<Eigen::Index>(digit))) * v_(static_cast<Eigen::Index>(i));
        }
        return w;
    }

    std::vector<std::string> labels_;
    Vec v_ = Vec::Ones(1);
};

Vec ket_plus() { return Vec::Constant(2, 1.0 / std::sqrt(2.0)); }

// CX (H|0>) |0>
Vec ebit_amplitudes() {
    const HilbertSpec two = HilbertSpec::qubits(2);
    Vec v = StateVector::basis(two, 0).amplitudes();
    v = apply_on(two, v, gates::h(), std::vector<int>{0});
    return apply_on(two, v, gates::cx(), std::vector<int>{0, 1});
}

// Columns (S^dagger)^a H: X basis for a = 0, the conjugate Y basis for a = 1.
Mat client_basis(int a) { return a ? Mat(gates::sdg() * gates::h()) : gates::h(); }

std::string bit(int b) { return b ? "1" : "0"; }

Mat pauli_pad(const PauliKey& k) {
    Mat m = gates::identity(2);
    if (k.b) m = gates::z() * m;
    if (k.a) m = gates::x() * m;
    return m;
}

Mat pauli_unpad(const PauliKey& k) {
    Mat m = gates::identity(2);
    if (k.a) m = gates::x() * m;
    if (k.b) m = gates::z() * m;
    return m;
}

StateVector per_qubit(const StateVector& psi, const std::vector<PauliKey>& keys, Mat (*op)(const PauliKey&)) {
    if (static_cast<int>(keys.size()) != psi.spec().size()) throw InvariantError("one key per qubit required");
    for (int k = 0; k < psi.spec().size(); ++k)
        if (psi.spec().dim(k) != 2) throw InvariantError("Pauli keys act on qubits");
    Vec v = psi.amplitudes();
    for (std::size_t k = 0; k < keys.size(); ++k)
        v = apply_on(psi.spec(), v, op(keys[k]), std::vector<int>{static_cast<int>(k)});
    return StateVector::normalized(psi.spec(), std::move(v));
}

} // namespace

// ---------------------------------------------------------------------------
// Pauli pad and PR boxes

StateVector pauli_encrypt(const StateVector& psi, const std::vector<PauliKey>& keys) {
    return per_qubit(psi, keys, &pauli_pad);
}
StateVector pauli_encrypt(const StateVector& psi, const PauliKey& key) { return pauli_encrypt(psi, std::vector<PauliKey>{key}); }
StateVector pauli_decrypt(const StateVector& psi, const std::vector<PauliKey>& keys) {
    return per_qubit(psi, keys, &pauli_unpad);
}
StateVector pauli_decrypt(const StateVector& psi, const PauliKey& key) { return pauli_decrypt(psi, std::vector<PauliKey>{key}); }

PRBox PRBox::sample(int id, Rng& rng) {
    std::bernoulli_distribution coin(0.5);
    return PRBox(id, coin(rng) ? 1 : 0);
}

std::pair<int, int> PRBox::call(int x, int y) {
    if (consumed_) throw ResourceError("PR box " + std::to_string(id_) + " was already used");
    consumed_ = true;
    return {hidden_, hidden_ ^ ((x & 1) & (y & 1))};
}

double chsh_win_rate() {
    int wins = 0;
    int games = 0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int h = 0; h < 2; ++h) {
                PRBox box(0, h);
                auto [a, b] = box.call(x, y);
                wins += ((a ^ b) == (x & y)) ? 1 : 0;
                ++games;
            }
    return static_cast<double>(wins) / games;
}

ChshSample chsh_sample(int rounds, Rng& rng) {
    std::bernoulli_distribution coin(0.5);
    ChshSample s;
    int wins = 0, a1 = 0, b1 = 0;
    for (int r = 0; r < rounds; ++r) {
        const int x = coin(rng) ? 1 : 0;
        const int y = coin(rng) ? 1 : 0;
        PRBox box = PRBox::sample(r, rng);
        auto [a, b] = box.call(x, y);
        wins += ((a ^ b) == (x & y)) ? 1 : 0;
        a1 += a;
        b1 += b;
    }
    s.win_rate = static_cast<double>(wins) / rounds;
    s.a_ones = static_cast<double>(a1) / rounds;
    s.b_ones = static_cast<double>(b1) / rounds;
    return s;
}

// ---------------------------------------------------------------------------
// Transcripts and resources

void Transcript::add(std::string party, std::string action, std::map<std::string, std::string> payload) {
    if (party != "A" && party != "B") throw InvariantError("transcript party must be A or B");
    events_.push_back({static_cast<int>(events_.size()), std::move(party), std::move(action), std::move(payload)});
}

int Transcript::count(const std::string& action) const {
    return static_cast<int>(std::count_if(events_.begin(), events_.end(),
                                          [&](const TranscriptEvent& e) { return e.action == action; }));
}

LobcReport validate_lobc(const Transcript& transcript) {
    LobcReport r;
    for (const auto& e : transcript.events()) {
        if (e.action == "message") ++r.directed_messages;
        if (e.action == "broadcast") ++r.broadcasts;
    }
    if (r.directed_messages > 0) {
        r.reason = "directed message between the parties";
    } else if (r.broadcasts > 1) {
        r.reason = "more than one broadcast round";
    }
    r.ok = r.reason.empty();
    return r;
}

void ResourcePool::take_ebit() {
    if (ebits_used >= ebits) throw ResourceError("out of ebits");
    ++ebits_used;
}

void ResourcePool::take_box() {
    if (boxes_used >= pr_boxes) throw ResourceError("out of PR boxes");
    ++boxes_used;
}

int OutcomeSource::next(double p0) {
    int k = 0;
    if (rng_) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        k = u(*rng_) < p0 ? 0 : 1;
    } else {
        if (pos_ >= forced_.size()) throw InvariantError("forced outcome list exhausted");
        k = forced_[pos_++] & 1;
    }
    history_.push_back(k);
    return k;
}

// ---------------------------------------------------------------------------
// BTT

BttResult btt(const StateVector& encrypted, const PauliKey& key, ResourcePool& pool, Rng& rng,
              const std::optional<BttBranch>& force) {
    if (encrypted.spec() != HilbertSpec::qubits(1)) throw InvariantError("btt expects one encrypted qubit");
    pool.take_ebit();
    pool.take_box();
    OutcomeSource src = force ? OutcomeSource(std::vector<int>{force->m, force->hidden, force->k}) : OutcomeSource(rng);

    BttResult res{encrypted, {}, {}, {}, 1.0, {}};
    Transcript& tr = res.transcript;
    Register reg;
    reg.add("A.data", encrypted.amplitudes());
    reg.add_joint({"A.anc", "B.half"}, ebit_amplitudes());
    res.a_views.push_back(reg.reduced({"A.data"}));

    reg.gate(gates::t(), {"A.data"});
    tr.add("A", "local-op", {{"gate", "T"}, {"wires", "data"}});
    res.a_views.push_back(reg.reduced({"A.data"}));

    reg.gate(gates::cx(), {"A.data", "A.anc"});
    tr.add("A", "local-op", {{"gate", "CX"}, {"wires", "data,anc"}});
    const int m = reg.measure("A.anc", gates::identity(2), src, res.probability);
    tr.add("A", "measure", {{"wire", "anc"}, {"basis", "Z"}, {"outcome", bit(m)}});
    res.a_views.push_back(reg.reduced({"A.data"}));

    const int hidden = src.next(0.5);
    PRBox box(0, hidden);
    const auto [alpha, beta] = box.call(m, key.a);
    tr.add("A", "pr-box-call", {{"box", "0"}, {"input", bit(m)}, {"output", bit(alpha)}});

    const int k = reg.measure("B.half", client_basis(key.a), src, res.probability);
    tr.add("B", "measure", {{"wire", "half"}, {"basis", key.a ? "SdgH" : "X"}, {"outcome", bit(k)}});
    tr.add("B", "pr-box-call", {{"box", "0"}, {"input", bit(key.a)}, {"output", bit(beta)}});
    res.a_views.push_back(reg.reduced({"A.data"}));

    tr.add("A", "broadcast", {{"alpha", bit(alpha)}});
    res.new_key = {key.a, key.b ^ k ^ alpha ^ beta};
    tr.add("B", "local-op", {{"key_a", bit(res.new_key.a)}, {"key_b", bit(res.new_key.b)}});

    res.output = StateVector::normalized(HilbertSpec::qubits(1), reg.state({"A.data"}));
    res.branch = {m, k, hidden};
    return res;
}

std::vector<BttResult> btt_all_branches(const StateVector& encrypted, const PauliKey& key) {
    std::vector<BttResult> out;
    Rng unused(0);
    for (int m = 0; m < 2; ++m)
        for (int k = 0; k < 2; ++k)
            for (int h = 0; h < 2; ++h) {
                ResourcePool pool{1, 1};
                out.push_back(btt(encrypted, key, pool, unused, BttBranch{m, k, h}));
            }
    return out;
}

// ---------------------------------------------------------------------------
// PMQC

void PmqcProgram::validate() const {
    if (qubits < 1 || qubits > 2) throw InvariantError("blind programs support one or two logical qubits");
    if (static_cast<int>(pre.size()) != qubits || static_cast<int>(post.size()) != qubits)
        throw InvariantError("gate lists must cover every logical qubit");
    if (cz && qubits != 2) throw InvariantError("CZ needs two logical qubits");
    for (int q = 0; q < qubits; ++q)
        if (pre[static_cast<std::size_t>(q)].size() + post[static_cast<std::size_t>(q)].size() > 4)
            throw InvariantError("at most four gates per logical qubit");
}

int PmqcProgram::t_count() const {
    int n = 0;
    for (const auto* side : {&pre, &post})
        for (const auto& row : *side) n += static_cast<int>(std::count(row.begin(), row.end(), LogicalGate::T));
    return n;
}

int PmqcProgram::h_count() const {
    int n = 0;
    for (const auto* side : {&pre, &post})
        for (const auto& row : *side) n += static_cast<int>(std::count(row.begin(), row.end(), LogicalGate::H));
    return n;
}

int PmqcProgram::physical_qubits() const { return qubits + h_count() + 2 * t_count(); }

Mat PmqcProgram::unitary() const {
    validate();
    const HilbertSpec spec = HilbertSpec::qubits(qubits);
    const auto d = static_cast<Eigen::Index>(spec.total_dim());
    Mat u = Mat::Identity(d, d);
    auto run = [&](const std::vector<std::vector<LogicalGate>>& side) {
        for (int q = 0; q < qubits; ++q)
            for (LogicalGate g : side[static_cast<std::size_t>(q)])
                u = apply_on_columns(spec, u, g == LogicalGate::H ? gates::h() : gates::t(), std::vector<int>{q});
    };
    run(pre);
    if (cz) u = apply_on_columns(spec, u, gates::cz(), std::vector<int>{0, 1});
    run(post);
    return u;
}

PmqcProgram PmqcProgram::random(int qubits, Rng& rng) {
    std::uniform_int_distribution<int> count(1, 4);
    std::bernoulli_distribution coin(0.5);
    for (;;) {
        PmqcProgram p;
        p.qubits = qubits;
        p.cz = qubits == 2;
        p.pre.resize(static_cast<std::size_t>(qubits));
        p.post.resize(static_cast<std::size_t>(qubits));
        for (int q = 0; q < qubits; ++q) {
            const int n = count(rng);
            std::uniform_int_distribution<int> split(0, n);
            const int before = split(rng);
            for (int g = 0; g < n; ++g) {
                const LogicalGate gate = coin(rng) ? LogicalGate::T : LogicalGate::H;
                (g < before ? p.pre : p.post)[static_cast<std::size_t>(q)].push_back(gate);
            }
        }
        if (p.physical_qubits() <= kPmqcMaxQubits) return p;
    }
}

namespace {

struct SplitKey {
    int xa = 0, za = 0, xb = 0, zb = 0;
};

class PmqcMachine {
  public:
    PmqcMachine(const PmqcProgram& prog, const StateVector& enc, const std::vector<PauliKey>& keys,
                ResourcePool& pool, OutcomeSource& src, PmqcResult& res)
        : prog_(prog), pool_(pool), src_(src), res_(res) {
        std::vector<std::string> labels;
        for (int q = 0; q < prog.qubits; ++q) {
            current_.push_back(site_label(q));
            labels.push_back(current_.back());
            keys_.push_back({0, 0, keys[static_cast<std::size_t>(q)].a, keys[static_cast<std::size_t>(q)].b});
        }
        reg_.add_joint(labels, enc.amplitudes());
        view();
    }

    void run() {
        gates(prog_.pre);
        if (prog_.cz) cz();
        gates(prog_.post);

        std::map<std::string, std::string> bc;
        for (int q = 0; q < prog_.qubits; ++q) {
            bc["xA" + std::to_string(q)] = bit(keys_[static_cast<std::size_t>(q)].xa);
            bc["zA" + std::to_string(q)] = bit(keys_[static_cast<std::size_t>(q)].za);
        }
        res_.transcript.add("A", "broadcast", bc);
        std::map<std::string, std::string> fin;
        for (int q = 0; q < prog_.qubits; ++q) {
            const auto& k = keys_[static_cast<std::size_t>(q)];
            res_.keys.push_back({k.xa ^ k.xb, k.za ^ k.zb});
            fin["a" + std::to_string(q)] = bit(res_.keys.back().a);
            fin["b" + std::to_string(q)] = bit(res_.keys.back().b);
        }
        res_.transcript.add("B", "local-op", fin);
        res_.output = StateVector::normalized(HilbertSpec::qubits(prog_.qubits), reg_.state(current_));
    }

  private:
    std::string site_label(int q) { return "r" + std::to_string(q) + ".s" + std::to_string(sites_[q]++); }

    void view() {
        // Tails and ancillas are traced out; A's view is its logical sites.
        res_.a_views.push_back(reg_.reduced(current_));
    }

    void gates(const std::vector<std::vector<LogicalGate>>& side) {
        for (int q = 0; q < prog_.qubits; ++q)
            for (LogicalGate g : side[static_cast<std::size_t>(q)]) {
                if (g == LogicalGate::H) {
                    h_step(q, false);
                } else {
                    t_step(q);
                }
                view();
            }
    }

    // CZ to a fresh |+> site, then the current site is read out in the X
    // basis, or in the Y basis (columns S H) when `y_basis` is set.
    void h_step(int q, bool y_basis) {
        auto& cur = current_[static_cast<std::size_t>(q)];
        const std::string next = site_label(q);
        reg_.add(next, ket_plus());
        res_.transcript.add("A", "local-op", {{"prepare", next}, {"state", "+"}});
        reg_.gate(gates::cz(), {cur, next});
        res_.transcript.add("A", "local-op", {{"gate", "CZ"}, {"wires", cur + "," + next}});
        const Mat basis = y_basis ? Mat(gates::s() * gates::h()) : gates::h();
        const int s = reg_.measure(cur, basis, src_, res_.probability);
        res_.outcomes.push_back(s);
        res_.transcript.add("A", "measure", {{"wire", cur}, {"basis", y_basis ? "Y" : "X"}, {"outcome", bit(s)}});
        auto& k = keys_[static_cast<std::size_t>(q)];
        k = {s ^ k.za, k.xa, k.zb, k.xb};
        cur = next;
    }

    void t_step(int q) {
        const std::string cur = current_[static_cast<std::size_t>(q)];
        auto& k = keys_[static_cast<std::size_t>(q)];
        reg_.gate(gates::t(), {cur});
        res_.transcript.add("A", "local-op", {{"gate", "T"}, {"wires", cur}});

        pool_.take_ebit();
        pool_.take_box();
        ++res_.t_events;
        const int box_id = res_.t_events - 1;
        reg_.add_joint({"A.anc", "B.tail"}, ebit_amplitudes());
        reg_.gate(gates::cx(), {cur, "A.anc"});
        res_.transcript.add("A", "local-op", {{"gate", "CX"}, {"wires", cur + ",anc"}});
        const int m = reg_.measure("A.anc", gates::identity(2), src_, res_.probability);
        res_.outcomes.push_back(m);
        res_.transcript.add("A", "measure", {{"wire", "anc"}, {"basis", "Z"}, {"outcome", bit(m)}});
        view_with_tail();

        PRBox box(box_id, src_.next(0.5));
        const auto [alpha, beta] = box.call(k.xa ^ m, k.xb);
        res_.transcript.add("A", "pr-box-call",
                            {{"box", std::to_string(box_id)}, {"input", bit(k.xa ^ m)}, {"output", bit(alpha)}});
        const int kb = reg_.measure("B.tail", client_basis(k.xb), src_, res_.probability);
        res_.outcomes.push_back(kb);
        res_.transcript.add("B", "measure", {{"wire", "tail"}, {"basis", k.xb ? "SdgH" : "X"}, {"outcome", bit(kb)}});
        res_.transcript.add("B", "pr-box-call",
                            {{"box", std::to_string(box_id)}, {"input", bit(k.xb)}, {"output", bit(beta)}});

        const bool y_basis = k.xa != 0;
        k.za ^= alpha ^ k.xa;
        k.zb ^= kb ^ beta;
        h_step(q, y_basis);
        h_step(q, false);
    }

    void view_with_tail() { res_.a_views.push_back(reg_.reduced(current_)); }

    void cz() {
        reg_.gate(gates::cz(), {current_[0], current_[1]});
        res_.transcript.add("A", "local-op", {{"gate", "CZ"}, {"wires", current_[0] + "," + current_[1]}});
        auto& k0 = keys_[0];
        auto& k1 = keys_[1];
        k0.za ^= k1.xa;
        k0.zb ^= k1.xb;
        k1.za ^= k0.xa;
        k1.zb ^= k0.xb;
        view();
    }

    const PmqcProgram& prog_;
    ResourcePool& pool_;
    OutcomeSource& src_;
    PmqcResult& res_;
    Register reg_;
    std::vector<std::string> current_;
    std::vector<SplitKey> keys_;
    std::map<int, int> sites_;
};

} // namespace

PmqcResult pmqc_run(const PmqcProgram& program, const StateVector& encrypted, const std::vector<PauliKey>& keys,
                    ResourcePool& pool, OutcomeSource& outcomes) {
    program.validate();
    if (encrypted.spec() != HilbertSpec::qubits(program.qubits))
        throw InvariantError("input must hold one qubit per logical row");
    if (static_cast<int>(keys.size()) != program.qubits) throw InvariantError("one key per logical qubit required");
    const int phys = program.physical_qubits();
    if (phys > kPmqcMaxQubits)
        throw CapError("program needs " + std::to_string(phys) + " cluster qubits, limit is " +
                       std::to_string(kPmqcMaxQubits));
    const int need = program.t_count();
    if (pool.ebits - pool.ebits_used < need)
        throw ResourceError("program needs " + std::to_string(need) + " ebits, " +
                            std::to_string(pool.ebits - pool.ebits_used) + " available");
    if (pool.pr_boxes - pool.boxes_used < need)
        throw ResourceError("program needs " + std::to_string(need) + " PR boxes, " +
                            std::to_string(pool.pr_boxes - pool.boxes_used) + " available");

    PmqcResult res{encrypted, {}, {}, 0, 0, 0, phys, 1.0, {}, {}};
    const int ebits0 = pool.ebits_used;
    const int boxes0 = pool.boxes_used;
    PmqcMachine machine(program, encrypted, keys, pool, outcomes, res);
    machine.run();
    res.ebits_used = pool.ebits_used - ebits0;
    res.boxes_used = pool.boxes_used - boxes0;
    return res;
}

double pmqc_privacy_deviation(const PmqcProgram& program, const StateVector& plain, Rng& rng) {
    const int q = program.qubits;
    std::vector<PauliKey> keys(static_cast<std::size_t>(q));
    ResourcePool pool{program.t_count(), program.t_count()};
    OutcomeSource sampled(rng);
    pmqc_run(program, pauli_encrypt(plain, keys), keys, pool, sampled);
    const std::vector<int> history = sampled.history();

    std::vector<Mat> avg;
    double weight = 0.0;
    const int combos = 1 << (2 * q);
    for (int c = 0; c < combos; ++c) {
        for (int k = 0; k < q; ++k) keys[static_cast<std::size_t>(k)] = {(c >> (2 * k)) & 1, (c >> (2 * k + 1)) & 1};
        ResourcePool p{program.t_count(), program.t_count()};
        OutcomeSource forced(history);
        const auto res = pmqc_run(program, pauli_encrypt(plain, keys), keys, p, forced);
        if (avg.empty()) avg.assign(res.a_views.size(), Mat::Zero(res.a_views.front().rows(), res.a_views.front().cols()));
        for (std::size_t i = 0; i < res.a_views.size(); ++i) avg[i] += res.probability * res.a_views[i];
        weight += res.probability;
    }
    double dev = 0.0;
    for (Mat& m : avg) {
        m /= weight;
        const Mat target = Mat::Identity(m.rows(), m.cols()) / static_cast<double>(m.rows());
        dev = std::max(dev, (m - target).cwiseAbs().maxCoeff());
    }
    return dev;
}

// ---------------------------------------------------------------------------
// MBQC

Mat mbqc_target(const std::vector<double>& angles) {
    Mat g = gates::identity(2);
    for (double phi : angles) g = gates::h() * gates::phase(-phi) * g;
    return g;
}

Circuit mbqc_circuit(const std::vector<double>& angles, bool adaptive) {
    const int n = static_cast<int>(angles.size()) + 1;
    if (n < 2 || n > 6) throw InvariantError("cluster row must have between 2 and 6 qubits");
    Circuit c(HilbertSpec::qubits(n));
    for (int j = 1; j < n; ++j) c.gate("H", {j});
    for (int j = 0; j + 1 < n; ++j) c.gate("CZ", {j, j + 1});

    auto name = [](int j) { return "s" + std::to_string(j); };
    // Enumerates assignments of the outcomes in `mask` and hands each one over.
    auto for_assignments = [&](unsigned mask, auto&& fn) {
        std::vector<int> idx;
        for (int j = 0; j < n; ++j)
            if (mask & (1u << j)) idx.push_back(j);
        for (unsigned a = 0; a < (1u << idx.size()); ++a) {
            OutcomeRecord when;
            unsigned bits = 0;
            for (std::size_t t = 0; t < idx.size(); ++t) {
                const int v = (a >> t) & 1u;
                when[name(idx[t])] = v;
                if (v) bits |= 1u << idx[t];
            }
            fn(when, bits);
        }
    };

    unsigned xm = 0, zm = 0;
    for (int j = 0; j + 1 < n; ++j) {
        const double phi = angles[static_cast<std::size_t>(j)];
        if (adaptive && xm != 0) {
            for_assignments(xm, [&](const OutcomeRecord& when, unsigned bits) {
                const double sign = (std::popcount(bits & xm) % 2) ? -1.0 : 1.0;
                if (phi != 0.0) c.cond(when, GateOp{gates::phase(-sign * phi), {j}, "Rz"});
            });
        } else if (phi != 0.0) {
            c.gate(gates::phase(-phi), {j}, "Rz");
        }
        c.measure(j, Basis::X, name(j));
        const unsigned nx = (1u << j) ^ zm;
        zm = xm;
        xm = nx;
    }
    for_assignments(xm | zm, [&](const OutcomeRecord& when, unsigned bits) {
        const bool px = std::popcount(bits & xm) % 2;
        const bool pz = std::popcount(bits & zm) % 2;
        if (!px && !pz) return;
        Mat g = gates::identity(2);
        if (px) g = gates::x() * g;
        if (pz) g = gates::z() * g;
        c.cond(when, GateOp{g, {n - 1}, "fix"});
    });
    for (int j = 0; j + 1 < n; ++j) c.discard(j);
    return c;
}

std::vector<BranchOutcome> mbqc_gate(const StateVector& input, const std::vector<double>& angles, bool adaptive) {
    if (input.spec() != HilbertSpec::qubits(1)) throw InvariantError("mbqc_gate expects a single-qubit input");
    const Circuit c = mbqc_circuit(angles, adaptive);
    StateVector full = input;
    for (int j = 1; j < c.wires().size(); ++j) full = tensor(full, StateVector::basis(HilbertSpec::qubits(1), 0));
    return simulate(c, full);
}

} // namespace uqres
