#include "uqres/mps.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/QR>

namespace uqres {

namespace {

std::size_t ipow(std::size_t b, int e) {
    std::size_t r = 1;
    for (int k = 0; k < e; ++k) r *= b;
    return r;
}

int log_base(std::size_t value, int d) {
    int e = 0;
    std::size_t v = 1;
    while (v < value) {
        v *= static_cast<std::size_t>(d);
        ++e;
    }
    if (v != value) return -1;
    return e;
}

Mat pauli(char c) {
    switch (c) {
    case 'X':
        return gates::x();
    case 'Y':
        return gates::y();
    case 'Z':
        return gates::z();
    case 'I':
        return gates::identity(2);
    }
    throw InvariantError(std::string("unknown Pauli letter ") + c);
}

} // namespace

// ---------------------------------------------------------------------------
// MPSChain

MPSChain::MPSChain(std::vector<std::vector<Mat>> tensors, Mat boundary)
    : tensors_(std::move(tensors)), boundary_(std::move(boundary)) {
    if (tensors_.empty()) throw InvariantError("MPS chain needs at least one site");
    const auto d = tensors_.front().size();
    const auto bond = boundary_.rows();
    if (d < 1 || bond < 1 || boundary_.cols() != bond) throw InvariantError("MPS boundary must be square");
    for (const auto& site : tensors_) {
        if (site.size() != d) throw InvariantError("MPS sites disagree on the physical dimension");
        for (const Mat& a : site)
            if (a.rows() != bond || a.cols() != bond) throw InvariantError("MPS tensor has the wrong bond dimension");
    }
}

MPSChain MPSChain::uniform(int n, const std::vector<Mat>& site, Mat boundary) {
    return MPSChain(std::vector<std::vector<Mat>>(static_cast<std::size_t>(n), site), std::move(boundary));
}

MPSChain MPSChain::random(int n, int d, int bond, Rng& rng) {
    std::vector<std::vector<Mat>> tensors(static_cast<std::size_t>(n));
    auto gaussian = [&](int rows, int cols) {
        Mat m(rows, cols);
        for (int c = 0; c < cols; ++c) m.col(c) = random_complex_gaussian(static_cast<std::size_t>(rows), rng);
        return m;
    };
    for (auto& site : tensors)
        for (int i = 0; i < d; ++i) site.push_back(gaussian(bond, bond));
    return MPSChain(std::move(tensors), gaussian(bond, bond));
}

MPSChain ghz_mps(int n) {
    Mat a0 = Mat::Zero(2, 2);
    Mat a1 = Mat::Zero(2, 2);
    a0(0, 0) = 1;
    a1(1, 1) = 1;
    return MPSChain::uniform(n, {a0, a1}, Mat::Identity(2, 2));
}

MPSChain cluster_mps(int n) {
    std::vector<Mat> site(2, Mat::Zero(2, 2));
    const double r = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < 2; ++i)
        for (int b = 0; b < 2; ++b) site[static_cast<std::size_t>(i)](i, b) = (i * b) % 2 ? -r : r;
    Mat boundary = Mat::Zero(2, 2);
    boundary(0, 0) = boundary(0, 1) = 1;
    return MPSChain::uniform(n, site, boundary);
}

// ---------------------------------------------------------------------------
// Ebits and valence bonds

StateVector make_ebit(int d) {
    if (d < 2) throw InvariantError("ebit dimension must be >= 2");
    const HilbertSpec spec({d, d});
    const Vec plus0 = apply_on(spec, StateVector::basis(spec, 0).amplitudes(), gates::fourier(d), std::vector<int>{0});
    return StateVector::normalized(spec, apply_on(spec, plus0, gates::csum(d), std::vector<int>{0, 1}));
}

StateVector vbs_state(const std::vector<Mat>& ops, int d, int ebits) {
    if (ebits < 1 || ops.empty()) throw InvariantError("vbs_state needs ebits and operators");
    const StateVector omega = make_ebit(d);
    Vec v = Vec::Ones(1);
    for (int k = 0; k < ebits; ++k) {
        Vec next(v.size() * omega.amplitudes().size());
        for (Eigen::Index a = 0; a < v.size(); ++a)
            next.segment(a * omega.amplitudes().size(), omega.amplitudes().size()) = v(a) * omega.amplitudes();
        v = std::move(next);
    }
    // v is indexed [done_out][remaining halves]; consume one group at a time.
    std::vector<int> out_dims;
    std::size_t done = 1;
    int used = 0;
    for (const Mat& p : ops) {
        const int g = log_base(static_cast<std::size_t>(p.cols()), d);
        if (g < 1 || used + g > 2 * ebits) throw InvariantError("operator does not match the remaining ebit halves");
        const std::size_t gdim = static_cast<std::size_t>(p.cols());
        const std::size_t rest = ipow(static_cast<std::size_t>(d), 2 * ebits - used - g);
        const auto odim = static_cast<std::size_t>(p.rows());
        Vec nv = Vec::Zero(static_cast<Eigen::Index>(done * odim * rest));
        for (std::size_t a = 0; a < done; ++a)
            for (std::size_t r = 0; r < rest; ++r) {
                Vec in(static_cast<Eigen::Index>(gdim));
                for (std::size_t gi = 0; gi < gdim; ++gi) in(static_cast<Eigen::Index>(gi)) = v(static_cast<Eigen::Index>((a * gdim + gi) * rest + r));
                const Vec o = p * in;
                for (std::size_t oi = 0; oi < odim; ++oi) nv(static_cast<Eigen::Index>((a * odim + oi) * rest + r)) = o(static_cast<Eigen::Index>(oi));
            }
        v = std::move(nv);
        done *= odim;
        used += g;
        if (p.rows() >= 2) out_dims.push_back(static_cast<int>(p.rows()));
    }
    if (used != 2 * ebits) throw InvariantError("operators do not cover every ebit half");
    if (v.norm() < 1e-12) throw InvariantError("valence-bond operators annihilate the state");
    return StateVector::normalized(HilbertSpec(out_dims), std::move(v));
}

// ---------------------------------------------------------------------------
// Contraction and sequential preparation

StateVector contract(const MPSChain& chain) {
    const int n = chain.length();
    const int d = chain.phys_dim();
    const HilbertSpec spec = HilbertSpec::uniform(n, d);
    const auto bond = chain.bond_dim();
    Vec amps(static_cast<Eigen::Index>(spec.total_dim()));
    for (std::size_t idx = 0; idx < spec.total_dim(); ++idx) {
        const auto digits = spec.digits(idx);
        Mat m = Mat::Identity(bond, bond);
        for (int s = 0; s < n; ++s) m = chain.tensors()[static_cast<std::size_t>(s)][static_cast<std::size_t>(digits[static_cast<std::size_t>(s)])] * m;
        amps(static_cast<Eigen::Index>(idx)) = (chain.boundary() * m).trace();
    }
    if (amps.norm() < 1e-12) throw InvariantError("MPS contracts to the zero vector");
    return StateVector::normalized(spec, std::move(amps));
}

PreparedState sequential_prepare(const MPSChain& chain) {
    const int n = chain.length();
    const int d = chain.phys_dim();
    const int bond = chain.bond_dim();
    // A one-dimensional bond is left out of the register entirely.
    const int lead = bond > 1 ? 1 : 0;
    const HilbertSpec sites_spec = HilbertSpec::uniform(n, d);
    const HilbertSpec reg = lead ? HilbertSpec({bond}).concat(sites_spec) : sites_spec;

    // Left-canonical gauge via a QR sweep from the last site down.
    std::vector<std::vector<Mat>> q(chain.tensors());
    Mat carry = Mat::Identity(bond, bond);
    for (int s = n - 1; s >= 0; --s) {
        auto& site = q[static_cast<std::size_t>(s)];
        Mat stacked(d * bond, bond);
        for (int i = 0; i < d; ++i) stacked.block(i * bond, 0, bond, bond) = carry * site[static_cast<std::size_t>(i)];
        Eigen::HouseholderQR<Mat> qr(stacked);
        const Mat qthin = qr.householderQ() * Mat::Identity(d * bond, bond);
        carry = qr.matrixQR().topRows(bond).triangularView<Eigen::Upper>();
        for (int i = 0; i < d; ++i) site[static_cast<std::size_t>(i)] = qthin.block(i * bond, 0, bond, bond);
    }
    const Mat boundary = carry * chain.boundary();
    const double bnorm = boundary.norm();
    if (bnorm < 1e-12) throw InvariantError("MPS chain cannot be normalised");

    // Dilations: column beta*d of U_s is sum_i A^i|beta>|i>.
    std::vector<Mat> unitaries;
    for (int s = 0; s < n; ++s) {
        Mat iso(bond * d, bond);
        for (int b = 0; b < bond; ++b)
            for (int a = 0; a < bond; ++a)
                for (int i = 0; i < d; ++i) iso(a * d + i, b) = q[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)](a, b);
        const Mat completed = complete_to_unitary(iso);
        Mat u(bond * d, bond * d);
        int extra = bond;
        for (int col = 0; col < bond * d; ++col) {
            if (col % d == 0) {
                u.col(col) = completed.col(col / d);
            } else {
                u.col(col) = completed.col(extra++);
            }
        }
        unitaries.push_back(std::move(u));
    }

    const std::size_t sites = reg.total_dim() / static_cast<std::size_t>(bond);
    Vec total = Vec::Zero(static_cast<Eigen::Index>(sites));
    for (int beta = 0; beta < bond; ++beta) {
        std::vector<int> digits(static_cast<std::size_t>(n + lead), 0);
        digits[0] = lead ? beta : 0;
        Vec v = StateVector::basis(reg, digits).amplitudes();
        for (int s = 0; s < n; ++s) {
            const std::vector<int> wires = lead ? std::vector<int>{0, s + 1} : std::vector<int>{s};
            v = apply_on(reg, v, unitaries[static_cast<std::size_t>(s)], wires);
        }
        // <beta| B applied to the bond register.
        for (int a = 0; a < bond; ++a) {
            const cplx w = boundary(beta, a);
            if (w == cplx(0.0)) continue;
            total += w * v.segment(static_cast<Eigen::Index>(a) * static_cast<Eigen::Index>(sites), static_cast<Eigen::Index>(sites));
        }
    }
    const double norm2 = total.squaredNorm();
    if (norm2 < 1e-24) throw InvariantError("sequential preparation produced the zero vector");
    PreparedState out{StateVector::normalized(sites_spec, total),
                      norm2 / (static_cast<double>(bond) * bnorm * bnorm)};
    return out;
}

// ---------------------------------------------------------------------------
// Graph states

GraphSpec GraphSpec::line(int n) {
    GraphSpec g;
    g.n = n;
    for (int v = 0; v + 1 < n; ++v) g.edges.emplace_back(v, v + 1);
    return g;
}

void GraphSpec::validate() const {
    if (n < 1) throw InvariantError("graph needs at least one vertex");
    if (!tails.empty() && static_cast<int>(tails.size()) != n) throw InvariantError("tail flags must cover every vertex");
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= n || b >= n) throw InvariantError("edge endpoint out of range");
        if (a == b) throw InvariantError("self-loops are not allowed");
        if (!seen.insert({std::min(a, b), std::max(a, b)}).second) throw InvariantError("duplicate edge");
    }
}

int GraphSpec::tail_count() const {
    return static_cast<int>(std::count(tails.begin(), tails.end(), true));
}

std::vector<int> GraphSpec::neighbours(int v) const {
    std::vector<int> out;
    for (auto [a, b] : edges) {
        if (a == v) out.push_back(b);
        if (b == v) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

StateVector cluster_state(const GraphSpec& g, std::size_t cap) {
    g.validate();
    const int wires = g.n + g.tail_count();
    const HilbertSpec spec(std::vector<int>(static_cast<std::size_t>(wires), 2), cap);
    Vec v = StateVector::basis(spec, 0).amplitudes();
    int tail = g.n;
    for (int h = 0; h < g.n; ++h) {
        v = apply_on(spec, v, gates::h(), std::vector<int>{h});
        if (!g.tails.empty() && g.tails[static_cast<std::size_t>(h)])
            v = apply_on(spec, v, gates::cx(), std::vector<int>{h, tail++});
    }
    for (auto [a, b] : g.edges) v = apply_on(spec, v, gates::cz(), std::vector<int>{a, b});
    return StateVector::normalized(spec, std::move(v));
}

std::vector<PauliString> graph_stabilizers(const GraphSpec& g) {
    g.validate();
    std::vector<PauliString> out;
    int tail = g.n;
    for (int v = 0; v < g.n; ++v) {
        PauliString k{{v, 'X'}};
        const bool tailed = !g.tails.empty() && g.tails[static_cast<std::size_t>(v)];
        if (tailed) k.emplace_back(tail, 'X');
        for (int u : g.neighbours(v)) k.emplace_back(u, 'Z');
        out.push_back(std::move(k));
        if (tailed) {
            out.push_back({{v, 'Z'}, {tail, 'Z'}});
            ++tail;
        }
    }
    return out;
}

cplx pauli_expectation(const StateVector& psi, const PauliString& p) {
    Vec v = psi.amplitudes();
    for (auto [w, c] : p) v = apply_on(psi.spec(), v, pauli(c), std::vector<int>{w});
    return psi.amplitudes().dot(v);
}

} // namespace uqres
