#include "uqres/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace uqres {

namespace {

Mat rotated(const DensityOperator& rho, const std::optional<Mat>& basis) {
    if (!basis) return rho.matrix();
    if (!is_unitary(*basis) || basis->rows() != rho.matrix().rows())
        throw InvariantError("coherence basis must be a unitary of matching size");
    return basis->adjoint() * rho.matrix() * *basis;
}

void require_spec(const DensityOperator& a, const DensityOperator& b) {
    if (!(a.spec() == b.spec())) throw InvariantError("states live on different layouts");
}

} // namespace

FreeSetSample::FreeSetSample(std::vector<DensityOperator> states, std::string label)
    : states_(std::move(states)), label_(std::move(label)) {
    if (states_.empty()) throw InvariantError("free-set sample is empty");
    for (const auto& s : states_)
        if (!(s.spec() == states_.front().spec())) throw InvariantError("free-set sample mixes layouts");
}

FreeSetSample FreeSetSample::incoherent_basis(const HilbertSpec& spec) {
    std::vector<DensityOperator> states;
    for (std::size_t i = 0; i < spec.total_dim(); ++i) states.push_back(StateVector::basis(spec, i).density());
    states.push_back(DensityOperator::maximally_mixed(spec));
    return FreeSetSample(std::move(states), "incoherent");
}

double l1_coherence(const Mat& rho) {
    double c = 0.0;
    for (Eigen::Index i = 0; i < rho.rows(); ++i)
        for (Eigen::Index j = 0; j < rho.cols(); ++j)
            if (i != j) c += std::abs(rho(i, j));
    return c;
}

double rel_ent_coherence(const Mat& rho) {
    std::vector<double> diag(static_cast<std::size_t>(rho.rows()));
    for (Eigen::Index i = 0; i < rho.rows(); ++i) diag[static_cast<std::size_t>(i)] = std::max(0.0, rho(i, i).real());
    return std::max(0.0, shannon_entropy(diag) - von_neumann_entropy(rho));
}

double l1_coherence(const DensityOperator& rho, const std::optional<Mat>& basis) {
    return l1_coherence(rotated(rho, basis));
}

double log_coherence(const DensityOperator& rho, const std::optional<Mat>& basis) {
    return std::log2(1.0 + l1_coherence(rho, basis));
}

double rel_ent_coherence(const DensityOperator& rho, const std::optional<Mat>& basis) {
    return rel_ent_coherence(rotated(rho, basis));
}

double entanglement_entropy(const StateVector& psi, std::span<const int> part_a) {
    if (part_a.empty() || static_cast<int>(part_a.size()) >= psi.spec().size())
        throw InvariantError("cut must leave both sides nonempty");
    const Mat rho = psi.amplitudes() * psi.amplitudes().adjoint();
    return von_neumann_entropy(partial_trace(psi.spec(), rho, part_a));
}

double entanglement_entropy(const DensityOperator& rho, std::span<const int> part_a) {
    if (std::abs(rho.purity() - 1.0) > kInvariantTol)
        throw InvariantError("entanglement entropy needs a pure state");
    if (part_a.empty() || static_cast<int>(part_a.size()) >= rho.spec().size())
        throw InvariantError("cut must leave both sides nonempty");
    return von_neumann_entropy(partial_trace(rho.spec(), rho.matrix(), part_a));
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
    require_spec(rho, sigma);
    const RVec ev = hermitian_eigenvalues(rho.matrix() - sigma.matrix());
    return 0.5 * ev.cwiseAbs().sum();
}

double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
    require_spec(rho, sigma);
    Eigen::SelfAdjointEigenSolver<Mat> es(sigma.matrix());
    const Mat& v = es.eigenvectors();
    double cross = 0.0;
    for (Eigen::Index k = 0; k < v.cols(); ++k) {
        const double w = (v.col(k).adjoint() * rho.matrix() * v.col(k))(0).real();
        const double lam = es.eigenvalues()(k);
        if (lam <= kInvariantTol) {
            if (w > kInvariantTol) return std::numeric_limits<double>::infinity();
            continue;
        }
        if (w > 0.0) cross -= w * std::log2(lam);
    }
    return std::max(0.0, cross - von_neumann_entropy(rho));
}

double distance(const DensityOperator& rho, const DensityOperator& sigma, Metric metric) {
    return metric == Metric::trace ? trace_distance(rho, sigma) : relative_entropy(rho, sigma);
}

double distance_resource(const DensityOperator& rho, const FreeSetSample& free, Metric metric) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& sigma : free.states()) best = std::min(best, distance(rho, sigma, metric));
    return best;
}

double set_distance(const std::vector<DensityOperator>& resources, const FreeSetSample& free, Metric metric) {
    if (resources.empty()) throw InvariantError("resource list is empty");
    double worst = 0.0;
    for (const auto& r : resources) worst = std::max(worst, distance_resource(r, free, metric));
    return worst;
}

MeasureReport measure_report(const std::string& name, const DensityOperator& rho) {
    MeasureReport r;
    r.measure = name;
    if (name == "l1") {
        r.value = l1_coherence(rho);
    } else if (name == "log") {
        r.value = log_coherence(rho);
    } else if (name == "rel") {
        r.value = rel_ent_coherence(rho);
    } else {
        throw ParseError("unknown measure: " + name);
    }
    return r;
}

} // namespace uqres
