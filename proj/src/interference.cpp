#include "uqres/interference.hpp"

#include <cmath>

#include "uqres/measures.hpp"

namespace uqres {

namespace {

void require_square(const QuantumChannel& channel) {
    if (!channel.is_square()) throw InvariantError("dual states need a channel with equal input and output dimension");
}

Mat projector(Eigen::Index d, Eigen::Index i, Eigen::Index j) {
    Mat m = Mat::Zero(d, d);
    m(i, j) = 1.0;
    return m;
}

} // namespace

DualState choi_state(const QuantumChannel& channel) {
    require_square(channel);
    const auto d = static_cast<Eigen::Index>(channel.in_spec().total_dim());
    Mat out = Mat::Zero(d * d, d * d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            out.block(i * d, j * d, d, d) = channel.apply_to_operator(projector(d, i, j));
    out /= static_cast<double>(d);
    out = 0.5 * (out + out.adjoint()).eval();
    return {DualState::Kind::choi, DensityOperator(channel.in_spec().concat(channel.out_spec()), std::move(out))};
}

DualState classical_dual(const QuantumChannel& channel) {
    require_square(channel);
    const auto d = static_cast<Eigen::Index>(channel.in_spec().total_dim());
    Mat out = Mat::Zero(d * d, d * d);
    for (Eigen::Index i = 0; i < d; ++i) out.block(i * d, i * d, d, d) = channel.apply_to_operator(projector(d, i, i));
    out /= static_cast<double>(d);
    out = 0.5 * (out + out.adjoint()).eval();
    return {DualState::Kind::classical,
            DensityOperator(channel.in_spec().concat(channel.out_spec()), std::move(out))};
}

double interference_power(const QuantumChannel& channel, InterferenceMeasure measure) {
    require_square(channel);
    const auto d = static_cast<Eigen::Index>(channel.in_spec().total_dim());
    double acc = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
        Mat out = channel.apply_to_operator(projector(d, i, i));
        out = 0.5 * (out + out.adjoint()).eval();
        acc += measure == InterferenceMeasure::relative_entropy ? rel_ent_coherence(out) : l1_coherence(out);
    }
    acc /= static_cast<double>(d);
    if (measure == InterferenceMeasure::log) return std::log2(1.0 + acc);
    return acc;
}

double interference_power(const Mat& u, InterferenceMeasure measure) {
    if (!is_unitary(u, kChannelTol)) throw InvariantError("interference_power: matrix is not unitary");
    const Eigen::Index d = u.rows();
    double acc = 0.0;
    std::vector<double> p(static_cast<std::size_t>(d));
    for (Eigen::Index j = 0; j < d; ++j) {
        if (measure == InterferenceMeasure::relative_entropy) {
            for (Eigen::Index i = 0; i < d; ++i) p[static_cast<std::size_t>(i)] = std::norm(u(i, j));
            acc += shannon_entropy(p);
        } else {
            const double s = u.col(j).cwiseAbs().sum();
            acc += s * s - 1.0;
        }
    }
    acc /= static_cast<double>(d);
    if (measure == InterferenceMeasure::log) return std::log2(1.0 + acc);
    return std::max(0.0, acc);
}

double interference_power(const UnitaryOp& u, InterferenceMeasure measure) {
    return interference_power(u.matrix(), measure);
}

Multiplexer::Multiplexer(std::vector<Mat> branches) : branches_(std::move(branches)) {
    if (branches_.size() < 2) throw InvariantError("multiplexer needs at least two branches");
    for (const Mat& b : branches_) {
        if (b.rows() != branches_.front().rows() || !is_unitary(b, kChannelTol))
            throw InvariantError("multiplexer branches must be unitaries of one size");
    }
}

Mat Multiplexer::matrix() const {
    const Eigen::Index c = control_dim();
    const Eigen::Index t = target_dim();
    Mat m = Mat::Zero(c * t, c * t);
    for (Eigen::Index i = 0; i < c; ++i) m.block(i * t, i * t, t, t) = branches_[static_cast<std::size_t>(i)];
    return m;
}

Multiplexer Multiplexer::random(int control_dim, int target_dim, Rng& rng) {
    std::vector<Mat> branches;
    for (int i = 0; i < control_dim; ++i) branches.push_back(random_unitary(target_dim, rng));
    return Multiplexer(std::move(branches));
}

AdditivityResidual interference_additivity_check(const Mat& v, const Multiplexer& cu) {
    if (v.rows() != cu.control_dim()) throw InvariantError("V must act on the multiplexer control");
    const Mat vx = kron(v, Mat::Identity(cu.target_dim(), cu.target_dim()));
    const Mat m = cu.matrix();
    AdditivityResidual r;
    r.i_v = interference_power(v);
    r.i_cu = interference_power(m);
    r.i_cu_after_v = interference_power(Mat(m * vx));
    r.i_v_after_cu = interference_power(Mat(vx * m));
    r.residual_cu_after_v = std::abs(r.i_cu_after_v - r.i_v - r.i_cu);
    r.residual_v_after_cu = std::abs(r.i_v_after_cu - r.i_v - r.i_cu);
    return r;
}

} // namespace uqres
