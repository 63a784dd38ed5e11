#pragma once

// Dynamic coherence: Choi states, classical duals and interference power of
// channels, plus the additivity check for gates sandwiched with multiplexers.

#include <vector>

#include "uqres/qkernel.hpp"

namespace uqres {

struct DualState {
    enum class Kind { choi, classical };
    Kind kind;
    // Lives on control (first, the channel input layout) then output.
    DensityOperator state;
};

// (1/d) sum_ij |i><j| (x) E(|i><j|)
DualState choi_state(const QuantumChannel& channel);
// (1/d) sum_i P_i (x) E(P_i)
DualState classical_dual(const QuantumChannel& channel);

enum class InterferenceMeasure { l1, relative_entropy, log };

// Average output coherence over computational-basis inputs. For `log` this is
// log2(1 + l1 power), the log-coherence of the classical dual.
double interference_power(const QuantumChannel& channel, InterferenceMeasure measure);
// Fast path for unitaries: column-wise formula on |U_ij|^2.
double interference_power(const Mat& unitary,
                          InterferenceMeasure measure = InterferenceMeasure::relative_entropy);
double interference_power(const UnitaryOp& u,
                          InterferenceMeasure measure = InterferenceMeasure::relative_entropy);

// Block-diagonal controlled unitary sum_i P_i (x) U_i. The control is the
// leading factor.
class Multiplexer {
  public:
    explicit Multiplexer(std::vector<Mat> branches);

    int control_dim() const { return static_cast<int>(branches_.size()); }
    int target_dim() const { return static_cast<int>(branches_.front().rows()); }
    const std::vector<Mat>& branches() const { return branches_; }
    Mat matrix() const;

    static Multiplexer random(int control_dim, int target_dim, Rng& rng);

  private:
    std::vector<Mat> branches_;
};

struct AdditivityResidual {
    double i_v = 0.0;
    double i_cu = 0.0;
    double i_cu_after_v = 0.0;  // I(CU (V x 1))
    double i_v_after_cu = 0.0;  // I((V x 1) CU)
    double residual_cu_after_v = 0.0;
    double residual_v_after_cu = 0.0;
};

// Relative-entropy residuals |I(CU(V x 1)) - I(V) - I(CU)| and the reversed
// composition. V must act on the control factor.
AdditivityResidual interference_additivity_check(const Mat& v, const Multiplexer& cu);

} // namespace uqres
