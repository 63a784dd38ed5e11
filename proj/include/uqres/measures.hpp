#pragma once

// Static resource measures: the coherence family (l1, logarithmic, relative
// entropy), entanglement entropy of pure states, and distance-based measures
// against a finite sample of free states.

#include <optional>
#include <string>
#include <vector>

#include "uqres/qkernel.hpp"

namespace uqres {

// Finite stand-in for a free set. All members share one layout.
class FreeSetSample {
  public:
    FreeSetSample(std::vector<DensityOperator> states, std::string label);

    const std::vector<DensityOperator>& states() const { return states_; }
    const std::string& label() const { return label_; }
    const HilbertSpec& spec() const { return states_.front().spec(); }

    // {|i><i|} plus the maximally mixed state.
    static FreeSetSample incoherent_basis(const HilbertSpec& spec);

  private:
    std::vector<DensityOperator> states_;
    std::string label_;
};

enum class Metric { trace, relative_entropy };

struct MeasureReport {
    std::string measure;
    double value = 0.0;
    std::string basis = "computational";
    double tolerance = kInvariantTol;
    // Set when the value is a minimum over a finite sample, i.e. only an
    // upper bound on the minimum over the whole free set.
    bool upper_bound = false;
};

// Coherence measures. With `basis` given, its columns are the reference basis
// and the measure is evaluated on basis^dagger rho basis.
double l1_coherence(const DensityOperator& rho, const std::optional<Mat>& basis = std::nullopt);
double log_coherence(const DensityOperator& rho, const std::optional<Mat>& basis = std::nullopt);
double rel_ent_coherence(const DensityOperator& rho, const std::optional<Mat>& basis = std::nullopt);

// Raw-matrix variants, used where a positive operator is already at hand.
double l1_coherence(const Mat& rho);
double rel_ent_coherence(const Mat& rho);

// S(tr_B |psi><psi|) with `part_a` the subsystems kept.
double entanglement_entropy(const StateVector& psi, std::span<const int> part_a);
// Rejects anything whose purity differs from 1 by more than 1e-10.
double entanglement_entropy(const DensityOperator& rho, std::span<const int> part_a);

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);
// S(rho || sigma) in bits; +infinity when supp rho is not inside supp sigma.
double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma);
double distance(const DensityOperator& rho, const DensityOperator& sigma, Metric metric);

// min over the sample of d(rho, sigma).
double distance_resource(const DensityOperator& rho, const FreeSetSample& free, Metric metric);
// max over resources of distance_resource.
double set_distance(const std::vector<DensityOperator>& resources, const FreeSetSample& free,
                    Metric metric);

// Named lookup used by reports: "l1", "log", "rel".
MeasureReport measure_report(const std::string& name, const DensityOperator& rho);

} // namespace uqres
