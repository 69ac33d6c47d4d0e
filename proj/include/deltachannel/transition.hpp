#pragma once

#include <string>
#include <utility>
#include <vector>

#include "deltachannel/effective.hpp"
#include "deltachannel/greens.hpp"
#include "deltachannel/model.hpp"

namespace deltachannel {

struct ChannelProbability {
    int channel;
    double value;
};

enum class PointStatus { ok, skipped, failed };

struct TransitionResult {
    double energy = 0.0;
    double R = 0.0;
    double T_elastic = 0.0;
    /// Sorted by channel index. NaN for skipped channels.
    std::vector<ChannelProbability> T_1n;
    double unitarity_defect = 0.0;
    SolveMode mode = SolveMode::exact;
    PointStatus status = PointStatus::ok;
    /// Failure or skip reason; empty when status is ok.
    std::string message;

    /// Probability into `channel`; NaN if absent.
    double transition(int channel) const;
};

/// Absorbed flux at a complex delta divided by the incident flux:
///   (2 K0^2 / hbar) * (-Im G) * |psi|^2 / (hbar k_in / m).
double transition_probability(double K0, const GreensPointValue& g, cplx psi_at_crossing,
                              double k_in, const UnitSystem& units);

/// (R, T_elastic) from the asymptotic amplitudes.
std::pair<double, double> elastic_rt(const EffectiveSolution& sol);

struct PointOptions {
    SolveMode mode = SolveMode::exact;
    /// Skip channels whose threshold coincides with E instead of failing.
    bool lenient = false;
};

TransitionResult compute_point(const ScatteringModel& model, double energy,
                               const PointOptions& options, const IntegratorConfig& quad);

/// |R + T_elastic + sum T_1n - 1|, ignoring NaN entries.
double unitarity_defect(double R, double T_elastic, const std::vector<ChannelProbability>& T_1n);

struct SweepOptions {
    PointOptions point;
    int jobs = 1;
};

/// One record per grid point in grid order. Point failures are recorded
/// with status failed and NaN probabilities; the sweep never throws for them.
std::vector<TransitionResult> energy_sweep(const ScatteringModel& model, const EnergyGrid& grid,
                                           const SweepOptions& options,
                                           const IntegratorConfig& quad);

}  // namespace deltachannel
