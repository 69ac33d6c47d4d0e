#pragma once

#include <optional>
#include <vector>

#include "deltachannel/model.hpp"
#include "deltachannel/ode.hpp"

namespace deltachannel {

enum class SolveMode { exact, born };

const char* mode_name(SolveMode mode);

/// Complex point scatterer g * delta(x - position) in the channel-1 equation.
struct EffectiveDelta {
    double position = 0.0;
    cplx strength{};
};

struct PsiSample {
    double position;
    cplx value;
};

/// Channel-1 scattering state for unit incidence from the left:
///   psi -> exp(i k_in x) + r exp(-i k_in x)   as x -> -inf
///   psi -> t exp(i k_out x)                   as x -> +inf (open right)
///   psi -> t exp(-kappa x)                    as x -> +inf (closed right)
struct EffectiveSolution {
    std::vector<PsiSample> psi_at;
    cplx r{};
    cplx t{};
    double k_in = 0.0;
    std::optional<double> k_out;
    SolveMode mode = SolveMode::exact;

    /// psi at `position`; throws std::out_of_range if it was not sampled.
    cplx psi(double position) const;
};

/// One delta per coupled channel with strength K0^2 * G0_n(x_n, x_n; E);
/// deltas sharing a position are merged. Output is sorted by position.
std::vector<EffectiveDelta> build_effective_deltas(const ScatteringModel& model, double energy,
                                                   const IntegratorConfig& quad);

/// Sorts by position and sums strengths of coincident deltas.
std::vector<EffectiveDelta> merge_deltas(std::vector<EffectiveDelta> deltas);

/// Dispatches to the transfer-matrix path for Constant/Step channel-1
/// potentials and to numeric integration otherwise.
EffectiveSolution solve_effective(const PotentialSpec& channel1,
                                  const std::vector<EffectiveDelta>& deltas, double energy,
                                  const UnitSystem& units, const Box& box,
                                  const IntegratorConfig& quad);

/// Closed-form 2x2 transfer matrices; channel1 must be piecewise constant.
EffectiveSolution solve_effective_transfer(const PotentialSpec& channel1,
                                           const std::vector<EffectiveDelta>& deltas,
                                           double energy, const UnitSystem& units);

/// Integrates from the right box edge to the left one, applying the delta
/// derivative jumps on the way.
EffectiveSolution solve_effective_numeric(const PotentialSpec& channel1,
                                          const std::vector<EffectiveDelta>& deltas,
                                          double energy, const UnitSystem& units, const Box& box,
                                          const IntegratorConfig& quad);

/// Scattering state of the bare channel-1 potential, sampled at `positions`.
EffectiveSolution solve_uncoupled_wave(const PotentialSpec& channel1,
                                       const std::vector<double>& positions, double energy,
                                       const UnitSystem& units, const Box& box,
                                       const IntegratorConfig& quad);

}  // namespace deltachannel
