#pragma once

#include "deltachannel/ode.hpp"
#include "deltachannel/potential.hpp"

namespace deltachannel {

enum class GreensMethod { analytic, numeric };

/// Coincident-point value G0(x, x; E) of the outgoing resolvent [E - H]^-1
/// of one uncoupled channel.
struct GreensPointValue {
    cplx value{};
    Openness left{};
    Openness right{};
    GreensMethod method = GreensMethod::analytic;
    /// Largest relative change of the Wronskian between the box edges and the
    /// evaluation point. Zero on the analytic path.
    double wronskian_drift = 0.0;
};

/// Outgoing/decaying solutions evaluated at the evaluation point, plus
/// their Wronskian u_left * u_right' - u_left' * u_right (scales folded in
/// relative to the stored states).
struct BasisSolutionPair {
    WaveState u_left;
    WaveState u_right;
    cplx wronskian{};
    double wronskian_drift = 0.0;
};

GreensPointValue greens_constant(double v0, double energy, const UnitSystem& units);

/// Builds the basis pair for `p` at `x_pt`: u_left starts at box.x_min as
/// exp(-ik(x - x_min)) (open) or exp(+kappa(x - x_min)) (closed), u_right at
/// box.x_max as exp(+ik(x - x_max)) or exp(-kappa(x - x_max)).
BasisSolutionPair basis_pair(const PotentialSpec& p, double x_pt, double energy,
                             const UnitSystem& units, const Box& box,
                             const IntegratorConfig& quad);

GreensPointValue greens_point_numeric(const PotentialSpec& p, double x_pt, double energy,
                                      const UnitSystem& units, const Box& box,
                                      const IntegratorConfig& quad);

/// Analytic for Constant, numeric for everything else.
GreensPointValue greens_point(const PotentialSpec& p, double x_pt, double energy,
                              const UnitSystem& units, const Box& box,
                              const IntegratorConfig& quad);

}  // namespace deltachannel
