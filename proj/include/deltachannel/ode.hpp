#pragma once

#include <complex>
#include <cstddef>

#include "deltachannel/potential.hpp"

namespace deltachannel {

using cplx = std::complex<double>;

struct IntegratorConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    /// Relative Wronskian size below which a Green's function is refused.
    double pole_tol = 1e-8;
    std::size_t max_steps = 2'000'000;
};

/// (psi, psi') at a point, stored as exp(log_scale) * (psi, dpsi) so that
/// growing solutions can be rescaled without overflow.
struct WaveState {
    cplx psi{};
    cplx dpsi{};
    double log_scale = 0.0;
};

/// Integrates psi'' = (2m/hbar^2) (V(x) - E) psi from x_from to x_to (either
/// direction) with an embedded-error adaptive Runge-Kutta scheme. Steps are
/// split at the potential's breakpoints. Throws IntegrationFailure when step
/// control breaks down.
WaveState propagate(const PotentialSpec& potential, double energy, const UnitSystem& units,
                    double x_from, double x_to, WaveState start, const IntegratorConfig& config);

/// u1 * u2' - u1' * u2 without the scale factors.
inline cplx raw_wronskian(const WaveState& u1, const WaveState& u2) {
    return u1.psi * u2.dpsi - u1.dpsi * u2.psi;
}

}  // namespace deltachannel
