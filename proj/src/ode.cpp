#include "deltachannel/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "deltachannel/errors.hpp"

namespace deltachannel {

namespace {

namespace odeint = boost::numeric::odeint;

using State = std::array<cplx, 2>;
using Stepper = odeint::runge_kutta_fehlberg78<State>;

constexpr double rescale_high = 1e64;
constexpr double rescale_low = 1e-64;

void rescale(State& s, double& log_scale) {
    const double mag = std::max(std::abs(s[0]), std::abs(s[1]));
    if (mag > rescale_high || (mag > 0.0 && mag < rescale_low)) {
        s[0] /= mag;
        s[1] /= mag;
        log_scale += std::log(mag);
    }
}

// One smooth segment; the potential has no breakpoints strictly inside (a, b).
void integrate_segment(const PotentialSpec& potential, double energy, double factor, double a,
                       double b, State& state, double& log_scale, const IntegratorConfig& config,
                       std::size_t& steps) {
    const double span = b - a;
    if (span == 0.0) return;

    // Stage evaluations at the segment ends must see the potential from the
    // inside, which matters at Step discontinuities.
    const double seg_lo = std::min(a, b);
    const double seg_hi = std::max(a, b);
    const double inset = std::min(std::abs(span) * 0.25,
                                  1e-13 * std::max({1.0, std::abs(a), std::abs(b)}));
    auto rhs = [&](const State& s, State& ds, double x) {
        const double xi = std::clamp(x, seg_lo + inset, seg_hi - inset);
        ds[0] = s[1];
        ds[1] = factor * (potential_value(potential, xi) - energy) * s[0];
    };

    auto stepper = odeint::make_controlled<Stepper>(config.abs_tol, config.rel_tol);

    // Start from a step resolving the local wavelength.
    const double local = std::abs(factor * (potential_value(potential, 0.5 * (a + b)) - energy));
    double dt = std::min(std::abs(span), 0.1 / std::max(1.0, std::sqrt(local)));
    dt = std::copysign(dt, span);
    const double min_dt = 1e-13 * std::max({1.0, std::abs(a), std::abs(b)});

    double x = a;
    while ((span > 0.0 && x < b) || (span < 0.0 && x > b)) {
        if ((span > 0.0 && x + dt > b) || (span < 0.0 && x + dt < b)) dt = b - x;
        if (++steps > config.max_steps) {
            throw IntegrationFailure("step limit exceeded near x = " + std::to_string(x));
        }
        const double before = x;
        const auto res = stepper.try_step(rhs, state, x, dt);
        if (res == odeint::fail) {
            if (std::abs(dt) < min_dt) {
                throw IntegrationFailure("step size underflow near x = " + std::to_string(x));
            }
            continue;
        }
        if (!std::isfinite(state[0].real()) || !std::isfinite(state[1].real()) ||
            !std::isfinite(state[0].imag()) || !std::isfinite(state[1].imag())) {
            throw IntegrationFailure("non-finite solution near x = " + std::to_string(before));
        }
        rescale(state, log_scale);
    }
}

}  // namespace

WaveState propagate(const PotentialSpec& potential, double energy, const UnitSystem& units,
                    double x_from, double x_to, WaveState start, const IntegratorConfig& config) {
    State state{start.psi, start.dpsi};
    double log_scale = start.log_scale;
    if (x_from == x_to) return start;

    const double lo = std::min(x_from, x_to);
    const double hi = std::max(x_from, x_to);
    std::vector<double> nodes{x_from};
    std::vector<double> inner;
    for (double bp : breakpoints(potential)) {
        if (bp > lo && bp < hi) inner.push_back(bp);
    }
    if (x_to > x_from) {
        std::sort(inner.begin(), inner.end());
    } else {
        std::sort(inner.begin(), inner.end(), std::greater<>());
    }
    inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
    nodes.insert(nodes.end(), inner.begin(), inner.end());
    nodes.push_back(x_to);

    const double factor = units.kinetic_factor();
    std::size_t steps = 0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        integrate_segment(potential, energy, factor, nodes[i], nodes[i + 1], state, log_scale,
                          config, steps);
    }
    return {state[0], state[1], log_scale};
}

}  // namespace deltachannel
