#include "deltachannel/effective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "deltachannel/errors.hpp"
#include "deltachannel/greens.hpp"

namespace deltachannel {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double max_condition = 1e12;

struct Amplitudes {
    cplx incoming;  // coefficient of exp(+ikx)
    cplx outgoing;  // coefficient of exp(-ikx)
};

// 2-norm condition number of [[e, 1/e], [ik e, -ik/e]], e = exp(ikx).
// The phases do not change the singular values, so drop them.
double plane_wave_condition(double k) {
    const double a = 1.0 + k * k;
    const double b = std::abs(1.0 - k * k);
    const double s_max = std::sqrt(a + b);
    const double s_min = std::sqrt(std::max(a - b, 0.0));
    return s_min > 0.0 ? s_max / s_min : std::numeric_limits<double>::infinity();
}

// Splits (psi, psi') at x into A exp(ikx) + B exp(-ikx).
Amplitudes decompose(cplx psi, cplx dpsi, double k, double x) {
    if (plane_wave_condition(k) > max_condition) {
        throw NumericalBreakdown("plane-wave decomposition is ill-conditioned (k = " +
                                 std::to_string(k) + ")");
    }
    const cplx ratio = dpsi / (I * k);
    return {0.5 * (psi + ratio) * std::exp(-I * k * x), 0.5 * (psi - ratio) * std::exp(I * k * x)};
}

// (psi, psi') across a constant-potential segment of signed length d.
void free_transfer(cplx& psi, cplx& dpsi, cplx q2, double d) {
    const cplx q = std::sqrt(q2);
    const cplx qd = q * d;
    const cplx c = std::cos(qd);
    const cplx s_over_q = std::abs(qd) < 1e-8 ? d * (1.0 - qd * qd / 6.0) : std::sin(qd) / q;
    const cplx psi_new = c * psi + s_over_q * dpsi;
    const cplx dpsi_new = -q2 * s_over_q * psi + c * dpsi;
    psi = psi_new;
    dpsi = dpsi_new;
}

void check_incidence(const Openness& left) {
    if (!left.is_open()) {
        throw PreconditionError("channel 1 is closed on the incidence (left) side", 1);
    }
}

void check_amplitude(cplx a) {
    if (!(std::abs(a) > 0.0) || !std::isfinite(std::abs(a))) {
        throw NumericalBreakdown("incident amplitude vanished or overflowed");
    }
}

}  // namespace

const char* mode_name(SolveMode mode) {
    return mode == SolveMode::exact ? "exact" : "born";
}

cplx EffectiveSolution::psi(double position) const {
    for (const auto& s : psi_at) {
        if (s.position == position) return s.value;
    }
    throw std::out_of_range("psi not sampled at x = " + std::to_string(position));
}

std::vector<EffectiveDelta> merge_deltas(std::vector<EffectiveDelta> deltas) {
    std::sort(deltas.begin(), deltas.end(),
              [](const EffectiveDelta& a, const EffectiveDelta& b) { return a.position < b.position; });
    std::vector<EffectiveDelta> merged;
    for (const auto& d : deltas) {
        if (!merged.empty() && merged.back().position == d.position) {
            merged.back().strength += d.strength;
        } else {
            merged.push_back(d);
        }
    }
    return merged;
}

std::vector<EffectiveDelta> build_effective_deltas(const ScatteringModel& model, double energy,
                                                   const IntegratorConfig& quad) {
    check_incidence(channel_openness(model.channel1, energy, Side::left, model.units, model.box));
    std::vector<EffectiveDelta> deltas;
    deltas.reserve(model.coupled.size());
    for (const auto& ch : model.coupled) {
        const int n = ch.coupling.channel_index;
        GreensPointValue g;
        try {
            g = greens_point(ch.potential, ch.coupling.crossing_point, energy, model.units,
                             model.box, quad);
        } catch (const ThresholdSingularity& e) {
            rethrow_for_channel(e, n);
        } catch (const PoleProximity& e) {
            rethrow_for_channel(e, n);
        } catch (const IntegrationFailure& e) {
            rethrow_for_channel(e, n);
        }
        const double k0 = ch.coupling.bare_strength;
        deltas.push_back({ch.coupling.crossing_point, k0 * k0 * g.value});
    }
    return merge_deltas(std::move(deltas));
}

EffectiveSolution solve_effective_transfer(const PotentialSpec& channel1,
                                           const std::vector<EffectiveDelta>& deltas,
                                           double energy, const UnitSystem& units) {
    if (!is_piecewise_constant(channel1)) {
        throw PreconditionError("transfer-matrix path needs a piecewise-constant channel 1");
    }
    // Box is irrelevant for Constant/Step: asymptotes are the plateau values.
    const Box unused{};
    const Openness left = channel_openness(channel1, energy, Side::left, units, unused);
    const Openness right = channel_openness(channel1, energy, Side::right, units, unused);
    check_incidence(left);

    const auto sorted = merge_deltas(deltas);
    std::vector<double> nodes;
    for (const auto& d : sorted) nodes.push_back(d.position);
    for (double bp : breakpoints(channel1)) nodes.push_back(bp);
    if (nodes.empty()) nodes.push_back(0.0);
    std::sort(nodes.begin(), nodes.end(), std::greater<>());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    const double kf = units.kinetic_factor();
    double x = nodes.front();
    cplx psi, dpsi;
    if (right.is_open()) {
        psi = std::exp(I * right.wavenumber * x);
        dpsi = I * right.wavenumber * psi;
    } else {
        psi = std::exp(-right.wavenumber * x);
        dpsi = -right.wavenumber * psi;
    }

    EffectiveSolution sol;
    auto next_delta = sorted.rbegin();
    for (double node : nodes) {
        if (node != x) {
            const double v = potential_value(channel1, 0.5 * (x + node));
            free_transfer(psi, dpsi, kf * (energy - v), node - x);
            x = node;
        }
        if (next_delta != sorted.rend() && next_delta->position == node) {
            sol.psi_at.push_back({node, psi});
            dpsi -= kf * next_delta->strength * psi;
            ++next_delta;
        }
    }

    const Amplitudes amp = decompose(psi, dpsi, left.wavenumber, x);
    check_amplitude(amp.incoming);
    for (auto& s : sol.psi_at) s.value /= amp.incoming;
    std::reverse(sol.psi_at.begin(), sol.psi_at.end());
    sol.t = 1.0 / amp.incoming;
    sol.r = amp.outgoing / amp.incoming;
    sol.k_in = left.wavenumber;
    if (right.is_open()) sol.k_out = right.wavenumber;
    sol.mode = SolveMode::exact;
    return sol;
}

EffectiveSolution solve_effective_numeric(const PotentialSpec& channel1,
                                          const std::vector<EffectiveDelta>& deltas,
                                          double energy, const UnitSystem& units, const Box& box,
                                          const IntegratorConfig& quad) {
    const Openness left = channel_openness(channel1, energy, Side::left, units, box);
    const Openness right = channel_openness(channel1, energy, Side::right, units, box);
    check_incidence(left);

    const auto sorted = merge_deltas(deltas);
    for (const auto& d : sorted) {
        if (!(d.position > box.x_min && d.position < box.x_max)) {
            throw PreconditionError("delta at " + std::to_string(d.position) +
                                    " is not strictly inside the box");
        }
    }

    WaveState state;
    if (right.is_open()) {
        state.psi = std::exp(I * right.wavenumber * box.x_max);
        state.dpsi = I * right.wavenumber * state.psi;
    } else {
        state = {1.0, -right.wavenumber, -right.wavenumber * box.x_max};
    }

    const double kf = units.kinetic_factor();
    std::vector<WaveState> at_delta;
    double x = box.x_max;
    for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
        state = propagate(channel1, energy, units, x, it->position, state, quad);
        x = it->position;
        at_delta.push_back(state);
        state.dpsi -= kf * it->strength * state.psi;
    }
    state = propagate(channel1, energy, units, x, box.x_min, state, quad);

    const Amplitudes amp = decompose(state.psi, state.dpsi, left.wavenumber, box.x_min);
    check_amplitude(amp.incoming);

    EffectiveSolution sol;
    for (std::size_t i = 0; i < at_delta.size(); ++i) {
        const auto& s = at_delta[at_delta.size() - 1 - i];
        sol.psi_at.push_back(
            {sorted[i].position, s.psi / amp.incoming * std::exp(s.log_scale - state.log_scale)});
    }
    sol.t = std::exp(-state.log_scale) / amp.incoming;
    sol.r = amp.outgoing / amp.incoming;
    sol.k_in = left.wavenumber;
    if (right.is_open()) sol.k_out = right.wavenumber;
    sol.mode = SolveMode::exact;
    return sol;
}

EffectiveSolution solve_effective(const PotentialSpec& channel1,
                                  const std::vector<EffectiveDelta>& deltas, double energy,
                                  const UnitSystem& units, const Box& box,
                                  const IntegratorConfig& quad) {
    if (is_piecewise_constant(channel1)) {
        return solve_effective_transfer(channel1, deltas, energy, units);
    }
    return solve_effective_numeric(channel1, deltas, energy, units, box, quad);
}

EffectiveSolution solve_uncoupled_wave(const PotentialSpec& channel1,
                                       const std::vector<double>& positions, double energy,
                                       const UnitSystem& units, const Box& box,
                                       const IntegratorConfig& quad) {
    std::vector<EffectiveDelta> probes;
    probes.reserve(positions.size());
    for (double x : positions) probes.push_back({x, 0.0});
    EffectiveSolution sol = solve_effective(channel1, probes, energy, units, box, quad);
    sol.mode = SolveMode::born;
    return sol;
}

}  // namespace deltachannel
