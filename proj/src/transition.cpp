#include "deltachannel/transition.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "deltachannel/errors.hpp"

namespace deltachannel {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

struct ChannelTerm {
    int channel;
    double crossing;
    double k0;
    std::optional<GreensPointValue> g;  // empty when skipped
};

}  // namespace

double TransitionResult::transition(int channel) const {
    for (const auto& p : T_1n) {
        if (p.channel == channel) return p.value;
    }
    return nan;
}

double transition_probability(double K0, const GreensPointValue& g, cplx psi_at_crossing,
                              double k_in, const UnitSystem& units) {
    const double absorbed = 2.0 * K0 * K0 / units.hbar * (-g.value.imag()) * std::norm(psi_at_crossing);
    const double incident = units.hbar * k_in / units.mass;
    return absorbed / incident;
}

std::pair<double, double> elastic_rt(const EffectiveSolution& sol) {
    const double R = std::norm(sol.r);
    const double T = sol.k_out ? *sol.k_out / sol.k_in * std::norm(sol.t) : 0.0;
    return {R, T};
}

double unitarity_defect(double R, double T_elastic, const std::vector<ChannelProbability>& T_1n) {
    double total = R + T_elastic;
    for (const auto& p : T_1n) {
        if (!std::isnan(p.value)) total += p.value;
    }
    return std::abs(total - 1.0);
}

TransitionResult compute_point(const ScatteringModel& model, double energy,
                               const PointOptions& options, const IntegratorConfig& quad) {
    Openness incidence;
    try {
        incidence = channel_openness(model.channel1, energy, Side::left, model.units, model.box);
    } catch (const ThresholdSingularity& e) {
        rethrow_for_channel(e, 1);
    }
    if (!incidence.is_open()) {
        throw PreconditionError("channel 1 is closed on the incidence side at E = " +
                                    std::to_string(energy),
                                1);
    }

    std::vector<ChannelTerm> terms;
    std::string skipped;
    for (const auto& ch : model.coupled) {
        const auto& c = ch.coupling;
        ChannelTerm term{c.channel_index, c.crossing_point, c.bare_strength, std::nullopt};
        try {
            term.g = greens_point(ch.potential, c.crossing_point, energy, model.units, model.box,
                                  quad);
        } catch (const ThresholdSingularity& e) {
            if (!options.lenient) rethrow_for_channel(e, c.channel_index);
            skipped += (skipped.empty() ? "" : " ") + std::string("channel ") +
                       std::to_string(c.channel_index) + " at threshold;";
        } catch (const PoleProximity& e) {
            rethrow_for_channel(e, c.channel_index);
        } catch (const IntegrationFailure& e) {
            rethrow_for_channel(e, c.channel_index);
        }
        terms.push_back(term);
    }
    std::sort(terms.begin(), terms.end(),
              [](const ChannelTerm& a, const ChannelTerm& b) { return a.channel < b.channel; });

    std::vector<EffectiveDelta> deltas;
    std::vector<double> crossings;
    for (const auto& term : terms) {
        if (!term.g) continue;
        deltas.push_back({term.crossing, term.k0 * term.k0 * term.g->value});
        crossings.push_back(term.crossing);
    }

    const EffectiveSolution sol =
        options.mode == SolveMode::exact
            ? solve_effective(model.channel1, deltas, energy, model.units, model.box, quad)
            : solve_uncoupled_wave(model.channel1, crossings, energy, model.units, model.box, quad);

    TransitionResult result;
    result.energy = energy;
    result.mode = options.mode;
    std::tie(result.R, result.T_elastic) = elastic_rt(sol);
    for (const auto& term : terms) {
        const double T = term.g ? transition_probability(term.k0, *term.g, sol.psi(term.crossing),
                                                         sol.k_in, model.units)
                                : nan;
        result.T_1n.push_back({term.channel, T});
    }
    result.unitarity_defect = unitarity_defect(result.R, result.T_elastic, result.T_1n);
    if (!skipped.empty()) {
        result.status = PointStatus::skipped;
        result.message = skipped;
    }
    return result;
}

std::vector<TransitionResult> energy_sweep(const ScatteringModel& model, const EnergyGrid& grid,
                                           const SweepOptions& options,
                                           const IntegratorConfig& quad) {
    const std::vector<double> energies = grid.points();
    std::vector<TransitionResult> out(energies.size());

    auto evaluate = [&](std::size_t i) {
        try {
            out[i] = compute_point(model, energies[i], options.point, quad);
        } catch (const std::exception& e) {
            TransitionResult failed;
            failed.energy = energies[i];
            failed.R = failed.T_elastic = failed.unitarity_defect = nan;
            failed.mode = options.point.mode;
            for (const auto& ch : model.coupled) {
                failed.T_1n.push_back({ch.coupling.channel_index, nan});
            }
            std::sort(failed.T_1n.begin(), failed.T_1n.end(),
                      [](const auto& a, const auto& b) { return a.channel < b.channel; });
            failed.status = PointStatus::failed;
            failed.message = e.what();
            out[i] = std::move(failed);
        }
    };

    const std::size_t jobs =
        std::clamp<std::size_t>(static_cast<std::size_t>(std::max(options.jobs, 1)), 1,
                                std::max<std::size_t>(energies.size(), 1));
    if (jobs == 1) {
        for (std::size_t i = 0; i < energies.size(); ++i) evaluate(i);
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (std::size_t w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < energies.size(); i = next++) evaluate(i);
        });
    }
    for (auto& t : workers) t.join();
    return out;
}

}  // namespace deltachannel
