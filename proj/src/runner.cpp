#include "deltachannel/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "deltachannel/errors.hpp"
#include "deltachannel/greens.hpp"
#include "deltachannel/oracle.hpp"

namespace deltachannel {

namespace {

const char* status_name(PointStatus s) {
    switch (s) {
        case PointStatus::ok: return "ok";
        case PointStatus::skipped: return "skipped";
        case PointStatus::failed: return "failed";
    }
    return "failed";
}

const char* openness_name(const Openness& o) { return o.is_open() ? "open" : "closed"; }

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (v == 0.0) v = 0.0;  // no "-0"
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string format_results_csv(const std::vector<TransitionResult>& results,
                               const std::vector<std::optional<TransitionResult>>& oracle,
                               const std::vector<int>& channels) {
    std::ostringstream os;
    os << "E,R,T_elastic";
    for (int n : channels) os << ",T_1" << n;
    os << ",defect";
    if (!oracle.empty()) {
        for (int n : channels) os << ",oracle_T_1" << n;
    }
    os << ",status\n";

    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        os << format_number(r.energy) << ',' << format_number(r.R) << ','
           << format_number(r.T_elastic);
        for (int n : channels) os << ',' << format_number(r.transition(n));
        os << ',' << format_number(r.unitarity_defect);
        if (!oracle.empty()) {
            for (int n : channels) {
                os << ',' << format_number(oracle[i] ? oracle[i]->transition(n) : std::nan(""));
            }
        }
        os << ',' << status_name(r.status) << '\n';
    }
    return os.str();
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    for (const auto& w : config.warnings) err << "warning: " << w << '\n';

    SweepOptions options;
    options.point.mode = config.mode;
    options.point.lenient = config.lenient;
    options.jobs = config.jobs;
    const auto results = energy_sweep(config.model, config.grid, options, config.quad);

    std::vector<int> channels;
    for (const auto& ch : config.model.coupled) channels.push_back(ch.coupling.channel_index);
    std::sort(channels.begin(), channels.end());

    std::vector<std::optional<TransitionResult>> oracle;
    if (config.compare_oracle) {
        oracle.resize(results.size());
        double max_dev = 0.0;
        std::size_t compared = 0;
        for (std::size_t i = 0; i < results.size(); ++i) {
            if (results[i].status == PointStatus::failed) continue;
            try {
                oracle[i] = oracle::solve_coupled_exact(config.model, results[i].energy, config.quad);
            } catch (const std::exception& e) {
                err << "oracle failed at E = " << format_number(results[i].energy) << ": "
                    << e.what() << '\n';
                continue;
            }
            for (int n : channels) {
                const double dev = std::abs(results[i].transition(n) - oracle[i]->transition(n));
                if (!std::isnan(dev)) max_dev = std::max(max_dev, dev);
            }
            ++compared;
        }
        err << "oracle: max |dT_1n| = " << format_number(max_dev) << " over " << compared
            << " points\n";
    }

    out << format_results_csv(results, oracle, channels);
    out.flush();
    if (!out) {
        err << "error: failed to write results\n";
        return 1;
    }

    bool any_bad = false;
    for (const auto& r : results) {
        if (r.status == PointStatus::ok) continue;
        any_bad = true;
        err << (r.status == PointStatus::skipped ? "skipped" : "failed") << " at E = "
            << format_number(r.energy) << ": " << r.message << '\n';
    }
    if (!any_bad) return 0;
    return config.lenient ? 2 : 1;
}

std::string greens_table(const RunConfig& config, int channel) {
    const auto& model = config.model;
    const auto it = std::find_if(model.coupled.begin(), model.coupled.end(), [channel](const auto& c) {
        return c.coupling.channel_index == channel;
    });
    if (it == model.coupled.end()) {
        throw std::invalid_argument("model has no channel " + std::to_string(channel));
    }

    std::ostringstream os;
    os << "E,re_G,im_G,openness\n";
    for (double e : config.grid.points()) {
        os << format_number(e) << ',';
        try {
            const auto g = greens_point(it->potential, it->coupling.crossing_point, e, model.units,
                                        model.box, config.quad);
            os << format_number(g.value.real()) << ',' << format_number(g.value.imag()) << ','
               << openness_name(g.left) << '/' << openness_name(g.right) << '\n';
        } catch (const ThresholdSingularity&) {
            os << "nan,nan,threshold\n";
        } catch (const PoleProximity&) {
            os << "nan,nan,pole\n";
        } catch (const Error&) {
            os << "nan,nan,failed\n";
        }
    }
    return os.str();
}

}  // namespace deltachannel
