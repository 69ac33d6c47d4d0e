#include "deltachannel/model.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace deltachannel {

namespace {

std::string num(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

void check_potential(const PotentialSpec& p, const std::string& label, const Box& box,
                     ValidationReport& report) {
    if (const auto* tab = std::get_if<potentials::Tabulated>(&p)) {
        if (tab->samples.size() < 2) {
            report.violations.push_back(label + ": tabulated potential needs at least 2 samples");
            return;
        }
        for (std::size_t i = 1; i < tab->samples.size(); ++i) {
            if (!(tab->samples[i].x > tab->samples[i - 1].x)) {
                report.violations.push_back(label +
                                            ": tabulated samples not strictly increasing in x");
                return;
            }
        }
    }
    if (const auto* lin = std::get_if<potentials::Linear>(&p); lin && !(lin->x_lo < lin->x_hi)) {
        report.violations.push_back(label + ": linear window needs x_lo < x_hi");
    }

    for (Side side : {Side::left, Side::right}) {
        const double edge = side == Side::left ? box.x_min : box.x_max;
        const char* name = side == Side::left ? "left" : "right";
        const double at_edge = potential_value(p, edge);
        if (!std::isfinite(at_edge)) {
            report.violations.push_back(label + ": potential not finite at the " + name +
                                        " box edge");
            continue;
        }
        const double asym = asymptote(p, side, box);
        if (std::abs(at_edge - asym) > 1e-6) {
            report.warnings.push_back(label + ": v(" + num(edge) + ") = " + num(at_edge) +
                                      " differs from the " + name + " asymptote " + num(asym));
        }
        const auto limit = intrinsic_limit(p, side);
        if (limit && std::abs(*limit - asym) > 1e-6) {
            report.warnings.push_back(label + ": " + name + " box edge is not in the asymptotic region (limit " +
                                      num(*limit) + ", edge value " + num(asym) + ")");
        }
    }
}

}  // namespace

std::vector<double> EnergyGrid::points() const {
    std::vector<double> out;
    if (steps < 1) return out;
    out.reserve(static_cast<std::size_t>(steps));
    if (steps == 1) {
        out.push_back(e_min);
        return out;
    }
    const double de = (e_max - e_min) / (steps - 1);
    for (int i = 0; i < steps; ++i) out.push_back(i == steps - 1 ? e_max : e_min + i * de);
    return out;
}

std::vector<std::string> validate_grid(const EnergyGrid& grid) {
    std::vector<std::string> out;
    if (!(grid.e_min <= grid.e_max)) out.push_back("e_min > e_max");
    if (grid.steps < 1) out.push_back("steps must be >= 1");
    return out;
}

ValidationReport validate_model(const ScatteringModel& model) {
    ValidationReport report;
    const auto& box = model.box;

    if (!(model.units.hbar > 0.0)) report.violations.push_back("hbar must be positive");
    if (!(model.units.mass > 0.0)) report.violations.push_back("mass must be positive");
    if (!(box.x_min < box.x_max)) {
        report.violations.push_back("box needs x_min < x_max");
        return report;
    }

    check_potential(model.channel1, "channel 1", box, report);

    std::set<int> seen;
    for (const auto& ch : model.coupled) {
        const auto& c = ch.coupling;
        const std::string label = "channel " + std::to_string(c.channel_index);
        if (c.channel_index < 2) report.violations.push_back(label + ": channel index must be >= 2");
        if (!seen.insert(c.channel_index).second) {
            report.violations.push_back(label + ": duplicate channel index");
        }
        if (!(c.bare_strength >= 0.0)) {
            report.violations.push_back(label + ": K0 must be non-negative");
        }
        if (c.crossing_point == box.x_min || c.crossing_point == box.x_max) {
            report.violations.push_back(label + ": crossing at box edge");
        } else if (!(c.crossing_point > box.x_min && c.crossing_point < box.x_max)) {
            report.violations.push_back(label + ": crossing outside box");
        }
        check_potential(ch.potential, label, box, report);
    }
    return report;
}

}  // namespace deltachannel
