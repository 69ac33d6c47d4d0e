#pragma once

#include <string>
#include <vector>

#include "deltachannel/potential.hpp"

namespace deltachannel {

/// Delta coupling between channel 1 and channel `channel_index` acting at `crossing_point`.
struct CouplingSpec {
    int channel_index = 2;
    double crossing_point = 0.0;
    double bare_strength = 0.0;  // K0, energy * length
};

struct CoupledChannel {
    PotentialSpec potential;
    CouplingSpec coupling;
};

/// Star-topology model: channel 1 couples to every other channel, nothing else couples.
struct ScatteringModel {
    UnitSystem units;
    PotentialSpec channel1;
    std::vector<CoupledChannel> coupled;
    Box box;
};

struct EnergyGrid {
    double e_min = 0.0;
    double e_max = 0.0;
    int steps = 1;

    /// Uniform points including both ends; a single e_min when steps == 1.
    std::vector<double> points() const;
};

struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::string> warnings;

    bool ok() const { return violations.empty(); }
};

ValidationReport validate_model(const ScatteringModel& model);

/// Violations of the grid invariants (e_min <= e_max, steps >= 1).
std::vector<std::string> validate_grid(const EnergyGrid& grid);

}  // namespace deltachannel
