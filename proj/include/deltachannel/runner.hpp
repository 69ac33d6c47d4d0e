#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "deltachannel/config.hpp"
#include "deltachannel/transition.hpp"

namespace deltachannel {

/// Fixed 12-significant-digit rendering; "nan" for NaN.
std::string format_number(double v);

/// CSV with header E,R,T_elastic,T_12,...,T_1N,defect[,oracle_T_12,...],status.
/// `oracle` must be empty or parallel to `results`.
std::string format_results_csv(const std::vector<TransitionResult>& results,
                               const std::vector<std::optional<TransitionResult>>& oracle,
                               const std::vector<int>& channels);

/// Sweeps the configuration and writes the CSV to `out`; diagnostics and
/// the oracle summary go to `err`. Returns 0 on success, 2 when points were
/// skipped or failed in lenient mode, 1 when a point failed otherwise.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// CSV E,re_G,im_G,openness for channel `channel` over the sweep grid.
/// Throws std::invalid_argument if the model has no such channel.
std::string greens_table(const RunConfig& config, int channel);

}  // namespace deltachannel
