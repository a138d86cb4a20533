#pragma once

// Text outputs: sweep CSV with `#` metadata, per-sample trial dumps and the
// complexity table.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fdpn/estimators.hpp"
#include "fdpn/link_sim.hpp"

namespace fdpn {

/// Scientific notation, 12 significant digits.
std::string format_number(double v);

/// Metric definition recorded with every result.
extern const char* const kMetricDefinition;

/// `#`-prefixed `key = value` metadata lines, then the header
/// x_value,<col>_mean_db,<col>_ci95_db,... and one row per x value.
std::string sweep_csv(const SweepResult& r);

/// Inverse of sweep_csv. Values are recovered at printed precision.
SweepResult parse_sweep_csv(std::string_view text);

/// Per-sample dump: n, true combined phase, estimated phase, |residual|^2.
std::string single_dump_csv(const TrialArtifacts& a,
                            const std::vector<std::pair<std::string, std::string>>& metadata);

/// Tab-separated complexity table for the three time-domain estimators plus
/// the analytic TD-MMSE row.
std::string opcount_tsv(const OpCountParams& params, std::size_t n_samples);

/// Writes the whole string or throws IoError.
void write_text_file(const std::string& path, std::string_view content);

}  // namespace fdpn
