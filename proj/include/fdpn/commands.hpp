#pragma once

// Configured runs behind the command-line front end and the C API.

#include <string>

#include "fdpn/report.hpp"
#include "fdpn/run_config.hpp"

namespace fdpn {

inline constexpr const char* kVersion = "0.1.0";

/// Runs the sweep described by the configuration. The result's metadata holds
/// the tool version, command, metric definition, every effective key and the
/// input lines verbatim.
SweepResult run_configured_sweep(const RunConfig& cfg, SweepKind kind);

/// One trial (index 0) of the configured scenario, as a per-sample CSV.
std::string run_single_dump(const RunConfig& cfg);

/// Complexity table for the configured estimator parameters over one frame.
std::string run_opcount(const RunConfig& cfg);

struct SelftestReport {
    bool passed = true;
    std::string text;  // one "PASS name" / "FAIL name: detail" line per check
};

/// Fast internal consistency checks; runs in well under a second.
SelftestReport run_selftest();

}  // namespace fdpn
