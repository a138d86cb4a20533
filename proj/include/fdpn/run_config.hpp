#pragma once

// Flat line-oriented `key = value` run configuration. Nested settings use
// dotted keys (ofdm.n_fft); `#` starts a comment. Every key is optional and
// unknown keys are rejected with the offending line number.

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fdpn/link_sim.hpp"

namespace fdpn {

enum class SweepKind { Beta, AttenDiff, Window };

const char* sweep_kind_name(SweepKind kind);

class RunConfig {
public:
    RunConfig() = default;

    static RunConfig parse(std::string_view text, const std::string& origin = "<config>");
    static RunConfig load(const std::string& path);

    /// Sets a key as if it had appeared in the file. Throws ConfigError for
    /// unknown keys or malformed values.
    void set(const std::string& key, const std::string& value);
    bool is_set(const std::string& key) const { return explicit_.count(key) != 0; }

    /// Effective value (explicit or default); empty string for unset optionals.
    std::string get(const std::string& key) const;

    /// Builds and validates the scenario. Throws ConfigError.
    LinkScenario scenario() const;

    /// sweep.values, or the default grid for the given sweep.
    std::vector<double> sweep_values(SweepKind kind) const;
    std::vector<double> sweep_sir_values() const;

    /// Every known key with its effective value, sorted by key.
    std::vector<std::pair<std::string, std::string>> effective() const;

    /// Non-blank input lines, verbatim.
    const std::vector<std::string>& source_lines() const { return source_lines_; }
    const std::string& origin() const { return origin_; }

    static std::vector<std::string> known_keys();

private:
    std::map<std::string, std::string> explicit_;
    std::vector<std::string> source_lines_;
    std::string origin_ = "<config>";
};

}  // namespace fdpn
