#pragma once

// End-to-end full-duplex link: SI and SOI frames through oscillators and
// channels, power calibration at the digital-SIC input, estimation and
// cancellation, and Monte-Carlo sweeps of the resulting SI suppression.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fdpn/estimators.hpp"
#include "fdpn/impairments.hpp"
#include "fdpn/signal.hpp"

namespace fdpn {

/// Suppression values are clamped here; also returned when the residual is
/// exactly zero.
inline constexpr double kSuppressionCapDb = 300.0;

/// Level settings at or beyond +-300 dB switch a component off entirely
/// (exactly zero) instead of scaling it to a vanishing power.
inline constexpr double kOffDb = 300.0;

struct ChannelParams {
    double k_db = 30.0;
    std::size_t n_taps = 2;
    double decay_db = 20.0;  // exponential power-delay profile, dB per tap
};

struct LinkScenario {
    OfdmConfig ofdm;
    double beta_hz = 10.0;
    OscillatorMode osc_mode = OscillatorMode::Common;
    /// When set, the oscillators are replaced by a constant combined phase.
    std::optional<double> inject_phase_rad;

    ChannelParams si_channel{30.0, 2, 20.0};
    ChannelParams soi_channel{6.0, 4, 4.0};
    double ch_err_rel_db = -40.0;

    double antenna_sep_db = 30.0;
    double analog_sic_db = 30.0;
    /// Exactly one of these is set.
    std::optional<double> sir_at_digital_db = -30.0;
    std::optional<double> atten_diff_db;
    double snr_soi_db = 25.0;

    EstimatorConfig estimator;
    std::uint64_t seed = 1;
    std::size_t n_trials = 200;
    unsigned threads = 1;

    PhaseNoiseParams pn_params() const { return {beta_hz, 1.0 / ofdm.sample_rate}; }

    /// SOI-to-SI power ratio at the digital-SIC input. The attenuation
    /// difference is measured after antenna separation and before analog
    /// SIC, so only the analog stage separates it from the digital input.
    double effective_sir_db() const;

    /// Throws ConfigError.
    void validate() const;
};

struct TrialArtifacts {
    ComplexSignal x_si;     // known SI transmit samples
    ComplexSignal y;        // digital-SIC input
    ComplexSignal u;        // regenerated SI reference
    ComplexSignal si_true;  // SI component of y (oracle)
    ComplexSignal soi;      // SOI component of y
    ComplexSignal noise;    // AWGN component of y
    PhasePath true_phase;   // combined SI phase (TX + RX)
    ChannelModel si_channel;
    ChannelEstimate si_estimate;
    PhaseEstimate phi_hat;
    std::vector<cplx> residual;
};

/// Builds the received frame for one trial, without estimation.
/// Deterministic in (scenario, seed, trial_index).
TrialArtifacts simulate_trial(const LinkScenario& s, std::size_t trial_index);

/// Runs the given estimator on a simulated trial and fills phi_hat/residual.
void apply_estimator(TrialArtifacts& a, const EstimatorConfig& est, const OfdmConfig& ofdm);

/// simulate_trial + apply_estimator with the scenario's estimator.
TrialArtifacts run_trial(const LinkScenario& s, std::size_t trial_index);

/// 10 log10( sum|si|^2 / sum|si - u e^{j phi}|^2 ), capped at kSuppressionCapDb.
/// Throws MetricError if si carries no power.
double si_suppression_db(std::span<const cplx> si_true, std::span<const cplx> u,
                         const PhaseEstimate& phi);
double si_suppression_db(const TrialArtifacts& a);

struct SweepStat {
    double mean_db = 0;
    double ci95_db = 0;
};

struct SweepResult {
    std::string x_name;
    std::vector<std::string> columns;
    struct Row {
        double x = 0;
        std::vector<SweepStat> stats;  // parallel to columns
    };
    std::vector<Row> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    /// Index of a column label; throws InputError if absent.
    std::size_t column(const std::string& label) const;
};

/// Mean and normal-approximation 95% half-width of per-trial values,
/// accumulated in index order.
SweepStat summarize(std::span<const double> values);

/// For each beta: WfWindow (template M), OnlyCpe and LpfBased (template L).
SweepResult sweep_beta(const LinkScenario& tmpl, std::span<const double> betas);

/// For each attenuation difference (dB): the same three estimators.
SweepResult sweep_atten_diff(const LinkScenario& tmpl, std::span<const double> diffs);

/// WfWindow suppression versus window size, with an OnlyCpe reference column,
/// for each SOI-to-SI ratio in `sirs` (the template's ratio if empty).
SweepResult sweep_window(const LinkScenario& tmpl, std::span<const std::size_t> windows,
                         std::span<const double> sirs = {});

/// Key/value description of a scenario for result metadata.
std::vector<std::pair<std::string, std::string>> describe(const LinkScenario& s);

/// Runs fn(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace fdpn
