// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "telesim/config.hpp"
#include "telesim/netsim.hpp"
#include "telesim/protocol.hpp"
#include "telesim/stats.hpp"
#include "telesim/tomography.hpp"

// End-to-end run: Monte Carlo trials per input state, state and process
// tomography, fidelity accounting, the classical-bound hypothesis test, and
// the network timing/rate reports.  Deterministic given (config, seed) at
// any worker count.

namespace telesim {

struct LabelReport {
  std::string label;
  long long attempts = 0;
  long long successes = 0;
  long long failures = 0;
  double mc_fidelity_mean = 0.0;
  double mc_fidelity_stderr = 0.0;     // bootstrap over trial fidelities
  CountTable counts;                   // simulated tomography counts
  double tomo_fidelity = 0.0;          // fidelity of the reconstruction
  double tomo_fidelity_stderr = 0.0;   // bootstrap over counts
  std::vector<std::vector<std::array<double, 2>>> rho;  // [[re,im],...] rows
};

struct RunReport {
  std::string schema = "telesim.report.v1";
  std::uint64_t seed = 0;
  std::string mode;
  ExperimentConfig config;
  std::array<LabelReport, 4> labels;  // kInputLabels order
  double average_fidelity = 0.0;
  double average_fidelity_stderr = 0.0;
  std::vector<std::vector<std::array<double, 2>>> chi;  // 4x4 [re,im]
  double process_fidelity = 0.0;
  double average_fidelity_from_process = 0.0;
  HypothesisResult hoeffding;
  RateBudget rate_budget;
  Timeline timeline;
};

/// Runs the full pipeline.  `workers` splits trial evaluation across
/// threads and only affects wall time, never results.
RunReport run_experiment(const ExperimentConfig& cfg, int workers = 1);

std::string to_json_string(const RunReport& report);
RunReport report_from_json_string(const std::string& text);

/// Aligned plain-text rendering of the report.
std::string to_text_table(const RunReport& report);

/// Per-trial results for one label with deterministic per-attempt streams;
/// keeps attempting until `successes` successful trials, in attempt order.
/// Exposed for tests and the acceptance suite.
struct LabelTrials {
  std::vector<TrialResult> trials;  // successful trials, attempt order
  long long attempts = 0;
};
LabelTrials collect_label_trials(const PureState& input,
                                 const NoiseParams& noise, FeedForwardMode mode,
                                 std::uint64_t seed, std::size_t label_index,
                                 long long successes, int workers);

}  // namespace telesim
