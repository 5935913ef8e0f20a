// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "telesim/netsim.hpp"
#include "telesim/photonics.hpp"
#include "telesim/protocol.hpp"

// Experiment configuration.  Config files are JSON with // comments allowed;
// keys mirror the field names below exactly and unknown keys are rejected
// with the offending path in the message.

namespace telesim {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SourceConfig {
  double mu_alice = defaults::kMuAlice;
  double mu_charlie = defaults::kMuCharlie;
  double purity_alice = defaults::kPurityAlice;
  double purity_charlie = defaults::kPurityCharlie;
  double heralding_efficiency = 0.02;
};

struct BudgetAssumptions {
  double encoder_insertion = 0.5;
  double fbg_acceptance = 0.25;
  double analysis_arm_efficiency = 0.25;
};

struct RunConfig {
  long long trials_per_state = defaults::kTrialsPerStateWithFF;
  long long shots_per_basis = 100000;
  std::uint64_t seed = 0;
};

struct ExperimentConfig {
  SourceConfig sources;
  NoiseParams noise;
  NetworkTopology topology;
  ClockModel clock;
  DetectorParams detectors{0.15, 1e-6, defaults::kDetectorRecoveryNs};
  BudgetAssumptions budget_assumptions;
  RunConfig run;
  FeedForwardMode mode = FeedForwardMode::WithFeedForward;
};

/// Parses and validates; throws ConfigError with a field path on any
/// unknown key, type mismatch, or out-of-range value.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

std::string to_json_string(const ExperimentConfig& cfg);

/// Range checks shared by parsing and programmatic construction.
void validate(const ExperimentConfig& cfg);

BudgetInputs budget_inputs_from_config(const ExperimentConfig& cfg);

const char* to_string(FeedForwardMode mode);
FeedForwardMode feed_forward_mode_from_string(const std::string& s);

}  // namespace telesim
