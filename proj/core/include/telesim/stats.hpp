// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>
#include <span>
#include <vector>

#include "telesim/qubit.hpp"
#include "telesim/tomography.hpp"

// Hypothesis test against the classical teleportation bound and bootstrap
// error bars for fidelity estimates.

namespace telesim {

double mean(std::span<const double> xs);
double sample_stddev(std::span<const double> xs);
/// Standard error of the mean (0 for fewer than two samples).
double standard_error(std::span<const double> xs);

/// p-value as mantissa * 10^exponent10, valid far below double underflow.
struct PValue {
  double mantissa = 1.0;  // in [1, 10)
  int exponent10 = 0;
  double log10_p = 0.0;
  double value = 1.0;  // double-precision p; may be denormal for tiny p
};

/// Natural log of the Hoeffding tail bound for the probability that a
/// classical strategy (average fidelity capped at 2/3) reaches a mean
/// fidelity >= mean_fidelity after 4N trials:
///
///   ln p = 4N * [ a ln(b) + c ln(d) ],   a = (4/3-F)/(4/3), b = (2/3)/(4/3-F),
///                                        c = F/(4/3),       d = (2/3)/F.
///
/// Returns 0 (p = 1) for F <= 2/3; throws for F >= 4/3 (outside the formula's
/// domain).
double hoeffding_log(double mean_fidelity, long long n_per_state);

double hoeffding_bound(double mean_fidelity, long long n_per_state);

PValue hoeffding_pvalue(double mean_fidelity, long long n_per_state);

struct HypothesisResult {
  double observed_mean_fidelity = 0.0;
  long long trials_per_state = 0;
  PValue p_bound;
};

HypothesisResult hoeffding_test(double mean_fidelity, long long n_per_state);

inline constexpr int kDefaultBootstrapResamples = 1000;

/// Resamples per-trial fidelities with replacement and returns the sample
/// standard deviation of the resampled means.
double bootstrap_fidelity_error(std::span<const double> per_trial_fidelities,
                                int resamples, std::mt19937_64& rng);

/// Poisson-resamples a tomography count table, reconstructs the state, and
/// returns the standard deviation of the fidelity to `target`.
double bootstrap_fidelity_error(const CountTable& counts,
                                const PureState& target, int resamples,
                                std::mt19937_64& rng);

}  // namespace telesim
