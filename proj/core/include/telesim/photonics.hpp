// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>

#include "telesim/constants.hpp"
#include "telesim/qubit.hpp"

// Stochastic models of the physical layer: pair sources, fibre loss,
// detectors, interference visibility, and the feed-forward rotation error.

namespace telesim {

struct SourceParams {
  double mean_pairs_per_pulse = 0.0;  // thermal mean, dimensionless
  double heralding_efficiency = 1.0;
  double purity = 1.0;  // single-photon spectral purity, reporting only
};

struct ChannelParams {
  double length_km = 0.0;
  double loss_db = 0.0;
  double extra_delay_ns = 0.0;
};

struct DetectorParams {
  double efficiency = 1.0;
  double dark_count_prob_per_gate = 0.0;
  double recovery_time_ns = defaults::kDetectorRecoveryNs;
};

struct NoiseParams {
  double visibility = defaults::kVisibilityBound;
  double unitary_fidelity = defaults::kUnitaryFidelityBound;
};

/// Pair count per pulse from the single-mode thermal distribution
/// P(n) = mu^n / (1+mu)^(n+1).
int sample_pair_count(const SourceParams& src, std::mt19937_64& rng);

/// 10^(-loss_db/10).
double transmission(const ChannelParams& ch);

/// White-noise model of imperfect two-photon interference:
/// rho -> V rho + (1-V) I/2.
DensityMatrix apply_visibility(const DensityMatrix& rho_ideal, double v);

/// Feed-forward rotation with instrumental error: with probability f_u the
/// intended unitary acts exactly; otherwise it acts followed by complete
/// dephasing in the time-bin basis (the corrector is a phase modulator, so
/// its failure mode is phase noise, not amplitude error).
DensityMatrix apply_unitary_error(const DensityMatrix& rho, double f_u,
                                  const Mat2& intended, std::mt19937_64& rng);

/// Click with probability `efficiency` when a photon is present, otherwise
/// with the dark-count probability.
bool detector_fires(bool signal_present, const DetectorParams& det,
                    std::mt19937_64& rng);

}  // namespace telesim
