// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "telesim/photonics.hpp"
#include "telesim/qubit.hpp"

// The teleportation state machine: beam-splitter-tree Bell measurement with
// partial discrimination, feed-forward correction, the classical
// measure-and-resend baseline, and fidelity accounting.
//
// The linear-optics setup heralds every PsiMinus event and, because the
// detector recovery time exceeds the bin separation, only half of the
// PsiPlus events.  PhiPlus/PhiMinus are never identified.  The universal
// target of a successful trial is sigma_y |psi> up to global phase.

namespace telesim {

enum class BsmOutcome { PsiMinus, PsiPlus, Fail };

enum class InputStateLabel { T0, T1, D, R };

inline constexpr std::array<InputStateLabel, 4> kInputLabels = {
    InputStateLabel::T0, InputStateLabel::T1, InputStateLabel::D,
    InputStateLabel::R};

PureState input_state(InputStateLabel label);
const char* to_string(InputStateLabel label);
const char* to_string(BsmOutcome o);

enum class FeedForwardMode { WithFeedForward, WithoutFeedForward };

struct TrialResult {
  BsmOutcome outcome = BsmOutcome::Fail;
  std::optional<DensityMatrix> bob_state;  // present iff outcome != Fail
  bool feed_forward_applied = false;
  PureState target = PureState::t0();  // sigma_y * input, canonical phase
};

/// Maps the true Bell state of the measured pair to the heralded outcome:
/// PsiMinus always, PsiPlus with probability 1/2, everything else fails.
BsmOutcome bsm_discriminate(BellLabel true_bell, std::mt19937_64& rng);

/// Correction unitary for a heralded outcome: identity for PsiMinus, sigma_z
/// for PsiPlus (sigma_z sigma_x = i sigma_y, so both branches land on the
/// sigma_y target).  Throws on Fail.
Mat2 feed_forward_correction(BsmOutcome outcome);

/// One teleportation attempt.  Samples the Bell outcome from the Born
/// probabilities, applies the discrimination rule, degrades the conditional
/// state by the interference visibility, and for heralded PsiPlus in
/// feed-forward mode applies sigma_z through the noisy rotator.  Without
/// feed-forward only PsiMinus counts as success.
TrialResult run_trial(const PureState& input, const NoiseParams& noise,
                      FeedForwardMode mode, std::mt19937_64& rng);

/// Classical baseline: measure in the time-bin basis and resend the observed
/// eigenstate.  Haar-averaged fidelity is exactly 2/3.
DensityMatrix classical_trial(const PureState& input, std::mt19937_64& rng);

struct LabelFidelity {
  std::size_t successes = 0;
  double mean = 0.0;
  double stderr_mean = 0.0;  // standard error of the mean
};

struct FidelitySummary {
  std::array<LabelFidelity, 4> per_label;  // indexed by kInputLabels order
  double mean = 0.0;                       // unweighted mean over labels
  double stderr_mean = 0.0;
};

/// Per-label and overall mean fidelity of successful trials.  Throws if any
/// label has no successful trial.
FidelitySummary average_fidelity(
    const std::array<std::vector<TrialResult>, 4>& results_by_label);

}  // namespace telesim
