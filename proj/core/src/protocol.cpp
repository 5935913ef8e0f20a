// SPDX-License-Identifier: Apache-2.0
#include "telesim/protocol.hpp"

#include <cmath>
#include <stdexcept>

#include "telesim/stats.hpp"

namespace telesim {

PureState input_state(InputStateLabel label) {
  switch (label) {
    case InputStateLabel::T0: return PureState::t0();
    case InputStateLabel::T1: return PureState::t1();
    case InputStateLabel::D: return PureState::d();
    case InputStateLabel::R: return PureState::r();
  }
  throw std::logic_error("input_state: bad label");
}

const char* to_string(InputStateLabel label) {
  switch (label) {
    case InputStateLabel::T0: return "T0";
    case InputStateLabel::T1: return "T1";
    case InputStateLabel::D: return "D";
    case InputStateLabel::R: return "R";
  }
  return "?";
}

const char* to_string(BsmOutcome o) {
  switch (o) {
    case BsmOutcome::PsiMinus: return "PsiMinus";
    case BsmOutcome::PsiPlus: return "PsiPlus";
    case BsmOutcome::Fail: return "Fail";
  }
  return "?";
}

BsmOutcome bsm_discriminate(BellLabel true_bell, std::mt19937_64& rng) {
  switch (true_bell) {
    case BellLabel::PsiMinus:
      return BsmOutcome::PsiMinus;
    case BellLabel::PsiPlus: {
      std::uniform_real_distribution<double> coin(0.0, 1.0);
      return coin(rng) < 0.5 ? BsmOutcome::PsiPlus : BsmOutcome::Fail;
    }
    case BellLabel::PhiPlus:
    case BellLabel::PhiMinus:
      return BsmOutcome::Fail;
  }
  throw std::logic_error("bsm_discriminate: bad label");
}

Mat2 feed_forward_correction(BsmOutcome outcome) {
  switch (outcome) {
    case BsmOutcome::PsiMinus: return pauli::I();
    case BsmOutcome::PsiPlus: return pauli::Z();
    case BsmOutcome::Fail:
      throw std::invalid_argument(
          "feed_forward_correction: no correction for a failed BSM");
  }
  throw std::logic_error("feed_forward_correction: bad outcome");
}

TrialResult run_trial(const PureState& input, const NoiseParams& noise,
                      FeedForwardMode mode, std::mt19937_64& rng) {
  TrialResult result;
  result.target = apply_unitary(pauli::Y(), input).canonical();

  const auto branches = bell_decompose(input);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double u = u01(rng);
  double cum = 0.0;
  const BellBranch* branch = &branches.back();
  for (const auto& b : branches) {
    cum += b.probability;
    if (u < cum) {
      branch = &b;
      break;
    }
  }

  BsmOutcome outcome = bsm_discriminate(branch->bell, rng);
  if (mode == FeedForwardMode::WithoutFeedForward &&
      outcome == BsmOutcome::PsiPlus) {
    // Without feed-forward the experiment keeps only PsiMinus events.
    outcome = BsmOutcome::Fail;
  }
  result.outcome = outcome;
  if (outcome == BsmOutcome::Fail) return result;

  DensityMatrix rho = apply_visibility(DensityMatrix::pure(branch->conditional),
                                       noise.visibility);
  if (outcome == BsmOutcome::PsiPlus) {
    rho = apply_unitary_error(rho, noise.unitary_fidelity,
                              feed_forward_correction(outcome), rng);
    result.feed_forward_applied = true;
  }
  result.bob_state = std::move(rho);
  return result;
}

DensityMatrix classical_trial(const PureState& input, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double p0 = std::norm(input.alpha());
  const PureState prepared =
      (u01(rng) < p0) ? PureState::t0() : PureState::t1();
  return DensityMatrix::pure(prepared);
}

FidelitySummary average_fidelity(
    const std::array<std::vector<TrialResult>, 4>& results_by_label) {
  FidelitySummary summary;
  double var_of_mean = 0.0;
  for (std::size_t i = 0; i < results_by_label.size(); ++i) {
    std::vector<double> fids;
    fids.reserve(results_by_label[i].size());
    for (const auto& r : results_by_label[i]) {
      if (r.outcome == BsmOutcome::Fail) continue;
      fids.push_back(fidelity_pure(r.target, *r.bob_state));
    }
    if (fids.empty()) {
      throw std::invalid_argument(
          std::string("average_fidelity: no successful trials for label ") +
          to_string(kInputLabels[i]));
    }
    LabelFidelity& lf = summary.per_label[i];
    lf.successes = fids.size();
    lf.mean = mean(fids);
    lf.stderr_mean = standard_error(fids);
    summary.mean += lf.mean / 4.0;
    var_of_mean += lf.stderr_mean * lf.stderr_mean / 16.0;
  }
  summary.stderr_mean = std::sqrt(var_of_mean);
  return summary;
}

}  // namespace telesim
