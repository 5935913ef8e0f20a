// SPDX-License-Identifier: Apache-2.0
#include "telesim/runner.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <thread>

#include "telesim/rng.hpp"

namespace telesim {

namespace {

std::vector<std::vector<std::array<double, 2>>> matrix_to_nested(
    const Eigen::MatrixXcd& m) {
  std::vector<std::vector<std::array<double, 2>>> out(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out[i].resize(m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out[i][j] = {m(i, j).real(), m(i, j).imag()};
    }
  }
  return out;
}

// Evaluates attempts [begin, end) into slots indexed by attempt number.
void evaluate_attempts(const PureState& input, const NoiseParams& noise,
                       FeedForwardMode mode, std::uint64_t seed,
                       std::size_t label_index, long long begin, long long end,
                       int workers, std::vector<TrialResult>& slots) {
  auto work = [&](long long from, long long to) {
    for (long long i = from; i < to; ++i) {
      auto rng = make_stream(seed, stream_id::kTrials + label_index,
                             static_cast<std::uint64_t>(i));
      slots[static_cast<std::size_t>(i - begin)] =
          run_trial(input, noise, mode, rng);
    }
  };
  const long long count = end - begin;
  if (workers <= 1 || count < 256) {
    work(begin, end);
    return;
  }
  std::vector<std::thread> pool;
  const long long chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const long long from = begin + w * chunk;
    const long long to = std::min(end, from + chunk);
    if (from >= to) break;
    pool.emplace_back(work, from, to);
  }
  for (auto& t : pool) t.join();
}

}  // namespace

LabelTrials collect_label_trials(const PureState& input,
                                 const NoiseParams& noise, FeedForwardMode mode,
                                 std::uint64_t seed, std::size_t label_index,
                                 long long successes, int workers) {
  LabelTrials out;
  out.trials.reserve(static_cast<std::size_t>(successes));
  // Success probability is 3/8 (or 1/4 without feed-forward), so this cap is
  // unreachable for any sane request; it guards against a zero-probability
  // configuration looping forever.
  const long long cap = 64 * successes + 4096;
  long long next_attempt = 0;
  while (static_cast<long long>(out.trials.size()) < successes) {
    if (next_attempt >= cap) {
      throw std::runtime_error("collect_label_trials: attempt cap exceeded");
    }
    const long long block =
        std::min<long long>(cap - next_attempt,
                            std::max<long long>(1024, successes));
    std::vector<TrialResult> slots(static_cast<std::size_t>(block));
    evaluate_attempts(input, noise, mode, seed, label_index, next_attempt,
                      next_attempt + block, workers, slots);
    for (long long i = 0; i < block; ++i) {
      const auto& r = slots[static_cast<std::size_t>(i)];
      if (r.outcome != BsmOutcome::Fail) {
        out.trials.push_back(r);
        if (static_cast<long long>(out.trials.size()) == successes) {
          out.attempts = next_attempt + i + 1;
          return out;
        }
      }
    }
    next_attempt += block;
  }
  out.attempts = next_attempt;
  return out;
}

RunReport run_experiment(const ExperimentConfig& cfg, int workers) {
  validate(cfg);
  if (workers < 1) {
    throw std::invalid_argument("run_experiment: workers must be >= 1");
  }
  RunReport report;
  report.seed = cfg.run.seed;
  report.mode = to_string(cfg.mode);
  report.config = cfg;

  std::map<InputStateLabel, DensityMatrix> reconstructed;
  std::array<std::vector<TrialResult>, 4> trials_by_label;

  for (std::size_t li = 0; li < kInputLabels.size(); ++li) {
    const InputStateLabel label = kInputLabels[li];
    const PureState input = input_state(label);
    LabelTrials lt =
        collect_label_trials(input, cfg.noise, cfg.mode, cfg.run.seed, li,
                             cfg.run.trials_per_state, workers);

    LabelReport& lr = report.labels[li];
    lr.label = to_string(label);
    lr.attempts = lt.attempts;
    lr.successes = static_cast<long long>(lt.trials.size());
    lr.failures = lr.attempts - lr.successes;

    std::vector<double> fids;
    fids.reserve(lt.trials.size());
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(2, 2);
    for (const auto& t : lt.trials) {
      fids.push_back(fidelity_pure(t.target, *t.bob_state));
      sum += t.bob_state->matrix();
    }
    lr.mc_fidelity_mean = mean(fids);
    auto boot_rng = make_stream(cfg.run.seed, stream_id::kBootstrapTrials, li);
    lr.mc_fidelity_stderr =
        bootstrap_fidelity_error(fids, kDefaultBootstrapResamples, boot_rng);

    // Tomography of the per-label output ensemble.
    const DensityMatrix mean_state =
        DensityMatrix::from_matrix(sum / static_cast<double>(lr.successes));
    auto tomo_rng = make_stream(cfg.run.seed, stream_id::kTomography, li);
    lr.counts = simulate_counts(mean_state, cfg.run.shots_per_basis, tomo_rng);
    const DensityMatrix rho_hat = reconstruct_state(lr.counts);
    const PureState target = lt.trials.front().target;
    lr.tomo_fidelity = fidelity_pure(target, rho_hat);
    auto count_rng = make_stream(cfg.run.seed, stream_id::kBootstrapCounts, li);
    lr.tomo_fidelity_stderr = bootstrap_fidelity_error(
        lr.counts, target, kDefaultBootstrapResamples, count_rng);
    lr.rho = matrix_to_nested(rho_hat.matrix());

    reconstructed.emplace(label, rho_hat);
    trials_by_label[li] = std::move(lt.trials);
  }

  const FidelitySummary summary = average_fidelity(trials_by_label);
  report.average_fidelity = summary.mean;
  report.average_fidelity_stderr = summary.stderr_mean;

  const ChiMatrix chi = reconstruct_process(reconstructed);
  report.chi = matrix_to_nested(chi.matrix());
  report.process_fidelity = process_fidelity(chi, ideal_sigma_y_process());
  report.average_fidelity_from_process = average_fidelity_from_process(
      std::clamp(report.process_fidelity, 0.0, 1.0));

  report.hoeffding =
      hoeffding_test(report.average_fidelity, cfg.run.trials_per_state);
  report.rate_budget = coincidence_rate_budget(
      budget_inputs_from_config(cfg), 1e9 / cfg.clock.repetition_period_ns);
  report.timeline = build_timeline(cfg.topology, cfg.clock);
  return report;
}

std::string to_text_table(const RunReport& report) {
  std::ostringstream os;
  os << std::fixed;
  os << "mode: " << report.mode << "   seed: " << report.seed
     << "   trials/state: " << report.config.run.trials_per_state << "\n\n";
  os << "  state   attempts  success   fail   F(MC)    +/-      F(tomo)  +/-\n";
  for (const auto& lr : report.labels) {
    os << "  " << std::left << std::setw(7) << lr.label << std::right
       << std::setw(9) << lr.attempts << std::setw(9) << lr.successes
       << std::setw(7) << lr.failures << "   " << std::setprecision(4)
       << lr.mc_fidelity_mean << "   " << lr.mc_fidelity_stderr << "   "
       << lr.tomo_fidelity << "   " << lr.tomo_fidelity_stderr << "\n";
  }
  os << "\n  average state fidelity : " << std::setprecision(4)
     << report.average_fidelity << " +/- " << report.average_fidelity_stderr
     << "\n";
  os << "  process fidelity       : " << report.process_fidelity
     << "   (haar-average " << report.average_fidelity_from_process << ")\n";
  os << "  classical-bound p      : " << std::setprecision(3)
     << report.hoeffding.p_bound.mantissa << "e"
     << report.hoeffding.p_bound.exponent10 << "  (N = "
     << report.hoeffding.trials_per_state << " per state)\n";
  os << "\n  feed-forward slack     : " << std::setprecision(1)
     << report.timeline.feasibility.slack_ns << " ns ("
     << (report.timeline.feasibility.feasible ? "feasible" : "INFEASIBLE")
     << ")\n";
  os << "  four-fold rate         : " << std::setprecision(3)
     << report.rate_budget.fourfold_per_hour << " per hour\n";
  return os.str();
}

}  // namespace telesim
