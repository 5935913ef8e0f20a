// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end.  Subcommands:
//   run                end-to-end simulated experiment -> report
//   tomo-state         reconstruct a density matrix from a count table
//   tomo-process       reconstruct the process matrix from four outputs
//   hoeffding          classical-bound p-value for an observed fidelity
//   rate-budget        itemized four-fold coincidence rate budget
//   timeline           feed-forward timing feasibility
//   classical-baseline Monte Carlo check of the 2/3 classical limit
//
// Exit codes: 0 success, 2 config/input error, 3 infeasible timing under
// --strict-timing.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <telesim/config.hpp>
#include <telesim/rng.hpp>
#include <telesim/runner.hpp>

namespace {

using nlohmann::json;
using namespace telesim;

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitInfeasible = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << text;
}

json matrix_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) throw ConfigError("matrix: empty");
  const auto cols = static_cast<Eigen::Index>(j.at(0).size());
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& e = j.at(i).at(c);
      m(i, c) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

CountTable counts_from_file(const std::string& path) {
  const json j = json::parse(read_file(path), nullptr, true, true);
  auto basis = [&](const char* key) {
    if (!j.contains(key)) {
      throw ConfigError(std::string("counts: missing basis ") + key);
    }
    return BasisCounts{j.at(key).at("plus").get<long long>(),
                       j.at(key).at("minus").get<long long>()};
  };
  return CountTable{basis("Z"), basis("X"), basis("Y")};
}

PureState state_for_label(const std::string& name) {
  for (const auto label : kInputLabels) {
    if (name == to_string(label)) return input_state(label);
  }
  throw ConfigError("unknown input state label: " + name);
}

struct CommonOpts {
  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  int workers = 1;
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "config file (JSON)")
      ->required();
  cmd->add_option("--seed", opts.seed_override, "override run.seed");
  cmd->add_option("--workers", opts.workers, "trial worker threads")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", opts.out_path, "write the JSON result here");
}

ExperimentConfig load_with_overrides(const CommonOpts& opts) {
  ExperimentConfig cfg = load_config_file(opts.config_path);
  if (opts.seed_override) cfg.run.seed = *opts.seed_override;
  validate(cfg);
  return cfg;
}

int cmd_run(const CommonOpts& opts, bool strict_timing) {
  const ExperimentConfig cfg = load_with_overrides(opts);
  const RunReport report = run_experiment(cfg, opts.workers);
  std::cout << to_text_table(report);
  if (!opts.out_path.empty()) {
    write_file(opts.out_path, to_json_string(report) + "\n");
  }
  if (strict_timing && !report.timeline.feasibility.feasible) {
    std::cerr << "error: feed-forward timing infeasible (slack "
              << report.timeline.feasibility.slack_ns << " ns)\n";
    return kExitInfeasible;
  }
  return kExitOk;
}

int cmd_tomo_state(const std::string& counts_path, const std::string& target,
                   const std::string& out_path) {
  const CountTable counts = counts_from_file(counts_path);
  const DensityMatrix rho = reconstruct_state(counts);
  json result;
  result["rho"] = matrix_json(rho.matrix());
  result["purity"] = (rho.matrix() * rho.matrix()).trace().real();
  if (!target.empty()) {
    const PureState input = state_for_label(target);
    result["fidelity_to_input"] = fidelity_pure(input, rho);
    // Teleported target is sigma_y * input.
    result["fidelity_to_teleported"] =
        fidelity_pure(apply_unitary(pauli::Y(), input).canonical(), rho);
  }
  const std::string text = result.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) write_file(out_path, text);
  return kExitOk;
}

int cmd_tomo_process(const std::string& outputs_path,
                     const std::string& out_path) {
  const json j = json::parse(read_file(outputs_path), nullptr, true, true);
  std::map<InputStateLabel, DensityMatrix> outputs;
  for (const auto label : kInputLabels) {
    const char* key = to_string(label);
    if (!j.contains(key)) {
      throw ConfigError(std::string("outputs: missing input state ") + key);
    }
    outputs.emplace(label,
                    DensityMatrix::from_matrix(matrix_from_json(j.at(key))));
  }
  const ChiMatrix chi = reconstruct_process(outputs);
  const double fp = process_fidelity(chi, ideal_sigma_y_process());
  json result;
  result["chi"] = matrix_json(chi.matrix());
  result["process_fidelity"] = fp;
  result["average_fidelity_from_process"] =
      average_fidelity_from_process(std::clamp(fp, 0.0, 1.0));
  const std::string text = result.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) write_file(out_path, text);
  return kExitOk;
}

int cmd_hoeffding(double fidelity, long long trials) {
  const HypothesisResult h = hoeffding_test(fidelity, trials);
  std::cout << std::setprecision(4) << std::fixed;
  std::cout << "observed mean fidelity : " << h.observed_mean_fidelity << "\n"
            << "trials per state (N)   : " << h.trials_per_state << "\n";
  std::cout << "classical-bound p      : " << std::setprecision(3)
            << h.p_bound.mantissa << "e" << h.p_bound.exponent10
            << "   (log10 p = " << std::setprecision(4) << h.p_bound.log10_p
            << ")\n";
  return kExitOk;
}

int cmd_rate_budget(const CommonOpts& opts) {
  const ExperimentConfig cfg = load_with_overrides(opts);
  const RateBudget budget = coincidence_rate_budget(
      budget_inputs_from_config(cfg), 1e9 / cfg.clock.repetition_period_ns);
  std::cout << "  stage                              value     source\n";
  for (const auto& s : budget.stages) {
    std::cout << "  " << std::left << std::setw(32) << s.name << std::right
              << std::setw(9) << std::setprecision(5) << std::fixed << s.value
              << "   " << s.source << "\n";
  }
  std::cout << std::scientific << std::setprecision(3)
            << "\n  probability per pulse : " << budget.probability_per_pulse
            << "\n  repetition rate       : " << budget.rep_rate_hz << " Hz"
            << std::fixed << std::setprecision(3)
            << "\n  four-fold per hour    : " << budget.fourfold_per_hour
            << "\n";
  if (!opts.out_path.empty()) {
    json j;
    j["stages"] = json::array();
    for (const auto& s : budget.stages) {
      j["stages"].push_back(
          {{"name", s.name}, {"value", s.value}, {"source", s.source}});
    }
    j["rep_rate_hz"] = budget.rep_rate_hz;
    j["probability_per_pulse"] = budget.probability_per_pulse;
    j["fourfold_per_second"] = budget.fourfold_per_second;
    j["fourfold_per_hour"] = budget.fourfold_per_hour;
    write_file(opts.out_path, j.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_timeline(const CommonOpts& opts, bool strict_timing) {
  const ExperimentConfig cfg = load_with_overrides(opts);
  const Timeline tl = build_timeline(cfg.topology, cfg.clock);
  std::cout << std::fixed << std::setprecision(1);
  std::cout << "  event                        t [ns]\n";
  for (const auto& e : tl.events) {
    std::cout << "  " << std::left << std::setw(26) << e.name << std::right
              << std::setw(11) << e.t_ns << "\n";
  }
  std::cout << "\n  entanglement distributed before BSM : "
            << (tl.entanglement_distributed_prior ? "yes" : "NO") << "\n";
  std::cout << "  photon release (from idler arrival) : "
            << tl.feasibility.photon_release_ns << " ns\n";
  std::cout << "  feed-forward arrival (from BSM)     : "
            << tl.feasibility.signal_arrival_ns << " ns\n";
  std::cout << "  slack : " << tl.feasibility.slack_ns << " ns  ("
            << (tl.feasibility.feasible ? "feasible" : "INFEASIBLE") << ")\n";
  std::cout << std::setprecision(6)
            << "  jitter/coherence ratio : " << tl.jitter_coherence_ratio
            << "   mean two-photon overlap : " << tl.mean_sync_overlap << "\n";
  if (!opts.out_path.empty()) {
    json j;
    j["events"] = json::array();
    for (const auto& e : tl.events) {
      j["events"].push_back({{"name", e.name}, {"t_ns", e.t_ns}});
    }
    j["feasible"] = tl.feasibility.feasible;
    j["slack_ns"] = tl.feasibility.slack_ns;
    j["photon_release_ns"] = tl.feasibility.photon_release_ns;
    j["signal_arrival_ns"] = tl.feasibility.signal_arrival_ns;
    j["entanglement_distributed_prior"] = tl.entanglement_distributed_prior;
    j["jitter_coherence_ratio"] = tl.jitter_coherence_ratio;
    j["mean_sync_overlap"] = tl.mean_sync_overlap;
    write_file(opts.out_path, j.dump(2) + "\n");
  }
  if (strict_timing && !tl.feasibility.feasible) {
    std::cerr << "error: feed-forward timing infeasible\n";
    return kExitInfeasible;
  }
  return kExitOk;
}

int cmd_classical_baseline(long long trials, std::uint64_t seed) {
  auto rng = make_stream(seed, 0xC1A55);
  double sum = 0.0;
  for (long long i = 0; i < trials; ++i) {
    const PureState psi = haar_random_state(rng);
    sum += fidelity_pure(psi, classical_trial(psi, rng));
  }
  const double mean_f = sum / static_cast<double>(trials);
  std::cout << std::fixed << std::setprecision(5)
            << "classical measure-and-resend over " << trials
            << " haar-random inputs\n"
            << "  mean fidelity  : " << mean_f << "\n"
            << "  classical bound: " << 2.0 / 3.0 << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulator and analysis toolkit for fibre quantum teleportation"};
  app.require_subcommand(1);

  CommonOpts run_opts;
  bool run_strict = false;
  auto* run = app.add_subcommand("run", "simulate the full experiment");
  add_common(run, run_opts);
  run->add_flag("--strict-timing", run_strict,
                "exit 3 if the feed-forward deadline is missed");

  std::string counts_path, target_label, tomo_out;
  auto* tomo_state =
      app.add_subcommand("tomo-state", "reconstruct a state from counts");
  tomo_state->add_option("--counts", counts_path, "count table (JSON)")
      ->required();
  tomo_state->add_option("--target", target_label,
                         "input state label for fidelity (T0|T1|D|R)");
  tomo_state->add_option("--out", tomo_out, "write the JSON result here");

  std::string outputs_path, proc_out;
  auto* tomo_process = app.add_subcommand(
      "tomo-process", "reconstruct the process matrix from four outputs");
  tomo_process
      ->add_option("--outputs", outputs_path,
                   "JSON with keys T0, T1, D, R mapping to 2x2 matrices")
      ->required();
  tomo_process->add_option("--out", proc_out, "write the JSON result here");

  double hoeff_f = 0.0;
  long long hoeff_n = 0;
  auto* hoeff = app.add_subcommand(
      "hoeffding", "classical-bound p-value (exact, log-space)");
  hoeff->add_option("--fidelity", hoeff_f, "observed mean fidelity")
      ->required();
  hoeff->add_option("--trials", hoeff_n, "trials per input state (N)")
      ->required();

  CommonOpts budget_opts;
  auto* budget =
      app.add_subcommand("rate-budget", "itemized four-fold coincidence budget");
  add_common(budget, budget_opts);

  CommonOpts timeline_opts;
  bool timeline_strict = false;
  auto* timeline =
      app.add_subcommand("timeline", "feed-forward timing feasibility");
  add_common(timeline, timeline_opts);
  timeline->add_flag("--strict-timing", timeline_strict,
                     "exit 3 if the feed-forward deadline is missed");

  long long classical_trials = 1000000;
  std::uint64_t classical_seed = 1;
  auto* classical = app.add_subcommand(
      "classical-baseline", "Monte Carlo classical measure-and-resend");
  classical->add_option("--trials", classical_trials, "number of inputs");
  classical->add_option("--seed", classical_seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_opts, run_strict);
    if (tomo_state->parsed()) {
      return cmd_tomo_state(counts_path, target_label, tomo_out);
    }
    if (tomo_process->parsed()) return cmd_tomo_process(outputs_path, proc_out);
    if (hoeff->parsed()) return cmd_hoeffding(hoeff_f, hoeff_n);
    if (budget->parsed()) return cmd_rate_budget(budget_opts);
    if (timeline->parsed()) return cmd_timeline(timeline_opts, timeline_strict);
    if (classical->parsed()) {
      return cmd_classical_baseline(classical_trials, classical_seed);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
