#include <doctest.h>

#include <fstream>
#include <sstream>

#include <telesim/config.hpp>
#include <telesim/constants.hpp>
#include <telesim/runner.hpp>

using namespace telesim;

#ifndef TELESIM_CONFIG_DIR
#define TELESIM_CONFIG_DIR "configs"
#endif

namespace {

std::string config_path(const char* name) {
  return std::string(TELESIM_CONFIG_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("shipped default config matches the constants table") {
  const ExperimentConfig cfg = load_config_file(config_path("default.json"));
  CHECK(cfg.sources.mu_alice == defaults::kMuAlice);
  CHECK(cfg.sources.mu_charlie == defaults::kMuCharlie);
  CHECK(cfg.sources.purity_alice == defaults::kPurityAlice);
  CHECK(cfg.sources.purity_charlie == defaults::kPurityCharlie);
  CHECK(cfg.noise.visibility == defaults::kVisibilityBound);
  CHECK(cfg.noise.unitary_fidelity == defaults::kUnitaryFidelityBound);
  CHECK(cfg.topology.alice_charlie.length_km == defaults::kAliceCharlieKm);
  CHECK(cfg.topology.alice_charlie.loss_db == defaults::kAliceCharlieLossDb);
  CHECK(cfg.topology.charlie_bob.length_km == defaults::kCharlieBobKm);
  CHECK(cfg.topology.charlie_bob.loss_db == defaults::kCharlieBobLossDb);
  CHECK(cfg.topology.buffer_charlie_km == defaults::kBufferKm);
  CHECK(cfg.topology.buffer_bob_km == defaults::kBufferKm);
  CHECK(cfg.clock.repetition_period_ns == defaults::kRepetitionPeriodNs);
  CHECK(cfg.clock.jitter_rms_ps == defaults::kJitterRmsPs);
  CHECK(cfg.clock.coherence_time_ps == defaults::kCoherenceTimePs);
  CHECK(cfg.detectors.recovery_time_ns == defaults::kDetectorRecoveryNs);
  CHECK(cfg.run.trials_per_state == defaults::kTrialsPerStateWithFF);
  CHECK(cfg.mode == FeedForwardMode::WithFeedForward);
}

TEST_CASE("abstract-buffer variant uses the shorter coils") {
  const ExperimentConfig cfg =
      load_config_file(config_path("abstract_buffers.json"));
  CHECK(cfg.topology.buffer_charlie_km == defaults::kAbstractBufferKm);
  CHECK(cfg.topology.buffer_bob_km == defaults::kAbstractBufferKm);
}

TEST_CASE("config parsing: comments, defaults, and overrides") {
  const ExperimentConfig cfg = parse_config(R"({
    // comment support
    "noise": {"visibility": 0.5},
    "run": {"seed": 7}
  })");
  CHECK(cfg.noise.visibility == 0.5);
  CHECK(cfg.noise.unitary_fidelity == defaults::kUnitaryFidelityBound);
  CHECK(cfg.run.seed == 7);
}

TEST_CASE("config parsing: strict errors with field paths") {
  // seed is mandatory
  CHECK_THROWS_WITH_AS(parse_config(R"({"run": {}})"),
                       doctest::Contains("run.seed"), ConfigError);

  // unknown key
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"run": {"seed": 1}, "noize": {}})"),
      doctest::Contains("noize"), ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"run": {"seed": 1}, "noise": {"vis": 0.9}})"),
      doctest::Contains("noise.vis"), ConfigError);

  // type errors
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"run": {"seed": 1}, "noise": {"visibility": "x"}})"),
      doctest::Contains("noise.visibility"), ConfigError);

  // range errors carry their path
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"run": {"seed": 1}, "noise": {"visibility": 1.5}})"),
      doctest::Contains("noise.visibility"), ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_config(
          R"({"run": {"seed": 1},
              "topology": {"charlie_bob": {"loss_db": -2.0}}})"),
      doctest::Contains("topology.charlie_bob.loss_db"), ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"run": {"seed": 1}, "sources": {"mu_alice": 1.2}})"),
      doctest::Contains("sources"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"run": {"seed": 1}, "mode": "both"})"),
                       doctest::Contains("mode"), ConfigError);

  // malformed JSON
  CHECK_THROWS_AS(parse_config("{"), ConfigError);
}

TEST_CASE("config serialization round trip") {
  ExperimentConfig cfg = load_config_file(config_path("calibration.json"));
  const std::string text = to_json_string(cfg);
  const ExperimentConfig back = parse_config(text);
  CHECK(to_json_string(back) == text);
  CHECK(back.noise.visibility == cfg.noise.visibility);
  CHECK(back.run.seed == cfg.run.seed);
  CHECK(back.mode == cfg.mode);
}

TEST_CASE("run report round-trips losslessly") {
  ExperimentConfig cfg = load_config_file(config_path("calibration.json"));
  cfg.run.trials_per_state = 40;
  cfg.run.shots_per_basis = 2000;
  const RunReport report = run_experiment(cfg);
  const std::string a = to_json_string(report);
  const RunReport parsed = report_from_json_string(a);
  const std::string b = to_json_string(parsed);
  CHECK(a == b);
  CHECK(parsed.average_fidelity == report.average_fidelity);
  CHECK(parsed.hoeffding.p_bound.exponent10 ==
        report.hoeffding.p_bound.exponent10);
  CHECK(parsed.labels[3].counts.y.n_plus == report.labels[3].counts.y.n_plus);
}

TEST_CASE("reports are identical at any worker count") {
  ExperimentConfig cfg = load_config_file(config_path("calibration.json"));
  cfg.run.trials_per_state = 64;
  cfg.run.shots_per_basis = 1000;
  std::string first;
  for (int workers : {1, 3, 8}) {
    const std::string text = to_json_string(run_experiment(cfg, workers));
    if (first.empty()) {
      first = text;
    } else {
      CHECK(text == first);
    }
  }
}

TEST_CASE("ideal configuration teleports perfectly") {
  ExperimentConfig cfg = load_config_file(config_path("default.json"));
  cfg.noise.visibility = 1.0;
  cfg.noise.unitary_fidelity = 1.0;
  cfg.run.trials_per_state = 50;
  cfg.run.shots_per_basis = 200000;
  const RunReport report = run_experiment(cfg);
  CHECK(report.average_fidelity == doctest::Approx(1.0).epsilon(1e-10));
  // the p-value is far below any double-friendly scale; the log10 form holds it
  CHECK(report.hoeffding.p_bound.log10_p < -10.0);
  CHECK(report.process_fidelity > 0.99);
}

TEST_CASE("report totals: attempts = successes + failures") {
  ExperimentConfig cfg = load_config_file(config_path("default.json"));
  cfg.run.trials_per_state = 30;
  cfg.run.shots_per_basis = 500;
  const RunReport report = run_experiment(cfg);
  for (const auto& lr : report.labels) {
    CHECK(lr.successes == 30);
    CHECK(lr.attempts == lr.successes + lr.failures);
    CHECK(lr.failures > 0);  // discrimination discards Phi outcomes
  }
}
