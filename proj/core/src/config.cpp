// SPDX-License-Identifier: Apache-2.0
#include "telesim/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace telesim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

// Strict object reader: every key must be consumed, every consumed key must
// have the expected type.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }

  double number(const std::string& key, double fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_number()) fail(path_ + "." + key, "expected a number");
    return v->get<double>();
  }

  long long integer(const std::string& key, long long fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) fail(path_ + "." + key, "expected an integer");
    return v->get<long long>();
  }

  std::uint64_t uinteger(const std::string& key, std::uint64_t fallback,
                         bool* present = nullptr) {
    const json* v = take(key);
    if (present) *present = v != nullptr;
    if (!v) return fallback;
    if (!v->is_number_unsigned() && !v->is_number_integer()) {
      fail(path_ + "." + key, "expected a non-negative integer");
    }
    if (v->is_number_integer() && v->get<long long>() < 0) {
      fail(path_ + "." + key, "expected a non-negative integer");
    }
    return v->get<std::uint64_t>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    const json* v = take(key);
    if (!v) return fallback;
    if (!v->is_string()) fail(path_ + "." + key, "expected a string");
    return v->get<std::string>();
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  ObjectReader object(const std::string& key) {
    const json* v = take(key);
    static const json empty = json::object();
    return ObjectReader(v ? *v : empty, path_ + "." + key);
  }

  void finish() {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!consumed_.contains(it.key())) {
        fail(path_ + "." + it.key(), "unknown key");
      }
    }
  }

 private:
  const json* take(const std::string& key) {
    consumed_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const json& j_;
  std::string path_;
  std::set<std::string> consumed_;
};

void require_range(double v, double lo, double hi, const std::string& path) {
  if (!(v >= lo && v <= hi)) {
    std::ostringstream os;
    os << "value " << v << " outside [" << lo << ", " << hi << "]";
    fail(path, os.str());
  }
}

void require_min(double v, double lo, const std::string& path) {
  if (!(v >= lo)) {
    std::ostringstream os;
    os << "value " << v << " must be >= " << lo;
    fail(path, os.str());
  }
}

}  // namespace

const char* to_string(FeedForwardMode mode) {
  return mode == FeedForwardMode::WithFeedForward ? "with_ff" : "without_ff";
}

FeedForwardMode feed_forward_mode_from_string(const std::string& s) {
  if (s == "with_ff") return FeedForwardMode::WithFeedForward;
  if (s == "without_ff") return FeedForwardMode::WithoutFeedForward;
  throw ConfigError("mode: expected \"with_ff\" or \"without_ff\", got \"" + s +
                    "\"");
}

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text, nullptr, /*allow_exceptions=*/true,
                       /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }

  ExperimentConfig cfg;
  ObjectReader top(root, "config");

  {
    ObjectReader sources = top.object("sources");
    cfg.sources.mu_alice = sources.number("mu_alice", cfg.sources.mu_alice);
    cfg.sources.mu_charlie =
        sources.number("mu_charlie", cfg.sources.mu_charlie);
    cfg.sources.purity_alice =
        sources.number("purity_alice", cfg.sources.purity_alice);
    cfg.sources.purity_charlie =
        sources.number("purity_charlie", cfg.sources.purity_charlie);
    cfg.sources.heralding_efficiency =
        sources.number("heralding_efficiency", cfg.sources.heralding_efficiency);
    sources.finish();
  }
  {
    ObjectReader noise = top.object("noise");
    cfg.noise.visibility = noise.number("visibility", cfg.noise.visibility);
    cfg.noise.unitary_fidelity =
        noise.number("unitary_fidelity", cfg.noise.unitary_fidelity);
    noise.finish();
  }
  {
    ObjectReader topo = top.object("topology");
    {
      ObjectReader link = topo.object("alice_charlie");
      cfg.topology.alice_charlie.length_km =
          link.number("length_km", cfg.topology.alice_charlie.length_km);
      cfg.topology.alice_charlie.loss_db =
          link.number("loss_db", cfg.topology.alice_charlie.loss_db);
      link.finish();
    }
    {
      ObjectReader link = topo.object("charlie_bob");
      cfg.topology.charlie_bob.length_km =
          link.number("length_km", cfg.topology.charlie_bob.length_km);
      cfg.topology.charlie_bob.loss_db =
          link.number("loss_db", cfg.topology.charlie_bob.loss_db);
      link.finish();
    }
    cfg.topology.buffer_charlie_km =
        topo.number("buffer_charlie_km", cfg.topology.buffer_charlie_km);
    cfg.topology.buffer_bob_km =
        topo.number("buffer_bob_km", cfg.topology.buffer_bob_km);
    cfg.topology.classical_latency_ns =
        topo.number("classical_latency_ns", cfg.topology.classical_latency_ns);
    cfg.topology.buffer_loss_db_per_km =
        topo.number("buffer_loss_db_per_km", cfg.topology.buffer_loss_db_per_km);
    topo.finish();
  }
  {
    ObjectReader clock = top.object("clock");
    cfg.clock.repetition_period_ns =
        clock.number("repetition_period_ns", cfg.clock.repetition_period_ns);
    cfg.clock.jitter_rms_ps =
        clock.number("jitter_rms_ps", cfg.clock.jitter_rms_ps);
    cfg.clock.coherence_time_ps =
        clock.number("coherence_time_ps", cfg.clock.coherence_time_ps);
    clock.finish();
  }
  {
    ObjectReader det = top.object("detectors");
    cfg.detectors.efficiency = det.number("efficiency", cfg.detectors.efficiency);
    cfg.detectors.dark_count_prob_per_gate = det.number(
        "dark_count_prob_per_gate", cfg.detectors.dark_count_prob_per_gate);
    cfg.detectors.recovery_time_ns =
        det.number("recovery_time_ns", cfg.detectors.recovery_time_ns);
    det.finish();
  }
  {
    ObjectReader budget = top.object("budget_assumptions");
    cfg.budget_assumptions.encoder_insertion = budget.number(
        "encoder_insertion", cfg.budget_assumptions.encoder_insertion);
    cfg.budget_assumptions.fbg_acceptance =
        budget.number("fbg_acceptance", cfg.budget_assumptions.fbg_acceptance);
    cfg.budget_assumptions.analysis_arm_efficiency =
        budget.number("analysis_arm_efficiency",
                      cfg.budget_assumptions.analysis_arm_efficiency);
    budget.finish();
  }
  {
    ObjectReader run = top.object("run");
    cfg.run.trials_per_state =
        run.integer("trials_per_state", cfg.run.trials_per_state);
    cfg.run.shots_per_basis =
        run.integer("shots_per_basis", cfg.run.shots_per_basis);
    bool seed_present = false;
    cfg.run.seed = run.uinteger("seed", cfg.run.seed, &seed_present);
    if (!seed_present) fail("config.run.seed", "seed is mandatory");
    run.finish();
  }
  cfg.mode = feed_forward_mode_from_string(top.text("mode", "with_ff"));
  top.finish();

  validate(cfg);
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate(const ExperimentConfig& cfg) {
  require_min(cfg.sources.mu_alice, 0.0, "sources.mu_alice");
  require_min(cfg.sources.mu_charlie, 0.0, "sources.mu_charlie");
  if (cfg.sources.mu_alice >= 1.0 || cfg.sources.mu_charlie >= 1.0) {
    fail("sources", "mean pairs per pulse must be < 1 (physical regime)");
  }
  if (!(cfg.sources.purity_alice > 0.0 && cfg.sources.purity_alice <= 1.0)) {
    fail("sources.purity_alice", "purity must be in (0,1]");
  }
  if (!(cfg.sources.purity_charlie > 0.0 && cfg.sources.purity_charlie <= 1.0)) {
    fail("sources.purity_charlie", "purity must be in (0,1]");
  }
  require_range(cfg.sources.heralding_efficiency, 0.0, 1.0,
                "sources.heralding_efficiency");
  require_range(cfg.noise.visibility, 0.0, 1.0, "noise.visibility");
  require_range(cfg.noise.unitary_fidelity, 0.0, 1.0, "noise.unitary_fidelity");
  require_min(cfg.topology.alice_charlie.length_km, 0.0,
              "topology.alice_charlie.length_km");
  require_min(cfg.topology.alice_charlie.loss_db, 0.0,
              "topology.alice_charlie.loss_db");
  require_min(cfg.topology.charlie_bob.length_km, 0.0,
              "topology.charlie_bob.length_km");
  require_min(cfg.topology.charlie_bob.loss_db, 0.0,
              "topology.charlie_bob.loss_db");
  require_min(cfg.topology.buffer_charlie_km, 0.0,
              "topology.buffer_charlie_km");
  require_min(cfg.topology.buffer_bob_km, 0.0, "topology.buffer_bob_km");
  require_min(cfg.topology.classical_latency_ns, 0.0,
              "topology.classical_latency_ns");
  require_min(cfg.topology.buffer_loss_db_per_km, 0.0,
              "topology.buffer_loss_db_per_km");
  if (!(cfg.clock.repetition_period_ns > 0.0)) {
    fail("clock.repetition_period_ns", "must be > 0");
  }
  require_min(cfg.clock.jitter_rms_ps, 0.0, "clock.jitter_rms_ps");
  if (!(cfg.clock.coherence_time_ps > 0.0)) {
    fail("clock.coherence_time_ps", "must be > 0");
  }
  require_range(cfg.detectors.efficiency, 0.0, 1.0, "detectors.efficiency");
  require_range(cfg.detectors.dark_count_prob_per_gate, 0.0, 1.0,
                "detectors.dark_count_prob_per_gate");
  require_min(cfg.detectors.recovery_time_ns, 0.0,
              "detectors.recovery_time_ns");
  require_range(cfg.budget_assumptions.encoder_insertion, 0.0, 1.0,
                "budget_assumptions.encoder_insertion");
  require_range(cfg.budget_assumptions.fbg_acceptance, 0.0, 1.0,
                "budget_assumptions.fbg_acceptance");
  require_range(cfg.budget_assumptions.analysis_arm_efficiency, 0.0, 1.0,
                "budget_assumptions.analysis_arm_efficiency");
  if (cfg.run.trials_per_state < 1) {
    fail("run.trials_per_state", "must be >= 1");
  }
  if (cfg.run.shots_per_basis < 1) fail("run.shots_per_basis", "must be >= 1");
}

std::string to_json_string(const ExperimentConfig& cfg) {
  json j;
  j["sources"] = {{"mu_alice", cfg.sources.mu_alice},
                  {"mu_charlie", cfg.sources.mu_charlie},
                  {"purity_alice", cfg.sources.purity_alice},
                  {"purity_charlie", cfg.sources.purity_charlie},
                  {"heralding_efficiency", cfg.sources.heralding_efficiency}};
  j["noise"] = {{"visibility", cfg.noise.visibility},
                {"unitary_fidelity", cfg.noise.unitary_fidelity}};
  j["topology"] = {
      {"alice_charlie",
       {{"length_km", cfg.topology.alice_charlie.length_km},
        {"loss_db", cfg.topology.alice_charlie.loss_db}}},
      {"charlie_bob",
       {{"length_km", cfg.topology.charlie_bob.length_km},
        {"loss_db", cfg.topology.charlie_bob.loss_db}}},
      {"buffer_charlie_km", cfg.topology.buffer_charlie_km},
      {"buffer_bob_km", cfg.topology.buffer_bob_km},
      {"classical_latency_ns", cfg.topology.classical_latency_ns},
      {"buffer_loss_db_per_km", cfg.topology.buffer_loss_db_per_km}};
  j["clock"] = {{"repetition_period_ns", cfg.clock.repetition_period_ns},
                {"jitter_rms_ps", cfg.clock.jitter_rms_ps},
                {"coherence_time_ps", cfg.clock.coherence_time_ps}};
  j["detectors"] = {
      {"efficiency", cfg.detectors.efficiency},
      {"dark_count_prob_per_gate", cfg.detectors.dark_count_prob_per_gate},
      {"recovery_time_ns", cfg.detectors.recovery_time_ns}};
  j["budget_assumptions"] = {
      {"encoder_insertion", cfg.budget_assumptions.encoder_insertion},
      {"fbg_acceptance", cfg.budget_assumptions.fbg_acceptance},
      {"analysis_arm_efficiency",
       cfg.budget_assumptions.analysis_arm_efficiency}};
  j["run"] = {{"trials_per_state", cfg.run.trials_per_state},
              {"shots_per_basis", cfg.run.shots_per_basis},
              {"seed", cfg.run.seed}};
  j["mode"] = to_string(cfg.mode);
  return j.dump(2);
}

BudgetInputs budget_inputs_from_config(const ExperimentConfig& cfg) {
  return make_budget_inputs(
      cfg.topology, cfg.sources.mu_alice, cfg.sources.mu_charlie,
      cfg.sources.heralding_efficiency, cfg.budget_assumptions.encoder_insertion,
      cfg.budget_assumptions.fbg_acceptance, cfg.detectors.efficiency,
      cfg.budget_assumptions.analysis_arm_efficiency);
}

}  // namespace telesim
