// SPDX-License-Identifier: Apache-2.0
#include "telesim/runner.hpp"

#include <json.hpp>

// JSON serialization of RunReport.  The format is the interchange surface of
// the CLI; parse(to_json_string(r)) reproduces r exactly, and serialization
// is byte-deterministic for a given report.

namespace telesim {

namespace {

using nlohmann::json;

json nested(const std::vector<std::vector<std::array<double, 2>>>& m) {
  json rows = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& e : row) r.push_back(json::array({e[0], e[1]}));
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<std::vector<std::array<double, 2>>> unnested(const json& j) {
  std::vector<std::vector<std::array<double, 2>>> m;
  for (const auto& row : j) {
    std::vector<std::array<double, 2>> r;
    for (const auto& e : row) {
      r.push_back({e.at(0).get<double>(), e.at(1).get<double>()});
    }
    m.push_back(std::move(r));
  }
  return m;
}

json counts_to_json(const CountTable& t) {
  auto basis = [](const BasisCounts& b) {
    return json{{"plus", b.n_plus}, {"minus", b.n_minus}};
  };
  return json{{"Z", basis(t.z)}, {"X", basis(t.x)}, {"Y", basis(t.y)}};
}

CountTable counts_from_json(const json& j) {
  auto basis = [](const json& b) {
    return BasisCounts{b.at("plus").get<long long>(),
                       b.at("minus").get<long long>()};
  };
  return CountTable{basis(j.at("Z")), basis(j.at("X")), basis(j.at("Y"))};
}

}  // namespace

std::string to_json_string(const RunReport& report) {
  json j;
  j["schema"] = report.schema;
  j["seed"] = report.seed;
  j["mode"] = report.mode;
  j["config"] = json::parse(to_json_string(report.config));

  json labels = json::array();
  for (const auto& lr : report.labels) {
    labels.push_back(
        {{"label", lr.label},
         {"attempts", lr.attempts},
         {"successes", lr.successes},
         {"failures", lr.failures},
         {"mc_fidelity", {{"mean", lr.mc_fidelity_mean},
                          {"stderr", lr.mc_fidelity_stderr}}},
         {"counts", counts_to_json(lr.counts)},
         {"tomo_fidelity", {{"mean", lr.tomo_fidelity},
                            {"stderr", lr.tomo_fidelity_stderr}}},
         {"rho", nested(lr.rho)}});
  }
  j["labels"] = std::move(labels);
  j["average_fidelity"] = {{"mean", report.average_fidelity},
                           {"stderr", report.average_fidelity_stderr}};
  j["process"] = {
      {"chi", nested(report.chi)},
      {"fidelity", report.process_fidelity},
      {"average_fidelity_from_process", report.average_fidelity_from_process}};
  j["hoeffding"] = {
      {"observed_mean_fidelity", report.hoeffding.observed_mean_fidelity},
      {"trials_per_state", report.hoeffding.trials_per_state},
      {"p_mantissa", report.hoeffding.p_bound.mantissa},
      {"p_exponent10", report.hoeffding.p_bound.exponent10},
      {"log10_p", report.hoeffding.p_bound.log10_p},
      {"p_value", report.hoeffding.p_bound.value}};

  json stages = json::array();
  for (const auto& s : report.rate_budget.stages) {
    stages.push_back(
        {{"name", s.name}, {"value", s.value}, {"source", s.source}});
  }
  j["rate_budget"] = {
      {"stages", std::move(stages)},
      {"rep_rate_hz", report.rate_budget.rep_rate_hz},
      {"probability_per_pulse", report.rate_budget.probability_per_pulse},
      {"fourfold_per_second", report.rate_budget.fourfold_per_second},
      {"fourfold_per_hour", report.rate_budget.fourfold_per_hour}};

  json events = json::array();
  for (const auto& e : report.timeline.events) {
    events.push_back({{"name", e.name}, {"t_ns", e.t_ns}});
  }
  j["timing"] = {
      {"events", std::move(events)},
      {"idler_arrival_ns", report.timeline.idler_arrival_ns},
      {"bsm_ns", report.timeline.bsm_ns},
      {"entanglement_distributed_prior",
       report.timeline.entanglement_distributed_prior},
      {"photon_release_ns", report.timeline.feasibility.photon_release_ns},
      {"signal_arrival_ns", report.timeline.feasibility.signal_arrival_ns},
      {"slack_ns", report.timeline.feasibility.slack_ns},
      {"feasible", report.timeline.feasibility.feasible},
      {"jitter_coherence_ratio", report.timeline.jitter_coherence_ratio},
      {"mean_sync_overlap", report.timeline.mean_sync_overlap}};
  return j.dump(2);
}

RunReport report_from_json_string(const std::string& text) {
  const json j = json::parse(text);
  RunReport r;
  r.schema = j.at("schema").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.mode = j.at("mode").get<std::string>();
  r.config = parse_config(j.at("config").dump());

  const json& labels = j.at("labels");
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    const json& l = labels.at(i);
    LabelReport& lr = r.labels[i];
    lr.label = l.at("label").get<std::string>();
    lr.attempts = l.at("attempts").get<long long>();
    lr.successes = l.at("successes").get<long long>();
    lr.failures = l.at("failures").get<long long>();
    lr.mc_fidelity_mean = l.at("mc_fidelity").at("mean").get<double>();
    lr.mc_fidelity_stderr = l.at("mc_fidelity").at("stderr").get<double>();
    lr.counts = counts_from_json(l.at("counts"));
    lr.tomo_fidelity = l.at("tomo_fidelity").at("mean").get<double>();
    lr.tomo_fidelity_stderr = l.at("tomo_fidelity").at("stderr").get<double>();
    lr.rho = unnested(l.at("rho"));
  }
  r.average_fidelity = j.at("average_fidelity").at("mean").get<double>();
  r.average_fidelity_stderr =
      j.at("average_fidelity").at("stderr").get<double>();
  r.chi = unnested(j.at("process").at("chi"));
  r.process_fidelity = j.at("process").at("fidelity").get<double>();
  r.average_fidelity_from_process =
      j.at("process").at("average_fidelity_from_process").get<double>();
  r.hoeffding.observed_mean_fidelity =
      j.at("hoeffding").at("observed_mean_fidelity").get<double>();
  r.hoeffding.trials_per_state =
      j.at("hoeffding").at("trials_per_state").get<long long>();
  r.hoeffding.p_bound.mantissa =
      j.at("hoeffding").at("p_mantissa").get<double>();
  r.hoeffding.p_bound.exponent10 =
      j.at("hoeffding").at("p_exponent10").get<int>();
  r.hoeffding.p_bound.log10_p = j.at("hoeffding").at("log10_p").get<double>();
  r.hoeffding.p_bound.value = j.at("hoeffding").at("p_value").get<double>();

  const json& rb = j.at("rate_budget");
  for (const auto& s : rb.at("stages")) {
    r.rate_budget.stages.push_back({s.at("name").get<std::string>(),
                                    s.at("value").get<double>(),
                                    s.at("source").get<std::string>()});
  }
  r.rate_budget.rep_rate_hz = rb.at("rep_rate_hz").get<double>();
  r.rate_budget.probability_per_pulse =
      rb.at("probability_per_pulse").get<double>();
  r.rate_budget.fourfold_per_second =
      rb.at("fourfold_per_second").get<double>();
  r.rate_budget.fourfold_per_hour = rb.at("fourfold_per_hour").get<double>();

  const json& t = j.at("timing");
  for (const auto& e : t.at("events")) {
    r.timeline.events.push_back(
        {e.at("name").get<std::string>(), e.at("t_ns").get<double>()});
  }
  r.timeline.idler_arrival_ns = t.at("idler_arrival_ns").get<double>();
  r.timeline.bsm_ns = t.at("bsm_ns").get<double>();
  r.timeline.entanglement_distributed_prior =
      t.at("entanglement_distributed_prior").get<bool>();
  r.timeline.feasibility.photon_release_ns =
      t.at("photon_release_ns").get<double>();
  r.timeline.feasibility.signal_arrival_ns =
      t.at("signal_arrival_ns").get<double>();
  r.timeline.feasibility.slack_ns = t.at("slack_ns").get<double>();
  r.timeline.feasibility.feasible = t.at("feasible").get<bool>();
  r.timeline.jitter_coherence_ratio =
      t.at("jitter_coherence_ratio").get<double>();
  r.timeline.mean_sync_overlap = t.at("mean_sync_overlap").get<double>();
  return r;
}

}  // namespace telesim
