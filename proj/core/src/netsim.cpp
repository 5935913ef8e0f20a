// SPDX-License-Identifier: Apache-2.0
#include "telesim/netsim.hpp"

#include <cmath>
#include <stdexcept>

namespace telesim {

double propagation_delay_ns(double length_km) {
  if (length_km < 0.0) {
    throw std::invalid_argument("propagation_delay: length must be >= 0");
  }
  return length_km * defaults::kFiberDelayNsPerKm;
}

FeasibilityReport feed_forward_feasible(const NetworkTopology& topo) {
  FeasibilityReport report;
  report.photon_release_ns = propagation_delay_ns(topo.buffer_bob_km);
  report.signal_arrival_ns =
      propagation_delay_ns(topo.charlie_bob.length_km) +
      topo.classical_latency_ns;
  report.slack_ns = report.photon_release_ns - report.signal_arrival_ns;
  report.feasible = report.slack_ns >= 0.0;
  return report;
}

Timeline build_timeline(const NetworkTopology& topo, const ClockModel& clock) {
  Timeline tl;
  const double link_cb = propagation_delay_ns(topo.charlie_bob.length_km);
  const double buffer_c = propagation_delay_ns(topo.buffer_charlie_km);
  const double buffer_b = propagation_delay_ns(topo.buffer_bob_km);

  tl.idler_arrival_ns = link_cb;
  tl.bsm_ns = buffer_c;  // stored signal exits the coil into the BSM
  tl.entanglement_distributed_prior = tl.bsm_ns > tl.idler_arrival_ns;

  tl.events = {
      {"epr_pair_created", 0.0},
      {"idler_arrives_at_bob", tl.idler_arrival_ns},
      {"bsm", tl.bsm_ns},
      {"feed_forward_sent", tl.bsm_ns + topo.classical_latency_ns},
      {"feed_forward_arrives", tl.bsm_ns + topo.classical_latency_ns + link_cb},
      {"photon_released_at_bob", tl.idler_arrival_ns + buffer_b},
  };

  tl.feasibility = feed_forward_feasible(topo);
  if (clock.coherence_time_ps <= 0.0) {
    throw std::invalid_argument("timeline: coherence time must be > 0");
  }
  tl.jitter_coherence_ratio = clock.jitter_rms_ps / clock.coherence_time_ps;
  tl.mean_sync_overlap = mean_sync_overlap(clock);
  return tl;
}

double sync_jitter_penalty(const ClockModel& clock, std::mt19937_64& rng) {
  if (clock.coherence_time_ps <= 0.0) {
    throw std::invalid_argument("sync_jitter_penalty: coherence must be > 0");
  }
  if (clock.jitter_rms_ps == 0.0) return 1.0;
  std::normal_distribution<double> dt(0.0, clock.jitter_rms_ps);
  const double x = dt(rng);
  return std::exp(-x * x /
                  (2.0 * clock.coherence_time_ps * clock.coherence_time_ps));
}

double mean_sync_overlap(const ClockModel& clock) {
  const double r = clock.jitter_rms_ps / clock.coherence_time_ps;
  return 1.0 / std::sqrt(1.0 + r * r);
}

BudgetInputs make_budget_inputs(const NetworkTopology& topo, double mu_alice,
                                double mu_charlie,
                                double heralding_efficiency,
                                double encoder_insertion, double fbg_acceptance,
                                double detector_efficiency,
                                double analysis_arm_efficiency) {
  BudgetInputs in;
  in.pair_emission_alice = mu_alice;
  in.pair_emission_charlie = mu_charlie;
  in.heralding_efficiency = heralding_efficiency;
  in.encoder_insertion = encoder_insertion;
  in.fbg_acceptance = fbg_acceptance;
  in.detector_efficiency = detector_efficiency;
  in.analysis_arm_efficiency = analysis_arm_efficiency;
  in.link_alice_charlie_t = transmission(topo.alice_charlie);
  in.link_charlie_bob_t = transmission(topo.charlie_bob);
  const double buf_c_db = topo.buffer_charlie_km * topo.buffer_loss_db_per_km;
  const double buf_b_db = topo.buffer_bob_km * topo.buffer_loss_db_per_km;
  in.buffer_charlie_t = std::pow(10.0, -buf_c_db / 10.0);
  in.buffer_bob_t = std::pow(10.0, -buf_b_db / 10.0);
  return in;
}

RateBudget coincidence_rate_budget(const BudgetInputs& in, double rep_rate_hz) {
  RateBudget budget;
  budget.rep_rate_hz = rep_rate_hz;
  // The four-fold needs the herald, both BSM detectors, and the analysis
  // detector to click, so detector_efficiency enters three times beyond the
  // composite heralding efficiency.
  budget.stages = {
      {"alice_pair_emission", in.pair_emission_alice, "measured"},
      {"alice_heralding_efficiency", in.heralding_efficiency, "assumption"},
      {"encoded_photon_link", in.link_alice_charlie_t, "measured"},
      {"encoder_insertion", in.encoder_insertion, "assumption"},
      {"encoded_photon_fbg_acceptance", in.fbg_acceptance, "assumption"},
      {"encoded_photon_detector", in.detector_efficiency, "assumption"},
      {"charlie_pair_emission", in.pair_emission_charlie, "measured"},
      {"stored_signal_buffer", in.buffer_charlie_t, "assumption"},
      {"stored_signal_fbg_acceptance", in.fbg_acceptance, "assumption"},
      {"stored_signal_detector", in.detector_efficiency, "assumption"},
      {"idler_link", in.link_charlie_bob_t, "measured"},
      {"idler_buffer", in.buffer_bob_t, "assumption"},
      {"bsm_success_factor", in.bsm_success_factor, "derived"},
      {"analysis_arm", in.analysis_arm_efficiency, "assumption"},
      {"analysis_detector", in.detector_efficiency, "assumption"},
  };
  double p = 1.0;
  for (const auto& stage : budget.stages) {
    if (stage.value < 0.0 || stage.value > 1.0) {
      throw std::invalid_argument("rate_budget: stage '" + stage.name +
                                  "' is outside [0,1]");
    }
    p *= stage.value;
  }
  budget.probability_per_pulse = p;
  budget.fourfold_per_second = p * rep_rate_hz;
  budget.fourfold_per_hour = budget.fourfold_per_second * 3600.0;
  return budget;
}

}  // namespace telesim
