#include <doctest.h>

#include <cmath>

#include <telesim/netsim.hpp>
#include <telesim/rng.hpp>

using namespace telesim;

TEST_CASE("propagation delay") {
  CHECK(propagation_delay_ns(0.0) == 0.0);
  CHECK(propagation_delay_ns(15.0) == doctest::Approx(73425.0));
  CHECK(propagation_delay_ns(14.7) == doctest::Approx(71956.5));
  CHECK_THROWS_AS(propagation_delay_ns(-1.0), std::invalid_argument);
}

TEST_CASE("feed-forward feasibility") {
  NetworkTopology topo;  // defaults: 15 km buffers, 14.7 km hop, 0 latency
  const FeasibilityReport def = feed_forward_feasible(topo);
  CHECK(def.photon_release_ns == doctest::Approx(73425.0));
  CHECK(def.signal_arrival_ns == doctest::Approx(71956.5));
  CHECK(def.slack_ns == doctest::Approx(1468.5));
  CHECK(def.feasible);

  topo.classical_latency_ns = 2000.0;
  CHECK_FALSE(feed_forward_feasible(topo).feasible);

  topo.classical_latency_ns = 0.0;
  topo.buffer_bob_km = 0.0;
  CHECK_FALSE(feed_forward_feasible(topo).feasible);

  // zero-length network is trivially feasible (slack 0)
  NetworkTopology null_topo;
  null_topo.alice_charlie = {0.0, 0.0, 0.0};
  null_topo.charlie_bob = {0.0, 0.0, 0.0};
  null_topo.buffer_charlie_km = 0.0;
  null_topo.buffer_bob_km = 0.0;
  const FeasibilityReport z = feed_forward_feasible(null_topo);
  CHECK(z.slack_ns == 0.0);
  CHECK(z.feasible);

  // slack is linear in the Bob buffer length with slope +4895 ns/km;
  // three points pin both linearity and the slope
  NetworkTopology t2;
  auto slack_at = [&t2](double km) {
    t2.buffer_bob_km = km;
    return feed_forward_feasible(t2).slack_ns;
  };
  const double s5 = slack_at(5.0), s10 = slack_at(10.0), s20 = slack_at(20.0);
  CHECK((s10 - s5) / 5.0 == doctest::Approx(4895.0));
  CHECK((s20 - s10) / 10.0 == doctest::Approx(4895.0));
}

TEST_CASE("timeline orders the BSM after entanglement distribution") {
  const NetworkTopology topo;
  const ClockModel clock;
  const Timeline tl = build_timeline(topo, clock);
  CHECK(tl.bsm_ns > tl.idler_arrival_ns);
  CHECK(tl.entanglement_distributed_prior);
  CHECK(tl.jitter_coherence_ratio == doctest::Approx(2.04 / 110.0));

  // event list is present and internally ordered
  REQUIRE(tl.events.size() == 6);
  CHECK(tl.events.front().name == "epr_pair_created");
  CHECK(tl.events.front().t_ns == 0.0);

  // a short relay buffer breaks the prior-distribution property
  NetworkTopology short_buffer = topo;
  short_buffer.buffer_charlie_km = 10.0;
  CHECK_FALSE(
      build_timeline(short_buffer, clock).entanglement_distributed_prior);
}

TEST_CASE("sync jitter penalty") {
  auto rng = make_stream(501, 1);
  ClockModel noiseless{10.0, 0.0, 110.0};
  for (int i = 0; i < 10; ++i) {
    CHECK(sync_jitter_penalty(noiseless, rng) == 1.0);
  }

  // measured jitter vs coherence: mean factor stays above 0.999
  ClockModel measured;
  CHECK(mean_sync_overlap(measured) >= 0.999);
  double acc = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) acc += sync_jitter_penalty(measured, rng);
  CHECK(acc / n >= 0.999);

  // jitter equal to coherence: mean = 1/sqrt(2)
  ClockModel equal{10.0, 110.0, 110.0};
  CHECK(mean_sync_overlap(equal) == doctest::Approx(1.0 / std::sqrt(2.0)));
  acc = 0.0;
  for (int i = 0; i < n; ++i) acc += sync_jitter_penalty(equal, rng);
  CHECK(acc / n == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(5e-3));

  // mean overlap decreases monotonically with jitter
  double prev = 2.0;
  for (double j : {0.0, 1.0, 5.0, 25.0, 110.0, 500.0}) {
    ClockModel c{10.0, j, 110.0};
    const double m = mean_sync_overlap(c);
    CHECK(m < prev + 1e-15);
    prev = m;
  }

  ClockModel bad{10.0, 1.0, 0.0};
  CHECK_THROWS_AS(sync_jitter_penalty(bad, rng), std::invalid_argument);
}

TEST_CASE("coincidence rate budget") {
  const NetworkTopology topo;
  BudgetInputs in = make_budget_inputs(topo, 0.08, 0.03, 0.02, 0.5, 0.25,
                                       0.15, 0.25);
  const RateBudget budget = coincidence_rate_budget(in, 1e8);
  // documented defaults land within one order of magnitude of 2 per hour
  CHECK(budget.fourfold_per_hour >= 0.2);
  CHECK(budget.fourfold_per_hour <= 20.0);
  CHECK(std::abs(std::log10(budget.fourfold_per_hour / 2.0)) <= 1.0);

  // every stage is itemised and the product matches
  double p = 1.0;
  for (const auto& s : budget.stages) p *= s.value;
  CHECK(budget.probability_per_pulse == doctest::Approx(p));
  CHECK(budget.fourfold_per_hour ==
        doctest::Approx(p * 1e8 * 3600.0).epsilon(1e-12));

  // zero source -> zero rate
  BudgetInputs dead = in;
  dead.pair_emission_alice = 0.0;
  CHECK(coincidence_rate_budget(dead, 1e8).fourfold_per_hour == 0.0);

  // all-unity probabilities with the 3/8 BSM factor -> rep_rate * 3/8
  BudgetInputs unity;
  unity.pair_emission_alice = 1.0;
  unity.heralding_efficiency = 1.0;
  unity.link_alice_charlie_t = 1.0;
  unity.encoder_insertion = 1.0;
  unity.fbg_acceptance = 1.0;
  unity.detector_efficiency = 1.0;
  unity.pair_emission_charlie = 1.0;
  unity.buffer_charlie_t = 1.0;
  unity.link_charlie_bob_t = 1.0;
  unity.buffer_bob_t = 1.0;
  unity.analysis_arm_efficiency = 1.0;
  CHECK(coincidence_rate_budget(unity, 1e8).fourfold_per_second ==
        doctest::Approx(1e8 * 0.375));

  // multiplicativity: doubling one factor doubles the rate exactly
  BudgetInputs doubled = in;
  doubled.heralding_efficiency *= 2.0;
  CHECK(coincidence_rate_budget(doubled, 1e8).fourfold_per_hour ==
        doctest::Approx(2.0 * budget.fourfold_per_hour).epsilon(1e-12));

  BudgetInputs bad = in;
  bad.fbg_acceptance = 1.5;
  CHECK_THROWS_AS(coincidence_rate_budget(bad, 1e8), std::invalid_argument);
}
