// SPDX-License-Identifier: Apache-2.0
#include "telesim/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace telesim {

double mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean: empty data");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double sample_stddev(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double standard_error(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("standard_error: empty data");
  return sample_stddev(xs) / std::sqrt(static_cast<double>(xs.size()));
}

double hoeffding_log(double mean_fidelity, long long n_per_state) {
  if (n_per_state < 1) {
    throw std::invalid_argument("hoeffding: N must be >= 1");
  }
  const double four_thirds = 4.0 / 3.0;
  const double two_thirds = 2.0 / 3.0;
  if (mean_fidelity >= four_thirds) {
    throw std::invalid_argument("hoeffding: mean fidelity outside (., 4/3)");
  }
  // A classical strategy can reach 2/3 on average, so the bound is vacuous.
  if (mean_fidelity <= two_thirds) return 0.0;
  const double a = (four_thirds - mean_fidelity) / four_thirds;
  const double b = two_thirds / (four_thirds - mean_fidelity);
  const double c = mean_fidelity / four_thirds;
  const double d = two_thirds / mean_fidelity;
  // Evaluated in log space: the bracket is raised to the 4N-th power, which
  // underflows double precision long before the observed fidelities do.
  return 4.0 * static_cast<double>(n_per_state) *
         (a * std::log(b) + c * std::log(d));
}

double hoeffding_bound(double mean_fidelity, long long n_per_state) {
  return std::exp(hoeffding_log(mean_fidelity, n_per_state));
}

PValue hoeffding_pvalue(double mean_fidelity, long long n_per_state) {
  PValue p;
  const double ln_p = hoeffding_log(mean_fidelity, n_per_state);
  p.log10_p = ln_p / std::log(10.0);
  p.exponent10 = static_cast<int>(std::floor(p.log10_p));
  p.mantissa = std::pow(10.0, p.log10_p - p.exponent10);
  // Guard against mantissa rounding to 10 when log10_p is an exact integer.
  if (p.mantissa >= 10.0) {
    p.mantissa /= 10.0;
    p.exponent10 += 1;
  }
  p.value = std::exp(ln_p);
  return p;
}

HypothesisResult hoeffding_test(double mean_fidelity, long long n_per_state) {
  return HypothesisResult{mean_fidelity, n_per_state,
                          hoeffding_pvalue(mean_fidelity, n_per_state)};
}

double bootstrap_fidelity_error(std::span<const double> per_trial_fidelities,
                                int resamples, std::mt19937_64& rng) {
  if (per_trial_fidelities.empty()) {
    throw std::invalid_argument("bootstrap: empty data");
  }
  if (resamples < 100) {
    throw std::invalid_argument("bootstrap: need at least 100 resamples");
  }
  const std::size_t n = per_trial_fidelities.size();
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<double> means;
  means.reserve(resamples);
  for (int r = 0; r < resamples; ++r) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += per_trial_fidelities[pick(rng)];
    means.push_back(s / static_cast<double>(n));
  }
  return sample_stddev(means);
}

double bootstrap_fidelity_error(const CountTable& counts,
                                const PureState& target, int resamples,
                                std::mt19937_64& rng) {
  if (resamples < 100) {
    throw std::invalid_argument("bootstrap: need at least 100 resamples");
  }
  if (counts.z.total() <= 0 || counts.x.total() <= 0 || counts.y.total() <= 0) {
    throw std::invalid_argument("bootstrap: empty count table");
  }
  auto resample = [&rng](long long observed) -> long long {
    if (observed <= 0) return 0;
    std::poisson_distribution<long long> dist(
        static_cast<double>(observed));
    return dist(rng);
  };
  std::vector<double> fids;
  fids.reserve(resamples);
  int r = 0;
  int attempts = 0;
  while (r < resamples) {
    if (++attempts > 20 * resamples) {
      throw std::runtime_error("bootstrap: resampled counts keep emptying");
    }
    CountTable t;
    t.z = {resample(counts.z.n_plus), resample(counts.z.n_minus)};
    t.x = {resample(counts.x.n_plus), resample(counts.x.n_minus)};
    t.y = {resample(counts.y.n_plus), resample(counts.y.n_minus)};
    if (t.z.total() == 0 || t.x.total() == 0 || t.y.total() == 0) continue;
    fids.push_back(fidelity_pure(target, reconstruct_state(t)));
    ++r;
  }
  return sample_stddev(fids);
}

}  // namespace telesim
