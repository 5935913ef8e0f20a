// SPDX-License-Identifier: Apache-2.0
#include "telesim/photonics.hpp"

#include <cmath>
#include <stdexcept>

namespace telesim {

int sample_pair_count(const SourceParams& src, std::mt19937_64& rng) {
  const double mu = src.mean_pairs_per_pulse;
  if (mu < 0.0) {
    throw std::invalid_argument("sample_pair_count: mean must be >= 0");
  }
  if (mu == 0.0) return 0;
  // The thermal distribution is geometric with success probability 1/(1+mu).
  std::geometric_distribution<int> dist(1.0 / (1.0 + mu));
  return dist(rng);
}

double transmission(const ChannelParams& ch) {
  if (ch.loss_db < 0.0) {
    throw std::invalid_argument("transmission: loss_db must be >= 0");
  }
  return std::pow(10.0, -ch.loss_db / 10.0);
}

DensityMatrix apply_visibility(const DensityMatrix& rho_ideal, double v) {
  if (v < 0.0 || v > 1.0) {
    throw std::invalid_argument("apply_visibility: V must be in [0,1]");
  }
  if (rho_ideal.dim() != 2) {
    throw std::invalid_argument("apply_visibility: state must be 2x2");
  }
  return DensityMatrix::from_matrix(
      v * rho_ideal.matrix() +
      (1.0 - v) * 0.5 * Eigen::MatrixXcd::Identity(2, 2));
}

DensityMatrix apply_unitary_error(const DensityMatrix& rho, double f_u,
                                  const Mat2& intended, std::mt19937_64& rng) {
  if (f_u < 0.0 || f_u > 1.0) {
    throw std::invalid_argument("apply_unitary_error: F_u must be in [0,1]");
  }
  DensityMatrix rotated = apply_unitary(intended, rho);  // checks unitarity
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (coin(rng) < f_u) return rotated;
  Eigen::MatrixXcd m = rotated.matrix();
  m(0, 1) = 0;
  m(1, 0) = 0;
  return DensityMatrix::from_matrix(std::move(m));
}

bool detector_fires(bool signal_present, const DetectorParams& det,
                    std::mt19937_64& rng) {
  const double p = signal_present ? det.efficiency : det.dark_count_prob_per_gate;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return u(rng) < p;
}

}  // namespace telesim
