// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <random>

#include "telesim/protocol.hpp"
#include "telesim/qubit.hpp"

// Single-qubit state tomography from Pauli-basis counts and process
// tomography of the teleportation channel over the canonical inputs
// {T0, T1, D, R}.  Reconstruction is linear inversion followed by projection
// onto the physical (PSD, unit-trace) set.

namespace telesim {

struct BasisCounts {
  long long n_plus = 0;
  long long n_minus = 0;
  long long total() const { return n_plus + n_minus; }
};

/// Coincidence counts per measurement basis.  Z comes from time of arrival,
/// X and Y from the two analysis-interferometer phase settings.
struct CountTable {
  BasisCounts z, x, y;
};

/// Binomial counts per basis with p_plus = tr(rho * (I + sigma_k)/2).
CountTable simulate_counts(const DensityMatrix& rho, long long shots_per_basis,
                           std::mt19937_64& rng);

/// Linear inversion: Stokes components r_k = (n+ - n-)/(n+ + n-),
/// rho = (I + sum_k r_k sigma_k)/2, projected to the closest PSD unit-trace
/// matrix (eigenvalue truncation with redistribution) when sampling noise
/// pushes an eigenvalue negative.
DensityMatrix reconstruct_state(const CountTable& counts);

/// 4x4 process matrix over the Pauli basis {I, X, Y, Z}:
/// E(rho) = sum_{mn} chi_{mn} sigma_m rho sigma_n.
class ChiMatrix {
 public:
  /// Validates Hermiticity and unit trace; PSD within slack.
  static ChiMatrix from_matrix(const Mat4& m);
  /// Hermitizes, renormalizes the trace, and projects to PSD.
  static ChiMatrix project(const Mat4& m);

  const Mat4& matrix() const { return m_; }
  cplx operator()(PauliLabel row, PauliLabel col) const {
    return m_(static_cast<int>(row), static_cast<int>(col));
  }

 private:
  explicit ChiMatrix(Mat4 m) : m_(std::move(m)) {}
  Mat4 m_;
};

/// Process matrix of the ideal teleportation channel rho -> sigma_y rho
/// sigma_y (the single YY entry is 1).
const ChiMatrix& ideal_sigma_y_process();

/// Reconstructs chi from the channel's measured action on the four canonical
/// inputs.  The action on the Pauli operator basis is assembled as
///   E(I) = E(T0) + E(T1),  E(Z) = E(T0) - E(T1),
///   E(X) = 2 E(D) - E(I),  E(Y) = 2 E(R) - E(I),
/// and the 16x16 linear system sum_{mn} chi_{mn} sigma_m sigma_k sigma_n =
/// E(sigma_k) is solved for chi, which is then Hermitized and projected.
/// Throws if any of the four labels is missing.
ChiMatrix reconstruct_process(
    const std::map<InputStateLabel, DensityMatrix>& outputs);

/// tr(chi * chi_ideal); equals the chi-matrix overlap for a rank-one ideal.
double process_fidelity(const ChiMatrix& chi, const ChiMatrix& chi_ideal);

/// Haar-average state fidelity of a qubit channel with process fidelity F_p
/// to a unitary: (2 F_p + 1) / 3.
double average_fidelity_from_process(double f_p);

}  // namespace telesim
