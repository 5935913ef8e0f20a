// SPDX-License-Identifier: Apache-2.0
#include "telesim/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace telesim {

namespace {

// Closest PSD matrix with the same trace, by eigenvalue truncation with
// redistribution: walk the spectrum from the smallest eigenvalue, zero out
// anything that cannot be made non-negative, and spread the accumulated
// deficit uniformly over the remaining eigenvalues.
Eigen::MatrixXcd project_psd_keep_trace(const Eigen::MatrixXcd& hermitian) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian);
  Eigen::VectorXd vals = es.eigenvalues();  // ascending
  const int n = static_cast<int>(vals.size());
  double deficit = 0.0;
  for (int i = 0; i < n; ++i) {
    const int remaining = n - i;
    if (vals(i) + deficit / remaining < 0.0) {
      deficit += vals(i);
      vals(i) = 0.0;
    } else {
      for (int j = i; j < n; ++j) vals(j) += deficit / remaining;
      deficit = 0.0;
      break;
    }
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (vals(i) <= 0.0) continue;
    out += vals(i) * es.eigenvectors().col(i) *
           es.eigenvectors().col(i).adjoint();
  }
  return out;
}

double stokes_component(const BasisCounts& c, const char* basis) {
  const long long total = c.total();
  if (total <= 0) {
    throw std::invalid_argument(std::string("reconstruct_state: basis ") +
                                basis + " has zero total counts");
  }
  if (c.n_plus < 0 || c.n_minus < 0) {
    throw std::invalid_argument("reconstruct_state: negative count");
  }
  return static_cast<double>(c.n_plus - c.n_minus) / static_cast<double>(total);
}

}  // namespace

CountTable simulate_counts(const DensityMatrix& rho, long long shots_per_basis,
                           std::mt19937_64& rng) {
  if (shots_per_basis < 1) {
    throw std::invalid_argument("simulate_counts: shots must be >= 1");
  }
  if (rho.dim() != 2) {
    throw std::invalid_argument("simulate_counts: state must be 2x2");
  }
  const std::array<PauliLabel, 3> bases = {PauliLabel::Z, PauliLabel::X,
                                           PauliLabel::Y};
  CountTable table;
  BasisCounts* slots[3] = {&table.z, &table.x, &table.y};
  for (int i = 0; i < 3; ++i) {
    const Mat2 proj_plus =
        0.5 * (Mat2::Identity() + pauli::matrix(bases[i]));
    double p_plus = (proj_plus * rho.matrix()).trace().real();
    p_plus = std::clamp(p_plus, 0.0, 1.0);
    std::binomial_distribution<long long> dist(shots_per_basis, p_plus);
    slots[i]->n_plus = dist(rng);
    slots[i]->n_minus = shots_per_basis - slots[i]->n_plus;
  }
  return table;
}

DensityMatrix reconstruct_state(const CountTable& counts) {
  const double rz = stokes_component(counts.z, "Z");
  const double rx = stokes_component(counts.x, "X");
  const double ry = stokes_component(counts.y, "Y");
  Eigen::MatrixXcd lin =
      0.5 * (Mat2::Identity() + rx * pauli::X() + ry * pauli::Y() +
             rz * pauli::Z());
  // Linear inversion can leave the 2x2 with a negative eigenvalue; project.
  const double t = lin.trace().real();
  const double det = (lin(0, 0) * lin(1, 1) - lin(0, 1) * lin(1, 0)).real();
  if (t / 2.0 - std::sqrt(std::max(0.0, t * t / 4.0 - det)) < 0.0) {
    lin = project_psd_keep_trace(lin);
  }
  return DensityMatrix::from_matrix(std::move(lin));
}

ChiMatrix ChiMatrix::from_matrix(const Mat4& m) {
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("ChiMatrix: matrix is not Hermitian");
  }
  if (std::abs(m.trace().real() - 1.0) > 1e-10 ||
      std::abs(m.trace().imag()) > 1e-10) {
    throw std::invalid_argument("ChiMatrix: trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Mat4> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-8) {
    throw std::invalid_argument("ChiMatrix: matrix is not PSD");
  }
  return ChiMatrix(m);
}

ChiMatrix ChiMatrix::project(const Mat4& m) {
  Mat4 herm = 0.5 * (m + m.adjoint());
  const double tr = herm.trace().real();
  if (std::abs(tr) < 1e-6) {
    throw std::invalid_argument("ChiMatrix: trace too small to normalize");
  }
  herm /= tr;
  Eigen::SelfAdjointEigenSolver<Mat4> probe(herm, Eigen::EigenvaluesOnly);
  if (probe.eigenvalues().minCoeff() < 0.0) {
    herm = project_psd_keep_trace(herm);
  }
  return ChiMatrix(herm);
}

const ChiMatrix& ideal_sigma_y_process() {
  static const ChiMatrix ideal = [] {
    Mat4 m = Mat4::Zero();
    m(static_cast<int>(PauliLabel::Y), static_cast<int>(PauliLabel::Y)) = 1.0;
    return ChiMatrix::from_matrix(m);
  }();
  return ideal;
}

ChiMatrix reconstruct_process(
    const std::map<InputStateLabel, DensityMatrix>& outputs) {
  for (const auto label : kInputLabels) {
    if (!outputs.contains(label)) {
      throw std::invalid_argument(
          std::string("reconstruct_process: missing output for input ") +
          to_string(label));
    }
  }
  const Eigen::MatrixXcd& r_t0 = outputs.at(InputStateLabel::T0).matrix();
  const Eigen::MatrixXcd& r_t1 = outputs.at(InputStateLabel::T1).matrix();
  const Eigen::MatrixXcd& r_d = outputs.at(InputStateLabel::D).matrix();
  const Eigen::MatrixXcd& r_r = outputs.at(InputStateLabel::R).matrix();

  std::array<Mat2, 4> action;  // E(sigma_k) for k = I, X, Y, Z
  action[0] = r_t0 + r_t1;
  action[1] = 2.0 * r_d - action[0];
  action[2] = 2.0 * r_r - action[0];
  action[3] = r_t0 - r_t1;

  // Rows: (input basis op k, output entry ij); columns: chi index (m, n).
  Eigen::MatrixXcd system(16, 16);
  Eigen::VectorXcd rhs(16);
  for (int k = 0; k < 4; ++k) {
    const Mat2& sig_k = pauli::matrix(static_cast<PauliLabel>(k));
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const int row = 4 * k + 2 * i + j;
        rhs(row) = action[k](i, j);
        for (int m = 0; m < 4; ++m) {
          for (int n = 0; n < 4; ++n) {
            const Mat2 op = pauli::matrix(static_cast<PauliLabel>(m)) * sig_k *
                            pauli::matrix(static_cast<PauliLabel>(n));
            system(row, 4 * m + n) = op(i, j);
          }
        }
      }
    }
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(system);
  // The canonical inputs span the operator basis, so the system is full rank.
  if (qr.rank() < 16) {
    throw std::logic_error("reconstruct_process: singular system");
  }
  const Eigen::VectorXcd chi_vec = qr.solve(rhs);
  Mat4 chi;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) chi(m, n) = chi_vec(4 * m + n);
  return ChiMatrix::project(chi);
}

double process_fidelity(const ChiMatrix& chi, const ChiMatrix& chi_ideal) {
  return (chi.matrix() * chi_ideal.matrix()).trace().real();
}

double average_fidelity_from_process(double f_p) {
  if (f_p < 0.0 || f_p > 1.0) {
    throw std::invalid_argument(
        "average_fidelity_from_process: F_p must be in [0,1]");
  }
  return (2.0 * f_p + 1.0) / 3.0;
}

}  // namespace telesim
