// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "telesim/constants.hpp"

// Exact complex linear algebra for one- and two-qubit states in the time-bin
// basis |t0> = (1,0), |t1> = (0,1).  Bell ordering is PhiPlus, PhiMinus,
// PsiPlus, PsiMinus throughout.

namespace telesim {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec2 = Eigen::Vector2cd;
using Vec4 = Eigen::Vector4cd;

/// Normalized single-qubit amplitude pair.  Equality is physical, i.e. up to
/// a global phase; canonical() fixes the phase so that the first amplitude
/// with nonzero magnitude is real and non-negative.
class PureState {
 public:
  /// Requires |alpha|^2 + |beta|^2 = 1 within kAlgebraicTol.
  PureState(cplx alpha, cplx beta);

  /// Normalizes the given amplitudes (must not both be ~0).
  static PureState normalized(cplx alpha, cplx beta);

  cplx alpha() const { return alpha_; }
  cplx beta() const { return beta_; }
  Vec2 vector() const { return Vec2(alpha_, beta_); }

  PureState canonical() const;
  bool equals_up_to_phase(const PureState& other,
                          double tol = kAlgebraicTol) const;

  static PureState t0() { return PureState(1.0, 0.0); }
  static PureState t1() { return PureState(0.0, 1.0); }
  /// |D> = (|t0> + |t1>)/sqrt(2)
  static PureState d();
  /// |R> = (|t0> + i|t1>)/sqrt(2)
  static PureState r();

 private:
  cplx alpha_, beta_;
};

/// Haar-random single-qubit state.
PureState haar_random_state(std::mt19937_64& rng);

/// Hermitian, unit-trace, positive-semidefinite matrix of dimension 2 or 4.
/// Construction validates all three invariants (PSD within kPsdSlack).
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(Eigen::MatrixXcd m);
  static DensityMatrix pure(const PureState& psi);
  static DensityMatrix maximally_mixed(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  cplx operator()(int i, int j) const { return m_(i, j); }

  /// Smallest eigenvalue (clamped validation happens at construction; this
  /// re-derives it for diagnostics and tests).
  double min_eigenvalue() const;

 private:
  explicit DensityMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {}
  Eigen::MatrixXcd m_;
};

enum class PauliLabel { I, X, Y, Z };

namespace pauli {
const Mat2& I();
const Mat2& X();
const Mat2& Y();
const Mat2& Z();
const Mat2& matrix(PauliLabel p);
}  // namespace pauli

enum class BellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline constexpr std::array<BellLabel, 4> kBellOrder = {
    BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus,
    BellLabel::PsiMinus};

/// Two-qubit state vector of the given Bell state, in the basis
/// |q0 q1> -> index 2*q0 + q1.  PhiPlus = (|t0 t0> + |t1 t1>)/sqrt(2).
const Vec4& bell_vector(BellLabel b);

const char* to_string(BellLabel b);
const char* to_string(PauliLabel p);

// --- operations --------------------------------------------------------------

/// Kronecker product of two single-qubit density matrices.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// u must be unitary within kAlgebraicTol.
PureState apply_unitary(const Mat2& u, const PureState& s);
DensityMatrix apply_unitary(const Mat2& u, const DensityMatrix& rho);

/// <target| rho |target>, real within kAlgebraicTol.  rho must be 2x2.
double fidelity_pure(const PureState& target, const DensityMatrix& rho);

/// Uhlmann fidelity between qubit states via the 2x2 closed form
/// F = tr(a b) + 2 sqrt(det a det b).
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

enum class Subsystem { First, Second };

/// Partial trace of a two-qubit state down to the kept qubit.
DensityMatrix partial_trace(const DensityMatrix& rho4, Subsystem keep);

struct BellBranch {
  BellLabel bell;
  PureState conditional;  // receiver's state given this measurement outcome
  double probability;     // Born probability of the outcome
};

/// Decomposes |psi>_in (x) |PhiPlus>_si over the Bell basis of (in, s).
///
/// Writing the joint state as sum_B |B>_{in,s} (x) |w_B>_i, the receiver's
/// unnormalized conditional amplitudes are
///   w_c = (1/sqrt2) * sum_a conj(B_{a,c}) psi_a ,
/// which evaluates to psi, sz psi, sx psi, sy psi (each up to global phase,
/// probability 1/4) for PhiPlus, PhiMinus, PsiPlus, PsiMinus respectively.
/// Conditional states are returned in canonical phase.
std::array<BellBranch, 4> bell_decompose(const PureState& input);

}  // namespace telesim
