// SPDX-License-Identifier: Apache-2.0
#include "telesim/qubit.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace telesim {

namespace {

const double kSqrtHalf = 1.0 / std::sqrt(2.0);

void check_unitary(const Mat2& u) {
  if (((u * u.adjoint()) - Mat2::Identity()).cwiseAbs().maxCoeff() >
      kAlgebraicTol * 10) {
    throw std::invalid_argument("apply_unitary: operator is not unitary");
  }
}

}  // namespace

PureState::PureState(cplx alpha, cplx beta) : alpha_(alpha), beta_(beta) {
  const double n2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(n2 - 1.0) > 1e-9) {
    throw std::invalid_argument("PureState: amplitudes are not normalized");
  }
  // Renormalize exactly so downstream algebra sees norm 1 to full precision.
  const double n = std::sqrt(n2);
  alpha_ /= n;
  beta_ /= n;
}

PureState PureState::normalized(cplx alpha, cplx beta) {
  const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (n < 1e-15) {
    throw std::invalid_argument("PureState: cannot normalize the zero vector");
  }
  return PureState(alpha / n, beta / n);
}

PureState PureState::canonical() const {
  // Remove the global phase of the first amplitude with nonzero magnitude.
  // For a normalized state max(|alpha|,|beta|) >= 1/sqrt2, so the 1e-9 cut
  // only decides which amplitude anchors the phase.
  const cplx anchor = (std::abs(alpha_) > 1e-9) ? alpha_ : beta_;
  const cplx phase = anchor / std::abs(anchor);
  return PureState(alpha_ * std::conj(phase), beta_ * std::conj(phase));
}

bool PureState::equals_up_to_phase(const PureState& other, double tol) const {
  const cplx overlap =
      std::conj(alpha_) * other.alpha_ + std::conj(beta_) * other.beta_;
  return std::abs(1.0 - std::abs(overlap)) <= tol;
}

PureState PureState::d() { return PureState(kSqrtHalf, kSqrtHalf); }

PureState PureState::r() { return PureState(kSqrtHalf, cplx(0, kSqrtHalf)); }

PureState haar_random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const cplx a(gauss(rng), gauss(rng));
  const cplx b(gauss(rng), gauss(rng));
  return PureState::normalized(a, b);
}

DensityMatrix DensityMatrix::from_matrix(Eigen::MatrixXcd m) {
  const auto n = m.rows();
  if (m.cols() != n || (n != 2 && n != 4)) {
    throw std::invalid_argument("DensityMatrix: dimension must be 2 or 4");
  }
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  }
  if (std::abs(m.trace().real() - 1.0) > 1e-9 ||
      std::abs(m.trace().imag()) > 1e-10) {
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  }
  DensityMatrix rho(std::move(m));
  if (rho.min_eigenvalue() < -kPsdSlack) {
    throw std::invalid_argument(
        "DensityMatrix: matrix has a negative eigenvalue");
  }
  return rho;
}

DensityMatrix DensityMatrix::pure(const PureState& psi) {
  const Vec2 v = psi.vector();
  return DensityMatrix((v * v.adjoint()).eval());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim != 2 && dim != 4) {
    throw std::invalid_argument("DensityMatrix: dimension must be 2 or 4");
  }
  return DensityMatrix(Eigen::MatrixXcd::Identity(dim, dim) /
                       static_cast<double>(dim));
}

double DensityMatrix::min_eigenvalue() const {
  if (dim() == 2) {
    // Closed form: t/2 +- sqrt(t^2/4 - det), real for Hermitian input.
    const double t = m_.trace().real();
    const double det = (m_(0, 0) * m_(1, 1) - m_(0, 1) * m_(1, 0)).real();
    const double disc = std::max(0.0, t * t / 4.0 - det);
    return t / 2.0 - std::sqrt(disc);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

namespace pauli {

const Mat2& I() {
  static const Mat2 m = Mat2::Identity();
  return m;
}
const Mat2& X() {
  static const Mat2 m = (Mat2() << 0, 1, 1, 0).finished();
  return m;
}
const Mat2& Y() {
  static const Mat2 m = (Mat2() << 0, cplx(0, -1), cplx(0, 1), 0).finished();
  return m;
}
const Mat2& Z() {
  static const Mat2 m = (Mat2() << 1, 0, 0, -1).finished();
  return m;
}

const Mat2& matrix(PauliLabel p) {
  switch (p) {
    case PauliLabel::I: return I();
    case PauliLabel::X: return X();
    case PauliLabel::Y: return Y();
    case PauliLabel::Z: return Z();
  }
  throw std::logic_error("pauli::matrix: bad label");
}

}  // namespace pauli

const Vec4& bell_vector(BellLabel b) {
  static const Vec4 phi_plus = (Vec4() << kSqrtHalf, 0, 0, kSqrtHalf).finished();
  static const Vec4 phi_minus =
      (Vec4() << kSqrtHalf, 0, 0, -kSqrtHalf).finished();
  static const Vec4 psi_plus = (Vec4() << 0, kSqrtHalf, kSqrtHalf, 0).finished();
  static const Vec4 psi_minus =
      (Vec4() << 0, kSqrtHalf, -kSqrtHalf, 0).finished();
  switch (b) {
    case BellLabel::PhiPlus: return phi_plus;
    case BellLabel::PhiMinus: return phi_minus;
    case BellLabel::PsiPlus: return psi_plus;
    case BellLabel::PsiMinus: return psi_minus;
  }
  throw std::logic_error("bell_vector: bad label");
}

const char* to_string(BellLabel b) {
  switch (b) {
    case BellLabel::PhiPlus: return "PhiPlus";
    case BellLabel::PhiMinus: return "PhiMinus";
    case BellLabel::PsiPlus: return "PsiPlus";
    case BellLabel::PsiMinus: return "PsiMinus";
  }
  return "?";
}

const char* to_string(PauliLabel p) {
  switch (p) {
    case PauliLabel::I: return "I";
    case PauliLabel::X: return "X";
    case PauliLabel::Y: return "Y";
    case PauliLabel::Z: return "Z";
  }
  return "?";
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != 2 || b.dim() != 2) {
    throw std::invalid_argument("tensor: both factors must be 2x2");
  }
  Eigen::MatrixXcd out(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b.matrix();
  return DensityMatrix::from_matrix(std::move(out));
}

PureState apply_unitary(const Mat2& u, const PureState& s) {
  check_unitary(u);
  const Vec2 v = u * s.vector();
  return PureState(v(0), v(1));
}

DensityMatrix apply_unitary(const Mat2& u, const DensityMatrix& rho) {
  check_unitary(u);
  if (rho.dim() != 2) {
    throw std::invalid_argument("apply_unitary: state must be 2x2");
  }
  return DensityMatrix::from_matrix(u * rho.matrix() * u.adjoint());
}

double fidelity_pure(const PureState& target, const DensityMatrix& rho) {
  if (rho.dim() != 2) {
    throw std::invalid_argument("fidelity_pure: state must be 2x2");
  }
  const Vec2 t = target.vector();
  const cplx f = (t.adjoint() * rho.matrix() * t)(0, 0);
  return f.real();
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != 2 || b.dim() != 2) {
    throw std::invalid_argument("fidelity: states must be 2x2");
  }
  const double overlap = (a.matrix() * b.matrix()).trace().real();
  const double da =
      (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)).real();
  const double db =
      (b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0)).real();
  return overlap + 2.0 * std::sqrt(std::max(0.0, da) * std::max(0.0, db));
}

DensityMatrix partial_trace(const DensityMatrix& rho4, Subsystem keep) {
  if (rho4.dim() != 4) {
    throw std::invalid_argument("partial_trace: state must be 4x4");
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2, 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      cplx s = 0;
      for (int k = 0; k < 2; ++k) {
        s += (keep == Subsystem::First) ? rho4(2 * i + k, 2 * j + k)
                                        : rho4(2 * k + i, 2 * k + j);
      }
      out(i, j) = s;
    }
  }
  return DensityMatrix::from_matrix(std::move(out));
}

std::array<BellBranch, 4> bell_decompose(const PureState& input) {
  const Vec2 psi = input.vector();
  std::array<BellBranch, 4> out = {
      BellBranch{BellLabel::PhiPlus, PureState::t0(), 0.0},
      BellBranch{BellLabel::PhiMinus, PureState::t0(), 0.0},
      BellBranch{BellLabel::PsiPlus, PureState::t0(), 0.0},
      BellBranch{BellLabel::PsiMinus, PureState::t0(), 0.0}};
  for (std::size_t n = 0; n < kBellOrder.size(); ++n) {
    const Vec4& b = bell_vector(kBellOrder[n]);
    Vec2 w;
    for (int c = 0; c < 2; ++c) {
      w(c) = kSqrtHalf *
             (std::conj(b(0 * 2 + c)) * psi(0) + std::conj(b(1 * 2 + c)) * psi(1));
    }
    const double p = std::norm(w(0)) + std::norm(w(1));
    out[n].bell = kBellOrder[n];
    out[n].probability = p;
    out[n].conditional = PureState::normalized(w(0), w(1)).canonical();
  }
  return out;
}

}  // namespace telesim
