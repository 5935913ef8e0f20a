#include <doctest.h>

#include <cmath>
#include <random>

#include <telesim/rng.hpp>
#include <telesim/tomography.hpp>

using namespace telesim;

namespace {

// Random mixture of random unitary conjugations; returns both the channel
// action and its exact chi matrix (chi_mn = sum_j w_j a_jm conj(a_jn) from
// the Pauli expansion of each unitary).
struct RandomChannel {
  Mat4 chi;
  std::vector<DensityMatrix> outputs;  // on T0, T1, D, R
};

Mat2 random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat2 a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = cplx(g(rng), g(rng));
  const Eigen::HouseholderQR<Mat2> qr(a);
  Mat2 q = qr.householderQ();
  Mat2 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < 2; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

RandomChannel make_random_channel(std::mt19937_64& rng, int terms) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> w(terms);
  double sum = 0.0;
  for (auto& x : w) {
    x = u(rng);
    sum += x;
  }
  for (auto& x : w) x /= sum;

  std::vector<Mat2> us(terms);
  for (auto& m : us) m = random_unitary(rng);

  RandomChannel ch;
  ch.chi.setZero();
  for (int t = 0; t < terms; ++t) {
    // expand U = sum_m a_m sigma_m with a_m = tr(sigma_m U)/2
    Eigen::Vector4cd a;
    for (int m = 0; m < 4; ++m) {
      a(m) = (pauli::matrix(static_cast<PauliLabel>(m)) * us[t]).trace() / 2.0;
    }
    ch.chi += w[t] * (a * a.adjoint());
  }
  ch.outputs.reserve(4);
  for (std::size_t li = 0; li < 4; ++li) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2, 2);
    const Mat2 in = DensityMatrix::pure(input_state(kInputLabels[li])).matrix();
    for (int t = 0; t < terms; ++t) out += w[t] * us[t] * in * us[t].adjoint();
    ch.outputs.push_back(DensityMatrix::from_matrix(out));
  }
  return ch;
}

std::map<InputStateLabel, DensityMatrix> as_map(
    const std::vector<DensityMatrix>& outputs) {
  std::map<InputStateLabel, DensityMatrix> m;
  for (std::size_t i = 0; i < 4; ++i) m.emplace(kInputLabels[i], outputs[i]);
  return m;
}

DensityMatrix random_mixed_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double lambda = u(rng);
  const PureState psi = haar_random_state(rng);
  return DensityMatrix::from_matrix(
      lambda * DensityMatrix::pure(psi).matrix() +
      (1 - lambda) * 0.5 * Eigen::MatrixXcd::Identity(2, 2));
}

}  // namespace

TEST_CASE("simulate_counts basics") {
  auto rng = make_stream(301, 1);
  const long long shots = 4000;

  const CountTable t0 =
      simulate_counts(DensityMatrix::pure(PureState::t0()), shots, rng);
  CHECK(t0.z.n_plus == shots);
  CHECK(t0.z.n_minus == 0);

  const CountTable r =
      simulate_counts(DensityMatrix::pure(PureState::r()), shots, rng);
  CHECK(r.y.n_plus == shots);  // |R> is the +1 eigenstate of sigma_y

  const CountTable mixed =
      simulate_counts(DensityMatrix::maximally_mixed(2), 100000, rng);
  const double sigma = std::sqrt(0.25 / 100000);
  for (const BasisCounts* b : {&mixed.z, &mixed.x, &mixed.y}) {
    CHECK(std::abs(static_cast<double>(b->n_plus) / b->total() - 0.5) <
          3 * sigma);
  }

  CHECK_THROWS_AS(
      simulate_counts(DensityMatrix::maximally_mixed(2), 0, rng),
      std::invalid_argument);
}

TEST_CASE("reconstruct_state exact and adversarial") {
  // Exact probabilities of |t0>.
  CountTable exact{{1000, 0}, {500, 500}, {500, 500}};
  const DensityMatrix rho = reconstruct_state(exact);
  CHECK((rho.matrix() - DensityMatrix::pure(PureState::t0()).matrix())
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  // X all-plus -> |D><D|.
  CountTable xplus{{500, 500}, {1000, 0}, {500, 500}};
  CHECK((reconstruct_state(xplus).matrix() -
         DensityMatrix::pure(PureState::d()).matrix())
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  // Adversarial: all three Stokes components +1; projection must yield a
  // valid state (pure state along (1,1,1)/sqrt3).
  CountTable adv{{1000, 0}, {1000, 0}, {1000, 0}};
  const DensityMatrix proj = reconstruct_state(adv);
  CHECK(proj.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(proj.min_eigenvalue() >= -kPsdSlack);
  const double s3 = 1.0 / std::sqrt(3.0);
  const double bloch_x = 2.0 * proj(0, 1).real();
  const double bloch_y = -2.0 * proj(0, 1).imag();
  const double bloch_z = (proj(0, 0) - proj(1, 1)).real();
  CHECK(bloch_x == doctest::Approx(s3).epsilon(1e-9));
  CHECK(bloch_y == doctest::Approx(s3).epsilon(1e-9));
  CHECK(bloch_z == doctest::Approx(s3).epsilon(1e-9));

  CountTable empty{{0, 0}, {10, 0}, {10, 0}};
  CHECK_THROWS_AS(reconstruct_state(empty), std::invalid_argument);
}

TEST_CASE("state tomography round trip at 1e5 shots") {
  auto rng = make_stream(307, 2);
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix rho = random_mixed_state(rng);
    const CountTable counts = simulate_counts(rho, 100000, rng);
    const DensityMatrix rec = reconstruct_state(counts);
    CHECK(fidelity(rho, rec) >= 0.995);
    CHECK(rec.min_eigenvalue() >= -kPsdSlack);
  }
}

TEST_CASE("chi of named channels") {
  // Identity channel: chi_II = 1.
  std::map<InputStateLabel, DensityMatrix> ident;
  for (const auto label : kInputLabels) {
    ident.emplace(label, DensityMatrix::pure(input_state(label)));
  }
  const ChiMatrix chi_id = reconstruct_process(ident);
  CHECK(std::abs(chi_id(PauliLabel::I, PauliLabel::I) - cplx(1.0, 0.0)) <
        1e-12);
  CHECK(chi_id.matrix().cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-9));

  // sigma_y conjugation: chi_YY = 1.
  std::map<InputStateLabel, DensityMatrix> ytele;
  for (const auto label : kInputLabels) {
    ytele.emplace(label, apply_unitary(pauli::Y(),
                                       DensityMatrix::pure(input_state(label))));
  }
  const ChiMatrix chi_y = reconstruct_process(ytele);
  CHECK(std::abs(chi_y(PauliLabel::Y, PauliLabel::Y) - cplx(1.0, 0.0)) < 1e-12);
  CHECK(process_fidelity(chi_y, ideal_sigma_y_process()) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // White-noise sigma_y channel at V = 0.917: diagonal
  // (0.02075, 0.02075, 0.93775, 0.02075).
  const double v = 0.917;
  std::map<InputStateLabel, DensityMatrix> noisy;
  for (const auto label : kInputLabels) {
    noisy.emplace(label, apply_visibility(
                             apply_unitary(pauli::Y(), DensityMatrix::pure(
                                                           input_state(label))),
                             v));
  }
  const ChiMatrix chi_n = reconstruct_process(noisy);
  CHECK(chi_n(PauliLabel::Y, PauliLabel::Y).real() ==
        doctest::Approx(0.93775).epsilon(1e-9));
  for (const auto p : {PauliLabel::I, PauliLabel::X, PauliLabel::Z}) {
    CHECK(chi_n(p, p).real() == doctest::Approx(0.02075).epsilon(1e-7));
  }
  CHECK(process_fidelity(chi_n, ideal_sigma_y_process()) ==
        doctest::Approx(0.93775).epsilon(1e-9));

  // Missing label.
  noisy.erase(InputStateLabel::D);
  CHECK_THROWS_AS(reconstruct_process(noisy), std::invalid_argument);
}

TEST_CASE("process round trip: exact and tomographic") {
  auto rng = make_stream(311, 3);
  for (int i = 0; i < 50; ++i) {
    const RandomChannel ch = make_random_channel(rng, 3);

    // exact outputs -> chi to 1e-9
    const ChiMatrix rec = reconstruct_process(as_map(ch.outputs));
    CHECK((rec.matrix() - ch.chi).norm() <= 1e-9);

    // 1e5-shot tomographic outputs -> chi to 2e-2 (spot-check a subset)
    if (i < 10) {
      std::vector<DensityMatrix> noisy_outputs = ch.outputs;
      for (auto& out : noisy_outputs) {
        out = reconstruct_state(simulate_counts(out, 100000, rng));
      }
      const ChiMatrix rec_noisy = reconstruct_process(as_map(noisy_outputs));
      CHECK((rec_noisy.matrix() - ch.chi).norm() <= 2e-2);
    }
  }
}

TEST_CASE("process fidelity basics") {
  const ChiMatrix& ideal = ideal_sigma_y_process();
  CHECK(process_fidelity(ideal, ideal) == doctest::Approx(1.0));
  const ChiMatrix depol =
      ChiMatrix::from_matrix((Mat4() << 0.25, 0, 0, 0, 0, 0.25, 0, 0, 0, 0,
                              0.25, 0, 0, 0, 0, 0.25)
                                 .finished());
  CHECK(process_fidelity(depol, ideal) == doctest::Approx(0.25));
}

TEST_CASE("haar-average fidelity from process fidelity") {
  CHECK(average_fidelity_from_process(1.0) == doctest::Approx(1.0));
  CHECK(average_fidelity_from_process(0.77) ==
        doctest::Approx(0.8467).epsilon(1e-4));
  CHECK(average_fidelity_from_process(0.25) == doctest::Approx(0.5));
  CHECK_THROWS_AS(average_fidelity_from_process(1.2), std::invalid_argument);

  // Monte Carlo check of (2 F_p + 1)/3 over haar states for random channels.
  auto rng = make_stream(313, 4);
  for (int c = 0; c < 5; ++c) {
    const RandomChannel ch = make_random_channel(rng, 2);
    const double f_p =
        (ch.chi * ideal_sigma_y_process().matrix()).trace().real();
    double acc = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
      const PureState psi = haar_random_state(rng);
      const Mat2 in = DensityMatrix::pure(psi).matrix();
      Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
      for (int m = 0; m < 4; ++m) {
        for (int nn = 0; nn < 4; ++nn) {
          out += ch.chi(m, nn) * pauli::matrix(static_cast<PauliLabel>(m)) *
                 in * pauli::matrix(static_cast<PauliLabel>(nn));
        }
      }
      const Vec2 t = apply_unitary(pauli::Y(), psi).vector();
      acc += (t.adjoint() * out * t)(0, 0).real();
    }
    CHECK(std::abs(acc / n - average_fidelity_from_process(f_p)) < 1e-2);
  }
}
