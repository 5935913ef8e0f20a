#include <doctest.h>

#include <cmath>

#include <telesim/photonics.hpp>
#include <telesim/rng.hpp>

using namespace telesim;

TEST_CASE("thermal pair-count statistics") {
  auto rng = make_stream(101, 1);

  SourceParams zero{0.0, 1.0, 1.0};
  for (int i = 0; i < 100; ++i) CHECK(sample_pair_count(zero, rng) == 0);

  SourceParams bad{-0.1, 1.0, 1.0};
  CHECK_THROWS_AS(sample_pair_count(bad, rng), std::invalid_argument);

  // mu = 0.08: sample mean within 3 sigma, sample variance = mu(1+mu)
  // within 5 sigma of the variance estimator (fourth-moment bound).
  const double mu = 0.08;
  SourceParams alice{mu, 1.0, 1.0};
  const int n = 1000000;
  double sum = 0.0, sum2 = 0.0, sum4_accum = 0.0;
  int at_least_two = 0;
  for (int i = 0; i < n; ++i) {
    const int k = sample_pair_count(alice, rng);
    sum += k;
    sum2 += static_cast<double>(k) * k;
    if (k >= 2) ++at_least_two;
  }
  const double mean_k = sum / n;
  const double var_k = sum2 / n - mean_k * mean_k;
  const double sigma_mean = std::sqrt(mu * (1 + mu) / n);
  CHECK(std::abs(mean_k - mu) < 3 * sigma_mean);

  // Var(s^2) ~ (mu4 - var^2)/n with mu4 from the geometric distribution:
  // excess kurtosis 6 + p^2/(1-p), p = 1/(1+mu).
  const double var_true = mu * (1 + mu);
  const double p = 1.0 / (1.0 + mu);
  const double kurt = 3.0 + 6.0 + p * p / (1.0 - p);
  const double mu4 = kurt * var_true * var_true;
  const double sigma_var = std::sqrt((mu4 - var_true * var_true) / n);
  CHECK(std::abs(var_k - var_true) < 5 * sigma_var);
  (void)sum4_accum;

  // mu = 0.03: P(n>=2) = (mu/(1+mu))^2 = 8.4834e-4; check the closed form
  // against the sampler at 3 sigma.
  const double mu_c = 0.03;
  const double p_multi = std::pow(mu_c / (1 + mu_c), 2);
  CHECK(p_multi == doctest::Approx(8.4834e-4).epsilon(1e-4));
  SourceParams charlie{mu_c, 1.0, 1.0};
  int multi = 0;
  for (int i = 0; i < n; ++i) {
    if (sample_pair_count(charlie, rng) >= 2) ++multi;
  }
  const double sigma_multi = std::sqrt(p_multi * (1 - p_multi) / n);
  CHECK(std::abs(static_cast<double>(multi) / n - p_multi) < 3 * sigma_multi);
  (void)at_least_two;
}

TEST_CASE("transmission") {
  CHECK(transmission({0.0, 0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(transmission({15.7, 5.0, 0.0}) == doctest::Approx(0.31623).epsilon(1e-4));
  CHECK(transmission({14.7, 6.0, 0.0}) == doctest::Approx(0.25119).epsilon(1e-4));
  CHECK_THROWS_AS(transmission({1.0, -1.0, 0.0}), std::invalid_argument);

  // monotone decreasing in loss
  double prev = 2.0;
  for (double db = 0.0; db <= 30.0; db += 1.5) {
    const double t = transmission({1.0, db, 0.0});
    CHECK(t < prev);
    prev = t;
  }
}

TEST_CASE("apply_visibility") {
  const DensityMatrix d = DensityMatrix::pure(PureState::d());
  CHECK((apply_visibility(d, 1.0).matrix() - d.matrix()).cwiseAbs().maxCoeff() <
        1e-14);
  CHECK((apply_visibility(d, 0.0).matrix() -
         Eigen::MatrixXcd::Identity(2, 2) / 2.0)
            .cwiseAbs()
            .maxCoeff() < 1e-14);
  CHECK(fidelity_pure(PureState::d(), apply_visibility(d, 0.917)) ==
        doctest::Approx(0.9585).epsilon(1e-12));
  CHECK_THROWS_AS(apply_visibility(d, 1.2), std::invalid_argument);
  CHECK_THROWS_AS(apply_visibility(d, -0.1), std::invalid_argument);

  // affine in rho, valid output for every V on a grid of random states
  auto rng = make_stream(103, 2);
  for (int i = 0; i < 50; ++i) {
    const DensityMatrix rho = DensityMatrix::pure(haar_random_state(rng));
    for (double v = 0.0; v <= 1.0; v += 0.25) {
      const DensityMatrix out = apply_visibility(rho, v);
      CHECK(out.matrix().trace().real() == doctest::Approx(1.0));
      CHECK(out.min_eigenvalue() >= -kPsdSlack);
    }
  }
}

TEST_CASE("apply_unitary_error") {
  auto rng = make_stream(107, 3);
  const DensityMatrix d = DensityMatrix::pure(PureState::d());

  // F_u = 1: exact rotation
  const DensityMatrix exact = apply_unitary_error(d, 1.0, pauli::Z(), rng);
  const DensityMatrix direct = apply_unitary(pauli::Z(), d);
  CHECK((exact.matrix() - direct.matrix()).cwiseAbs().maxCoeff() < 1e-14);

  // F_u = 0: rotation then full dephasing; |D><D| becomes I/2
  const DensityMatrix dephased = apply_unitary_error(d, 0.0, pauli::Z(), rng);
  CHECK(std::abs(dephased(0, 0).real() - 0.5) < 1e-14);
  CHECK(std::abs(dephased(0, 1)) < 1e-14);

  // F_u = 0.85: expected fidelity to sigma_z|D> is 0.85 + 0.15 * 0.5 = 0.925
  const PureState target = apply_unitary(pauli::Z(), PureState::d());
  const int n = 200000;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += fidelity_pure(target, apply_unitary_error(d, 0.85, pauli::Z(), rng));
  }
  // two-point mixture 1.0 / 0.5 with weights 0.85 / 0.15
  const double sigma =
      std::sqrt(0.85 * 0.15 * 0.25 / n);
  CHECK(std::abs(acc / n - 0.925) < 4 * sigma);

  CHECK_THROWS_AS(apply_unitary_error(d, 1.5, pauli::Z(), rng),
                  std::invalid_argument);
  Mat2 not_unitary;
  not_unitary << 1, 0, 0, 0.5;
  CHECK_THROWS_AS(apply_unitary_error(d, 0.5, not_unitary, rng),
                  std::invalid_argument);

  // trace and positivity preserved for all F_u
  for (double fu = 0.0; fu <= 1.0; fu += 0.2) {
    const DensityMatrix out =
        apply_unitary_error(DensityMatrix::pure(haar_random_state(rng)), fu,
                            pauli::X(), rng);
    CHECK(out.matrix().trace().real() == doctest::Approx(1.0));
    CHECK(out.min_eigenvalue() >= -kPsdSlack);
  }
}

TEST_CASE("detector_fires") {
  auto rng = make_stream(109, 4);
  DetectorParams perfect{1.0, 0.0, 40.0};
  DetectorParams dead{0.0, 0.0, 40.0};
  for (int i = 0; i < 100; ++i) {
    CHECK(detector_fires(true, perfect, rng));
    CHECK_FALSE(detector_fires(true, dead, rng));
    CHECK_FALSE(detector_fires(false, dead, rng));
  }
  CHECK(perfect.recovery_time_ns == 40.0);

  DetectorParams typical{0.7, 0.0, 40.0};
  const int n = 1000000;
  int fires = 0;
  for (int i = 0; i < n; ++i) {
    if (detector_fires(true, typical, rng)) ++fires;
  }
  const double sigma = std::sqrt(0.7 * 0.3 / n);
  CHECK(std::abs(static_cast<double>(fires) / n - 0.7) < 3 * sigma);
}
