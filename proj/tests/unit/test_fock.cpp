#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qse/fock/experiment.hpp"

using namespace qse;
using cd = std::complex<double>;

namespace {

CMatrix<double> random_amps(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix<double> m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = cd(g(rng), g(rng));
  return m / m.norm();
}

SingleModeState random_state(int truncation, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector<double> v(truncation + 1);
  for (auto& x : v) x = cd(g(rng), g(rng));
  return SingleModeState(v);
}

}  // namespace

TEST_CASE("states normalize and reject zero vectors") {
  CVector<double> v(3);
  v << cd(3, 0), cd(0, 4), cd(0, 0);
  SingleModeState s(v);
  CHECK(s.amps().norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(SingleModeState(CVector<double>::Zero(4)), DomainError);
  CHECK_THROWS_AS(TwoModeState(CMatrix<double>::Zero(2, 3)), ShapeError);
  CHECK_THROWS_AS(SingleModeState::fock(5, 3), DomainError);
  const auto r = s.resized(1);
  CHECK(r.dim() == 2);
  CHECK(std::abs(r[0]) == doctest::Approx(0.6));
}

TEST_CASE("beam splitter matches the exponential of its truncated generator") {
  std::mt19937_64 rng(7);
  for (int truncation : {10, 30}) {
    const int d = truncation + 1;
    for (double t : {0.3, 0.86}) {
      const oracle::Mat u = oracle::beam_splitter(d, t, -std::numbers::pi / 2);
      for (int trial = 0; trial < 3; ++trial) {
        const auto amps = random_amps(d, rng);
        const auto expected = oracle::unflatten(u * oracle::flatten(amps), d);
        const auto got = beam_splitter_apply(amps, t);
        CAPTURE(truncation);
        CHECK((got - expected).cwiseAbs().maxCoeff() < 1e-8);
      }
    }
  }
}

TEST_CASE("beam splitter with a general phase matches the oracle") {
  std::mt19937_64 rng(8);
  const int d = 8;
  const oracle::Mat u = oracle::beam_splitter(d, 0.41, 0.7);
  const auto amps = random_amps(d, rng);
  const auto expected = oracle::unflatten(u * oracle::flatten(amps), d);
  CHECK((beam_splitter_apply(amps, 0.41, 0.7) - expected).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("beam splitter is unitary on the truncated space") {
  SUBCASE("every basis state at truncation 30") {
    const int d = 31;
    oracle::Mat u(d * d, d * d);
    for (int k = 0; k < d * d; ++k) {
      CMatrix<double> e = CMatrix<double>::Zero(d, d);
      e(k / d, k % d) = 1.0;
      u.col(k) = oracle::flatten(beam_splitter_apply(e, 0.37));
    }
    const oracle::Mat gram = u.adjoint() * u;
    CHECK((gram - oracle::Mat::Identity(d * d, d * d)).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("inner products at truncation 60") {
    std::mt19937_64 rng(3);
    const int d = 61;
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = random_amps(d, rng);
      const auto b = random_amps(d, rng);
      const auto ua = beam_splitter_apply(a, 0.52);
      const auto ub = beam_splitter_apply(b, 0.52);
      const cd before = (a.conjugate().cwiseProduct(b)).sum();
      const cd after = (ua.conjugate().cwiseProduct(ub)).sum();
      CHECK(std::abs(after - before) < 1e-10);
      CHECK(ua.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("T = 1 is the identity") {
    std::mt19937_64 rng(4);
    const auto a = random_amps(6, rng);
    CHECK((beam_splitter_apply(a, 1.0) - a).norm() == 0.0);
  }
}

TEST_CASE("displacement elements match the Laguerre closed form") {
  for (int truncation : {10, 30, 60}) {
    for (cd beta : {cd(0.7, -0.4), cd(-1.5, 1.1), cd(0.0, 0.0), cd(2.6, -2.9)}) {
      const auto d = displacement_matrix(beta, truncation);
      double err = 0.0;
      for (int m = 0; m <= truncation; ++m)
        for (int n = 0; n <= truncation; ++n)
          err = std::max(err, std::abs(d(m, n) - oracle::displacement_element(beta, m, n)));
      CAPTURE(truncation);
      CHECK(err < 1e-8);
    }
  }
}

TEST_CASE("displacement agrees with a padded matrix exponential") {
  const cd beta(1.2, 0.5);
  const int truncation = 15;
  const oracle::Mat big = oracle::displace(90, beta);
  const auto d = displacement_matrix(beta, truncation);
  CHECK((d - big.topLeftCorner(truncation + 1, truncation + 1)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("displacement reports truncation leakage") {
  const auto vac = tensor(SingleModeState::vacuum(10), SingleModeState::vacuum(10));
  const auto small = apply_operator_tracked(vac, OperatorSpec::displacement(2, cd(0.3, 0)));
  CHECK(small.leaked_norm < 1e-12);
  CHECK_THROWS_AS(apply_operator(vac, OperatorSpec::displacement(1, cd(3.5, 0))), TruncationError);
  const auto loose = apply_operator_tracked(vac, OperatorSpec::displacement(1, cd(3.5, 0)), 1.0);
  CHECK(loose.leaked_norm > 0.1);
  CHECK(loose.state.amps().norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(OperatorSpec::displacement(1, cd(4.1, 0)), DomainError);
  CHECK_THROWS_AS(OperatorSpec::phase_shift(3, 0.1), DomainError);
  CHECK_THROWS_AS(OperatorSpec::beam_splitter(1.2), DomainError);
}

TEST_CASE("phase shift multiplies |n> by exp(i n theta)") {
  std::mt19937_64 rng(9);
  const TwoModeState s(random_amps(5, rng));
  const auto out = apply_operator(s, OperatorSpec::phase_shift(2, 0.9));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(std::abs(out(i, j) - s(i, j) * std::polar(1.0, 0.9 * j)) < 1e-14);
}

TEST_CASE("input series match their defining operators") {
  const int truncation = 12;
  const int pad = 80;
  SUBCASE("coherent") {
    const cd alpha(0.8, -1.1);
    const oracle::Vec vac = oracle::Vec::Unit(pad, 0);
    const oracle::Vec ref = oracle::displace(pad, alpha) * vac;
    CHECK((coherent_series(alpha, truncation) - ref.head(truncation + 1)).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("squeezed vacuum") {
    const cd z = std::polar(0.9, 1.3);
    const oracle::Vec ref = oracle::squeeze(pad, z) * oracle::Vec::Unit(pad, 0);
    CHECK((squeezed_vacuum_series(z, truncation) - ref.head(truncation + 1)).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("two-mode squeezed vacuum") {
    const int d = 20;
    const cd z = std::polar(0.6, -0.4);
    const oracle::Mat a = Eigen::kroneckerProduct(oracle::annihilation(d), oracle::identity(d)).eval();
    const oracle::Mat b = Eigen::kroneckerProduct(oracle::identity(d), oracle::annihilation(d)).eval();
    const oracle::Mat s12 = oracle::expm(std::conj(z) * a * b - z * a.adjoint() * b.adjoint());
    const oracle::Vec ref = s12 * oracle::Vec::Unit(d * d, 0);
    const auto got = build_two_mode(InputSpec::two_mode_squeezed_vacuum(z), 8, 1e-2);
    for (int i = 0; i <= 8; ++i)
      for (int j = 0; j <= 8; ++j) {
        const cd expected = ref(i * d + j) / std::sqrt(1.0 - std::pow(std::tanh(0.6), 18));
        CHECK(std::abs(got(i, j) - expected) < 1e-8);
      }
  }
  SUBCASE("truncation budget") {
    CHECK_THROWS_AS(build_single_mode(InputSpec::coherent(cd(3.0, 0)), 10), TruncationError);
    CHECK_THROWS_AS(build_single_mode(InputSpec::fock(2), 1), TruncationError);
    CHECK_THROWS_AS(InputSpec::coherent(cd(4.5, 0)), DomainError);
    CHECK_THROWS_AS(InputSpec::squeezed_vacuum(cd(1.4, 0)), DomainError);
  }
}

TEST_CASE("herald distribution is complete and consistent with herald") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const TwoModeState s(random_amps(9, rng));
    const auto dist = herald_distribution(s);
    CHECK(dist.sum() == doctest::Approx(1.0).epsilon(1e-12));
    for (int n = 0; n <= 8; ++n) {
      const auto h = herald(s, HeraldSpec::photons(n), 0.0);
      CHECK(h.probability == doctest::Approx(dist(n)).epsilon(1e-12));
      CHECK(h.state.amps().norm() == doctest::Approx(1.0));
    }
  }
  CHECK_THROWS_AS(HeraldSpec::photons(9), DomainError);
  const auto vac = tensor(SingleModeState::vacuum(4), SingleModeState::vacuum(4));
  CHECK_THROWS_AS(herald(vac, HeraldSpec::photons(1)), HeraldImprobableError);
}

TEST_CASE("fidelity is symmetric, bounded and one on identical states") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_state(7, rng);
    const auto b = random_state(11, rng);
    const double f = fidelity(a, b);
    CHECK(f == doctest::Approx(fidelity(b, a)).epsilon(1e-14));
    CHECK(f >= 0.0);
    CHECK(f <= 1.0 + 1e-12);
    CHECK(fidelity(a, a) == doctest::Approx(1.0));
  }
  CHECK(fidelity(SingleModeState::fock(1, 3), SingleModeState::fock(2, 3)) == 0.0);
}

TEST_CASE("mean photon number and number distribution") {
  const auto c = SingleModeState(coherent_series(cd(0.5, 0.5), 40));
  CHECK(mean_photon_number(c) == doctest::Approx(0.5).epsilon(1e-10));
  const auto dist = number_distribution(c);
  CHECK(dist.size() == 41);
  CHECK(dist.squaredNorm() == doctest::Approx(1.0));
}

TEST_CASE("TMSV heralding yields Fock states with thermal probabilities") {
  const double r = 0.7;
  const double lambda = std::tanh(r);
  for (int n : {0, 1, 3}) {
    Experiment e{{InputSpec::two_mode_squeezed_vacuum(r)}, {}, HeraldSpec::photons(n)};
    const auto out = simulate(e, 40);
    CHECK(fidelity(out.state, SingleModeState::fock(n, 40)) == doctest::Approx(1.0).epsilon(1e-12));
    const double expected = (1 - lambda * lambda) * std::pow(lambda, 2 * n);
    CHECK(out.herald_probability == doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("vacuum-heralded beam splitter attenuates a coherent state") {
  const cd alpha(1.4, 0.3);
  const double t = 0.6;
  Experiment e{{InputSpec::coherent(alpha), InputSpec::fock(0)},
               {OperatorSpec::beam_splitter(t)},
               HeraldSpec::photons(0)};
  const auto out = simulate(e, 40);
  CHECK(out.herald_probability == doctest::Approx(std::exp(-t * std::norm(alpha))).epsilon(1e-8));
  CHECK(mean_photon_number(out.state) == doctest::Approx((1 - t) * std::norm(alpha)).epsilon(1e-8));
  double best = 0.0;
  for (double chi : {0.0, std::numbers::pi / 2, std::numbers::pi, -std::numbers::pi / 2}) {
    const SingleModeState ref(oracle::coherent(std::sqrt(1 - t) * alpha * std::polar(1.0, chi), 41));
    best = std::max(best, fidelity(out.state, ref));
  }
  CHECK(best == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("experiments validate their input layout") {
  Experiment bad{{InputSpec::fock(1)}, {}, HeraldSpec::photons(0)};
  CHECK_THROWS_AS(bad.validate(), ShapeError);
  Experiment mixed{{InputSpec::fock(1), InputSpec::two_mode_squeezed_vacuum(0.3)}, {}, HeraldSpec::photons(0)};
  CHECK_THROWS_AS(mixed.validate(), ShapeError);
  Experiment ok{{InputSpec::fock(1), InputSpec::fock(0)}, {OperatorSpec::beam_splitter(0.5)}, HeraldSpec::photons(1)};
  CHECK_NOTHROW(ok.validate());
  CHECK(!ok.describe().empty());
}
