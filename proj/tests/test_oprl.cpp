#include <cmath>

#include "doctest.h"
#include "sumrule/errors.hpp"
#include "sumrule/laws.hpp"
#include "sumrule/oprl.hpp"
#include "sumrule/rng.hpp"

using namespace sumrule;

namespace {

// closed-form Gauss rule for SC: nodes 2cos(k pi/(N+1)),
// weights (2/(N+1)) sin^2(k pi/(N+1))
QuadratureMeasure sc_gauss_rule(int N) {
  std::vector<double> pts(N), wts(N);
  for (int k = 1; k <= N; ++k) {
    pts[k - 1] = 2.0 * std::cos(k * M_PI / (N + 1));
    wts[k - 1] = 2.0 / (N + 1) * std::pow(std::sin(k * M_PI / (N + 1)), 2);
  }
  return QuadratureMeasure(std::move(pts), std::move(wts));
}

JacobiCoeffs random_jacobi(int n, Rng& rng) {
  std::vector<double> b(n), a(n - 1);
  for (double& x : b) x = 4.0 * rng.uniform() - 2.0;
  for (double& x : a) x = 0.5 + 1.5 * rng.uniform();
  return JacobiCoeffs(std::move(b), std::move(a));
}

}  // namespace

TEST_CASE("lanczos on the SC rule recovers the free coefficients") {
  const JacobiCoeffs J = lanczos(sc_gauss_rule(512), 20);
  for (int k = 1; k <= 20; ++k) CHECK(std::abs(J.b(k)) < 1e-10);
  for (int k = 1; k <= 19; ++k) CHECK(std::abs(J.a(k) - 1.0) < 1e-10);
}

TEST_CASE("lanczos trivial and error cases") {
  QuadratureMeasure delta({0.7}, {1.0});
  const JacobiCoeffs J = lanczos(delta, 1);
  CHECK(J.b(1) == doctest::Approx(0.7));
  CHECK_THROWS_AS(lanczos(delta, 2), domain_error);
}

TEST_CASE("lanczos on discretized MP recovers the (1, 1+tau; sqrt(tau)) pattern") {
  const double tau = 0.5;
  const QuadratureMeasure q = discretize(marchenko_pastur(tau), 1024);
  const JacobiCoeffs J = lanczos(q, 12);
  CHECK(std::abs(J.b(1) - 1.0) < 1e-8);
  for (int k = 2; k <= 12; ++k) CHECK(std::abs(J.b(k) - (1.0 + tau)) < 1e-8);
  for (int k = 1; k <= 11; ++k)
    CHECK(std::abs(J.a(k) - std::sqrt(tau)) < 1e-8);
}

TEST_CASE("golub-welsch small cases") {
  const JacobiCoeffs d({0.3}, {});
  const QuadratureMeasure q1 = golub_welsch(d, 1);
  CHECK(q1.points()[0] == doctest::Approx(0.3));
  CHECK(q1.weights()[0] == doctest::Approx(1.0));

  const JacobiCoeffs two({0.0, 0.0}, {1.0});
  const QuadratureMeasure q2 = golub_welsch(two, 2);
  CHECK(q2.points()[0] == doctest::Approx(-1.0));
  CHECK(q2.points()[1] == doctest::Approx(1.0));
  CHECK(q2.weights()[0] == doctest::Approx(0.5));
  CHECK(q2.weights()[1] == doctest::Approx(0.5));
}

TEST_CASE("golub-welsch / lanczos round trips on random coefficients") {
  Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 5 + static_cast<int>(rng.uniform() * 26);
    const JacobiCoeffs J = random_jacobi(n, rng);
    const QuadratureMeasure mu = golub_welsch(J, n);
    double wsum = 0.0;
    for (double w : mu.weights()) {
      CHECK(w >= 0.0);
      wsum += w;
    }
    CHECK(std::abs(wsum - 1.0) < 1e-12);
    const JacobiCoeffs back = lanczos(mu, n);
    for (int k = 1; k <= n; ++k)
      CHECK(std::abs(back.b(k) - J.b(k)) < 1e-9);
    for (int k = 1; k <= n - 1; ++k)
      CHECK(std::abs(back.a(k) - J.a(k)) < 1e-9);
  }
}

TEST_CASE("measure-side round trip: golub-welsch after lanczos") {
  Rng rng(83);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + static_cast<int>(rng.uniform() * 20);
    std::vector<double> pts(n), wts(n);
    double prev = -3.0, s = 0.0;
    for (int i = 0; i < n; ++i) {
      prev += 0.1 + rng.uniform();
      pts[i] = prev;
      wts[i] = 0.05 + rng.uniform();
      s += wts[i];
    }
    for (double& w : wts) w /= s;
    const QuadratureMeasure mu(pts, wts);
    const QuadratureMeasure back = golub_welsch(lanczos(mu, n), n);
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(back.points()[i] - mu.points()[i]) < 1e-9);
      CHECK(std::abs(back.weights()[i] - mu.weights()[i]) < 1e-9);
    }
  }
}

TEST_CASE("z decomposition: MP pattern, delta, spike") {
  ZCoeffs Z;
  Z.z = {1.0, 0.5};
  Z.tail = std::make_pair(1.0, 0.5);
  const JacobiCoeffs J = z_compose(Z);
  CHECK(J.b(1) == doctest::Approx(1.0));
  CHECK(J.b(2) == doctest::Approx(1.5));
  CHECK(J.b(7) == doctest::Approx(1.5));
  CHECK(J.a(1) == doctest::Approx(std::sqrt(0.5)));
  CHECK(J.a(5) == doctest::Approx(std::sqrt(0.5)));

  const ZCoeffs back = z_decompose(J);
  CHECK(back.at(1) == doctest::Approx(1.0));
  CHECK(back.at(2) == doctest::Approx(0.5));
  REQUIRE(back.tail.has_value());
  CHECK(back.tail->first == doctest::Approx(1.0));
  CHECK(back.tail->second == doctest::Approx(0.5));

  const JacobiCoeffs delta({1.0}, {});
  const ZCoeffs zd = z_decompose(delta);
  CHECK(zd.at(1) == doctest::Approx(1.0));

  // spiking z_1 -> theta z_1 only changes (b_1, a_1)
  const double theta = 2.0, tau = 0.5;
  ZCoeffs spiked;
  spiked.z = {theta, tau};
  spiked.tail = std::make_pair(1.0, tau);
  const JacobiCoeffs Js = z_compose(spiked);
  CHECK(Js.b(1) == doctest::Approx(theta));
  CHECK(Js.a(1) == doctest::Approx(std::sqrt(theta * tau)));
  CHECK(Js.b(2) == doctest::Approx(1.0 + tau));
  CHECK(Js.a(2) == doctest::Approx(std::sqrt(tau)));
  const ZCoeffs zs = z_decompose(Js);
  CHECK(zs.at(1) == doctest::Approx(theta));
  CHECK(zs.at(2) == doctest::Approx(tau));
  REQUIRE(zs.tail.has_value());
  CHECK(zs.tail->first == doctest::Approx(1.0));
  CHECK(zs.tail->second == doctest::Approx(tau));

  // negative z must be rejected
  const JacobiCoeffs neg({-0.5, 1.0}, {0.3});
  CHECK_THROWS_AS(z_decompose(neg), domain_error);
}

TEST_CASE("jacobi affine action") {
  Rng rng(11);
  const JacobiCoeffs J = random_jacobi(8, rng);
  const JacobiCoeffs id = jacobi_affine(J, 1.0, 0.0);
  CHECK(id.b(3) == doctest::Approx(J.b(3)));

  const JacobiCoeffs fl = jacobi_affine(J, -1.0, 0.0);
  CHECK(fl.b(2) == doctest::Approx(-J.b(2)));
  CHECK(fl.a(2) == doctest::Approx(J.a(2)));

  // normalized free Meixner pattern (-b/sqrt(1+c); 1/sqrt(1+c), 1, 1, ...)
  const double b = 0.7, c = 0.3;
  const JacobiCoeffs JN = meixner_jacobi_normalized(b, c);
  CHECK(JN.b(1) == doctest::Approx(-b / std::sqrt(1 + c)));
  CHECK(JN.a(1) == doctest::Approx(1.0 / std::sqrt(1 + c)));
  CHECK(JN.b(2) == doctest::Approx(0.0));
  CHECK(JN.a(4) == doctest::Approx(1.0));

  CHECK_THROWS_AS(jacobi_affine(J, 0.0, 1.0), domain_error);
}

TEST_CASE("jacobi affine commutes with lanczos of transported measures") {
  const MeasureLine mu = meixner(0.5, 0.5);
  const double r = std::sqrt(1.5), s = 0.5;
  const JacobiCoeffs direct = lanczos(discretize(affine_map(mu, r, s), 1024), 10);
  const JacobiCoeffs via = jacobi_affine(lanczos(discretize(mu, 1024), 10), r, s);
  for (int k = 1; k <= 10; ++k)
    CHECK(std::abs(direct.b(k) - via.b(k)) < 1e-8);
  for (int k = 1; k <= 9; ++k) CHECK(std::abs(direct.a(k) - via.a(k)) < 1e-8);
}

TEST_CASE("jacobi moments against measure moments") {
  const JacobiCoeffs sc({0.0}, {}, JacobiTail{0.0, 1.0});
  const auto m = jacobi_moments(sc, 4);
  CHECK(m[0] == doctest::Approx(0.0));
  CHECK(m[1] == doctest::Approx(1.0));
  CHECK(m[3] == doctest::Approx(2.0));

  Rng rng(23);
  const JacobiCoeffs J = random_jacobi(9, rng);
  CHECK(jacobi_moments(J, 1)[0] == doctest::Approx(J.b(1)));  // m_1 = b_1

  ZCoeffs Z;
  Z.z = {1.0, 0.5};
  Z.tail = std::make_pair(1.0, 0.5);
  const auto mp = jacobi_moments(z_compose(Z), 3);
  CHECK(mp[0] == doctest::Approx(1.0).epsilon(1e-10));  // mean of MP_tau

  // locality cap: prefix of length 3 without a tail cannot give m_3
  const JacobiCoeffs shorty({0.1, 0.2, 0.3}, {1.0, 1.0});
  CHECK_THROWS_AS(jacobi_moments(shorty, 3), domain_error);
  CHECK(jacobi_moments(shorty, 2).size() == 2);
}

TEST_CASE("jacobi moments agree with quadrature moments on random instances") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 12;
    const JacobiCoeffs J = random_jacobi(n, rng);
    const auto mj = jacobi_moments(J, 6);
    const auto mq = golub_welsch(J, n).moments(6);
    for (int k = 0; k < 6; ++k)
      CHECK(mj[k] == doctest::Approx(mq[k]).epsilon(1e-9));
  }
}
