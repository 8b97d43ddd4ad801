#include <cmath>

#include "doctest.h"
#include "sumrule/errors.hpp"
#include "sumrule/laws.hpp"
#include "sumrule/potential.hpp"
#include "sumrule/rates.hpp"
#include "sumrule/rng.hpp"

using namespace sumrule;

namespace {

const QvTerm* find_term(const MomentPolynomial& q, int theta_pow,
                        std::vector<int> moments) {
  for (const auto& t : q.terms())
    if (t.theta_pow == theta_pow && t.moments == moments) return &t;
  return nullptr;
}

}  // namespace

TEST_CASE("qv_reduce: quadratic and linear potentials") {
  const MomentPolynomial q2 = qv_reduce(std::vector<double>{0.0, 0.0, 1.0});
  REQUIRE(q2.terms().size() == 2);
  CHECK(find_term(q2, 2, {})->coeff == doctest::Approx(1.0));
  CHECK(find_term(q2, 1, {1})->coeff == doctest::Approx(-2.0));
  CHECK(q2.format() == "theta^2 - 2 theta m1");

  const MomentPolynomial q1 = qv_reduce(std::vector<double>{0.0, 1.0});
  REQUIRE(q1.terms().size() == 1);
  CHECK(find_term(q1, 1, {})->coeff == doctest::Approx(-1.0));
}

TEST_CASE("qv_reduce: quartic potential from the word expansion") {
  // theta^4 - 4 theta^3 m1 + 4 theta^2 m2 + 2 theta^2 m1^2 - 4 theta m3.
  // The theta^3 term multiplies m1: three projections in a length-four
  // word leave a single M, so no (M^3)_{11} can appear there.
  const MomentPolynomial q4 = qv_reduce(std::vector<double>{0, 0, 0, 0, 1});
  CHECK(find_term(q4, 4, {})->coeff == doctest::Approx(1.0));
  CHECK(find_term(q4, 3, {1})->coeff == doctest::Approx(-4.0));
  CHECK(find_term(q4, 2, {2})->coeff == doctest::Approx(4.0));
  CHECK(find_term(q4, 2, {1, 1})->coeff == doctest::Approx(2.0));
  CHECK(find_term(q4, 1, {3})->coeff == doctest::Approx(-4.0));
  CHECK(find_term(q4, 3, {3}) == nullptr);

  // direct-trace oracle on random Hermitian pairs
  Rng rng(2024);
  for (int t = 0; t < 20; ++t) {
    const Eigen::MatrixXcd M = random_hermitian(6, rng.next_u64());
    const double theta = 4.0 * rng.uniform() - 2.0;
    const QvCheckResult r =
        qv_check(q4, std::vector<double>{0, 0, 0, 0, 1}, M, theta);
    CHECK(std::abs(r.diff) < 1e-10);
  }

  // swapping the theta^3 factor to m3 (as printed elsewhere) breaks the
  // identity by a visible margin
  std::vector<QvTerm> wrong;
  for (const auto& t : q4.terms()) {
    QvTerm u = t;
    if (t.theta_pow == 3) u.moments = {3};
    wrong.push_back(u);
  }
  const MomentPolynomial qwrong(std::move(wrong));
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const Eigen::MatrixXcd M = random_hermitian(6, rng.next_u64());
    const QvCheckResult r =
        qv_check(qwrong, std::vector<double>{0, 0, 0, 0, 1}, M, 0.7);
    worst = std::max(worst, std::abs(r.diff));
  }
  CHECK(worst > 0.1);
}

TEST_CASE("qv_check across monomials and sizes") {
  Rng rng(515);
  for (int r = 1; r <= 8; ++r) {
    std::vector<double> v(r + 1, 0.0);
    v[r] = 1.0;
    const MomentPolynomial q = qv_reduce(v);
    CHECK(q.eval(0.0, std::vector<double>(8, 0.3)) == doctest::Approx(0.0));
    for (int t = 0; t < 6; ++t) {
      const int size = 5 + static_cast<int>(rng.uniform() * 6);
      const Eigen::MatrixXcd M = random_hermitian(size, rng.next_u64());
      const double theta = 4.0 * rng.uniform() - 2.0;
      const QvCheckResult res = qv_check(q, v, M, theta);
      CHECK(std::abs(res.diff) < 1e-10);
    }
  }
  CHECK_THROWS_AS(qv_reduce(std::vector<double>(14, 1.0)), domain_error);
}

TEST_CASE("qv_reduce is additive in the potential") {
  std::vector<double> v1{0, 0, 1.0, 0.5};
  std::vector<double> v2{0, -0.3, 0, 0, 2.0};
  std::vector<double> vsum{0, -0.3, 1.0, 0.5, 2.0};
  const MomentPolynomial sum = qv_reduce(v1) + qv_reduce(v2);
  const MomentPolynomial direct = qv_reduce(vsum);
  REQUIRE(sum.terms().size() == direct.terms().size());
  for (size_t i = 0; i < sum.terms().size(); ++i) {
    CHECK(sum.terms()[i].theta_pow == direct.terms()[i].theta_pow);
    CHECK(sum.terms()[i].coeff == doctest::Approx(direct.terms()[i].coeff));
  }
}

TEST_CASE("general-potential rate reduces to the Hermite case at V = x^2/2") {
  const MomentPolynomial q = qv_reduce(std::vector<double>{0.0, 0.0, 0.5});
  const MeasureLine sc = semicircle();
  for (double theta : {0.7, 2.0}) {
    const MeasureLine mu = spiked_semicircle(theta);
    const GeneralRate j = rate_general(mu, sc, q, theta);
    CHECK(j.value ==
          doctest::Approx(rate_spiked_hermite(mu, theta)).epsilon(1e-8));
    CHECK(std::abs(j.value) < 1e-6);  // the minimizer of the quadratic model
  }
  // mu = mu_V at theta = 0
  CHECK(rate_general(sc, sc, q, 0.0).value == doctest::Approx(0.0));
}

TEST_CASE("general-potential rate for a quartic is grid-stable") {
  const MomentPolynomial q = qv_reduce(std::vector<double>{0, 0, 0, 0, 1.0});
  const MeasureLine sc = semicircle();
  const MeasureLine sc_fine(-2.0, 2.0,
                            [](double x) {
                              return std::sqrt(std::max(0.0, 4.0 - x * x)) /
                                     (2.0 * M_PI);
                            },
                            {}, 4096);
  const MeasureLine mu = spiked_semicircle(0.3);
  const double a = rate_general(mu, sc, q, 0.3).value;
  const double b = rate_general(mu, sc_fine, q, 0.3).value;
  CHECK(std::isfinite(a));
  CHECK(a == doctest::Approx(b).epsilon(1e-6));

  // supplied normalization shifts the report
  const GeneralRate shifted = rate_general(mu, sc, q, 0.3, a);
  CHECK(shifted.value == doctest::Approx(0.0));
  REQUIRE(shifted.normalization.has_value());
}
