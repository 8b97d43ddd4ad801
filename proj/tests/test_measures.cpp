#include <cmath>

#include "doctest.h"
#include "sumrule/errors.hpp"
#include "sumrule/laws.hpp"
#include "sumrule/measures.hpp"
#include "sumrule/rng.hpp"

using namespace sumrule;

namespace {

// independent oracle: Gauss-Chebyshev (2nd kind) sum for moments of SC,
// assembled from scratch rather than through MeasureLine
double sc_moment_oracle(int k, int nodes = 4096) {
  double s = 0.0;
  for (int j = 1; j <= nodes; ++j) {
    const double phi = j * M_PI / (nodes + 1);
    const double x = 2.0 * std::cos(phi);
    const double w = (M_PI / (nodes + 1)) * 2.0 * std::sin(phi);
    s += w * std::sqrt(4.0 - x * x) / (2.0 * M_PI) * std::pow(x, k);
  }
  return s;
}

}  // namespace

TEST_CASE("semicircle moments match the quadrature oracle") {
  const MeasureLine sc = semicircle();
  const auto m = moments_line(sc, 4);
  CHECK(std::abs(m[0]) < 1e-12);          // symmetry
  CHECK(m[1] == doctest::Approx(1.0).epsilon(1e-10));  // Catalan C_1
  CHECK(m[3] == doctest::Approx(2.0).epsilon(1e-10));  // Catalan C_2
  CHECK(std::abs(m[1] - sc_moment_oracle(2)) < 1e-10);
  CHECK(std::abs(m[3] - sc_moment_oracle(4)) < 1e-10);
}

TEST_CASE("single atom has unit moments of every order") {
  MeasureLine delta(-1.0, 1.0, [](double) { return 0.0; }, {{1.0, 1.0}});
  const auto m = delta.moments(8);
  for (double mk : m) CHECK(mk == doctest::Approx(1.0));
}

TEST_CASE("circle moments: lebesgue, gross-witten, point mass") {
  const auto c0 = moments_circle(lebesgue_circle(), 5);
  for (const auto& ck : c0) CHECK(std::abs(ck) < 1e-12);

  const auto cg = moments_circle(gross_witten(0.8), 4);
  CHECK(std::abs(cg[0] - 0.4) < 1e-12);  // c_1 = g/2
  for (int k = 1; k < 4; ++k) CHECK(std::abs(cg[k]) < 1e-12);

  MeasureCircle delta([](double) { return 0.0; }, {{0.0, 1.0}});
  const auto cd = moments_circle(delta, 4);
  for (const auto& ck : cd) CHECK(std::abs(ck - 1.0) < 1e-14);
}

TEST_CASE("affine map: identity, flip, free Poisson form") {
  const MeasureLine sc = semicircle();
  const MeasureLine id = affine_map(sc, 1.0, 0.0);
  CHECK(id.lo() == doctest::Approx(-2.0));
  CHECK(std::abs(id.moments(2)[1] - 1.0) < 1e-10);

  const MeasureLine sp = spiked_semicircle(1.8);
  const MeasureLine fl = affine_map(sp, -1.0, 0.0);
  CHECK(fl.moments(1)[0] == doctest::Approx(-sp.moments(1)[0]).epsilon(1e-9));

  // T_{1,b}(mu_{b,0}): density sqrt(4-y^2)/(2 pi ((1+b^2) + b y)) with an
  // atom of mass (1 - b^{-2})+ at -b - 1/b
  const double b = 2.0;
  const MeasureLine moved = affine_map(meixner(b, 0.0), 1.0, b);
  for (double y : {-1.5, -0.3, 0.0, 0.7, 1.9}) {
    const double expect =
        std::sqrt(4.0 - y * y) / (2.0 * M_PI * ((1.0 + b * b) + b * y));
    CHECK(moved.density(y) == doctest::Approx(expect).epsilon(1e-12));
  }
  REQUIRE(moved.atoms().size() == 1);
  CHECK(moved.atoms()[0].location == doctest::Approx(-b - 1.0 / b));
  CHECK(moved.atoms()[0].mass == doctest::Approx(1.0 - 1.0 / (b * b)));
}

TEST_CASE("affine map errors and mass conservation") {
  const MeasureLine sc = semicircle();
  CHECK_THROWS_AS(affine_map(sc, 0.0, 1.0), domain_error);

  Rng rng(20260809);
  for (int trial = 0; trial < 200; ++trial) {
    const double r = (rng.uniform() < 0.5 ? -1 : 1) * (0.25 + 2.0 * rng.uniform());
    const double s = 4.0 * rng.uniform() - 2.0;
    const double theta = 3.0 * rng.uniform();
    const MeasureLine mu = spiked_semicircle(theta);
    const MeasureLine nu = affine_map(mu, r, s);
    CHECK(std::abs(nu.mass() - mu.mass()) < 1e-12);
    const double m1 = mu.moments(1)[0], m1p = nu.moments(1)[0];
    CHECK(m1p == doctest::Approx((m1 - s) / r).epsilon(1e-8));
  }
}

TEST_CASE("catalog laws are normalized") {
  CHECK(std::abs(semicircle().mass() - 1.0) < 1e-8);
  CHECK(std::abs(marchenko_pastur(0.5).mass() - 1.0) < 1e-8);
  CHECK(std::abs(marchenko_pastur(1.0).mass() - 1.0) < 1e-8);
  CHECK(std::abs(spiked_semicircle(2.0).mass() - 1.0) < 1e-8);
  CHECK(std::abs(spiked_semicircle(0.5).mass() - 1.0) < 1e-8);
  CHECK(std::abs(spiked_mp(0.5, 2.0).mass() - 1.0) < 1e-8);
  CHECK(std::abs(gross_witten(0.8).mass() - 1.0) < 1e-8);
  CHECK(std::abs(spiked_gw(0.8, M_PI / 3).mass() - 1.0) < 1e-8);
  CHECK(std::abs(meixner(0.0, -0.75).mass() - 1.0) < 1e-8);
  CHECK(std::abs(meixner(1.5, -0.75).mass() - 1.0) < 1e-8);
  CHECK(std::abs(meixner(3.0, 1.0).mass() - 1.0) < 1e-8);
}

TEST_CASE("validation: non-normalized and negative densities are rejected") {
  CHECK_THROWS_AS(
      MeasureLine(-1.0, 1.0, [](double) { return 1.0; }),  // mass 2
      validation_error);
  CHECK_THROWS_AS(MeasureLine(-1.0, 1.0, [](double) { return -0.5; }),
                  validation_error);
  CHECK_THROWS_AS(MeasureLine(-1.0, 1.0, [](double) { return 0.25; },
                              {{0.0, 0.3}, {0.0, 0.2}}),
                  validation_error);  // duplicate atom locations
}

TEST_CASE("quadrature measure: csv, sorting, invariants") {
  QuadratureMeasure q({0.5, -0.5, 1.5}, {0.25, 0.25, 0.5});
  CHECK(q.points()[0] == -0.5);
  CHECK(q.top().first == 1.5);
  CHECK(q.top().second == 0.5);
  std::ostringstream os;
  q.write_csv(os);
  CHECK(os.str().substr(0, 13) == "point,weight\n");

  CHECK_THROWS_AS(QuadratureMeasure({0.0, 1.0}, {0.6, 0.6}), validation_error);
  CHECK_THROWS_AS(QuadratureMeasure({0.0, 0.0}, {0.5, 0.5}), validation_error);
}

TEST_CASE("discretize reproduces moments") {
  const MeasureLine mu = spiked_semicircle(2.0);
  const QuadratureMeasure q = discretize(mu, 1024);
  const auto md = q.moments(4);
  const auto mc = mu.moments(4);
  for (int k = 0; k < 4; ++k)
    CHECK(md[k] == doctest::Approx(mc[k]).epsilon(1e-9));
}
