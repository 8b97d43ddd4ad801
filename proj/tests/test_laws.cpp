#include <cmath>

#include "doctest.h"
#include "sumrule/errors.hpp"
#include "sumrule/laws.hpp"
#include "sumrule/oprl.hpp"

using namespace sumrule;

TEST_CASE("spiked semicircle law") {
  const MeasureLine sp = spiked_semicircle(2.0);
  // density sqrt(4-x^2)/(2 pi (5 - 2x)) and atom (2.5, 0.75)
  for (double x : {-1.5, 0.0, 0.5, 1.9}) {
    const double expect = std::sqrt(4.0 - x * x) / (2.0 * M_PI * (5.0 - 2.0 * x));
    CHECK(sp.density(x) == doctest::Approx(expect).epsilon(1e-13));
  }
  REQUIRE(sp.atoms().size() == 1);
  CHECK(sp.atoms()[0].location == doctest::Approx(2.5));
  CHECK(sp.atoms()[0].mass == doctest::Approx(0.75));

  CHECK(spiked_semicircle(0.5).atoms().empty());   // (1 - theta^-2)+ = 0
  CHECK(spiked_semicircle(-0.8).atoms().empty());
  REQUIRE(spiked_semicircle(-3.0).atoms().size() == 1);
  CHECK(spiked_semicircle(-3.0).atoms()[0].location ==
        doctest::Approx(-3.0 - 1.0 / 3.0));

  // hairline above the transition: construction stays normalized
  for (double th : {1.0001, 1.01, 0.999, 1.0})
    CHECK(std::abs(spiked_semicircle(th).mass() - 1.0) < 1e-10);
}

TEST_CASE("spiked Marchenko-Pastur law") {
  const MeasureLine mu = spiked_mp(0.5, 2.0);
  REQUIRE(mu.atoms().size() == 1);
  CHECK(mu.atoms()[0].location == doctest::Approx(3.0));
  // Mass of the outlier: ((theta-1)^2 - tau)/((theta-1)(theta+tau-1));
  // normalization and m_1 = theta both force this value, as does the
  // Stieltjes residue of the coefficient minimizer.
  CHECK(mu.atoms()[0].mass == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(std::abs(mu.mass() - 1.0) < 1e-8);

  // subcritical: no atom
  CHECK(spiked_mp(0.5, 1.3).atoms().empty());
  // small-theta branch: outlier below the bulk
  const MeasureLine lowmu = spiked_mp(0.5, 0.2);
  REQUIRE(lowmu.atoms().size() == 1);
  CHECK(lowmu.atoms()[0].location == doctest::Approx(0.075));
  CHECK(lowmu.atoms()[0].mass == doctest::Approx(0.14 / 0.24).epsilon(1e-10));
  CHECK(lowmu.atoms()[0].location <
        (1.0 - std::sqrt(0.5)) * (1.0 - std::sqrt(0.5)));

  CHECK_THROWS_AS(spiked_mp(1.0, 2.0), domain_error);  // hard-edge mass
  CHECK_THROWS_AS(spiked_mp(0.5, -1.0), domain_error);

  // theta = 1 means z_1' = z_1: plain Marchenko-Pastur
  const MeasureLine plain = spiked_mp(0.5, 1.0);
  const MeasureLine mp = marchenko_pastur(0.5);
  for (double x : {0.2, 0.9, 1.7, 2.6})
    CHECK(plain.density(x) == doctest::Approx(mp.density(x)));
}

TEST_CASE("first moments of the spiked laws equal theta") {
  for (double th : {0.4, 1.5, 2.0, 3.0})
    CHECK(spiked_semicircle(th).moments(1)[0] ==
          doctest::Approx(th).epsilon(1e-7));
  for (double th : {0.2, 1.2, 2.0, 2.5})
    CHECK(spiked_mp(0.5, th).moments(1)[0] ==
          doctest::Approx(th).epsilon(1e-7));
  CHECK(spiked_mp(0.25, 2.0).moments(1)[0] == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("meixner classification") {
  CHECK(meixner_classify(0.0, 0.0) == "free Gaussian");
  CHECK(meixner_classify(0.5, 0.0) == "free Poisson");
  CHECK(meixner_classify(0.0, -0.75) == "free binomial");
  CHECK(meixner_classify(0.0, 0.5) == "free hyperbolic tangent");
  CHECK(meixner_classify(2.0, 1.0) == "free Gamma");
  CHECK(meixner_classify(3.0, 1.0) == "free Pascal");
  CHECK_THROWS_AS(meixner_classify(0.0, -1.0), domain_error);
}

TEST_CASE("meixner atoms against the truncated-matrix oracle") {
  // frozen from eigendecompositions of the (0,b,b,...;1,s,s,...) truncation
  auto atoms = meixner_atoms(0.0, -0.75);
  REQUIRE(atoms.size() == 2);
  CHECK(atoms[0].location == doctest::Approx(-1.1547005383792515));
  CHECK(atoms[0].mass == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  CHECK(atoms[1].location == doctest::Approx(1.1547005383792515));
  CHECK(atoms[1].mass == doctest::Approx(1.0 / 3.0).epsilon(1e-10));

  CHECK(meixner_atoms(0.0, -0.5).empty());   // masses only for c < -1/2
  CHECK(meixner_atoms(0.5, 0.0).empty());    // (1 - b^-2)+ = 0
  CHECK(meixner_atoms(0.0, 0.5).empty());    // complex roots

  auto poisson = meixner_atoms(2.0, 0.0);
  REQUIRE(poisson.size() == 1);
  CHECK(poisson[0].location == doctest::Approx(-0.5));
  CHECK(poisson[0].mass == doctest::Approx(0.75));

  auto binb = meixner_atoms(1.5, -0.75);  // general binomial: residue route
  REQUIRE(binb.size() == 1);
  CHECK(binb[0].location == doctest::Approx(-0.5275252316519466));
  CHECK(binb[0].mass == doctest::Approx(0.769769113805318).epsilon(1e-9));

  auto pascal = meixner_atoms(3.0, 1.0);
  REQUIRE(pascal.size() == 1);
  CHECK(pascal[0].location == doctest::Approx(-0.3819660112501051));
  CHECK(pascal[0].mass == doctest::Approx(0.8291796067500631).epsilon(1e-9));
  // the closed Pascal mass formula agrees with the residue at this point
  const double sq = std::sqrt(9.0 - 4.0);
  CHECK(pascal[0].mass ==
        doctest::Approx(1.0 - (3.0 - sq) / (2.0 * sq)).epsilon(1e-9));

  CHECK(meixner_atoms(2.0, 1.0).empty());  // free Gamma: root off the branch
}

TEST_CASE("meixner measures normalize and standardize") {
  for (auto [b, c] : std::vector<std::pair<double, double>>{
           {0.0, -0.75}, {1.5, -0.75}, {0.5, 0.0}, {0.0, 0.5}, {0.5, 0.5},
           {3.0, 1.0}, {2.0, 1.0}}) {
    const MeasureLine mu = meixner(b, c);
    CHECK(std::abs(mu.mass() - 1.0) < 1e-8);
    const auto m = mu.moments(2);
    CHECK(std::abs(m[0]) < 1e-7);        // mean 0
    CHECK(m[1] == doctest::Approx(1.0).epsilon(1e-7));  // variance 1
  }
}

TEST_CASE("meixner jacobi coefficients") {
  const JacobiCoeffs sc = meixner_jacobi(0.0, 0.0);
  CHECK(sc.b(1) == 0.0);
  CHECK(sc.b(5) == 0.0);
  CHECK(sc.a(3) == 1.0);

  // lanczos on a discretization reproduces (0, b, b, ...; 1, s, s, ...)
  const double b = 0.5, c = 0.5;
  const JacobiCoeffs from_measure = lanczos(discretize(meixner(b, c), 1024), 8);
  const JacobiCoeffs exact = meixner_jacobi(b, c);
  for (int k = 1; k <= 8; ++k)
    CHECK(std::abs(from_measure.b(k) - exact.b(k)) < 1e-6);
  for (int k = 1; k <= 7; ++k)
    CHECK(std::abs(from_measure.a(k) - exact.a(k)) < 1e-6);

  // atom-bearing member: same identification including the point masses
  const JacobiCoeffs binom = lanczos(discretize(meixner(0.0, -0.75), 2048), 8);
  CHECK(std::abs(binom.b(3)) < 1e-6);
  CHECK(std::abs(binom.a(1) - 1.0) < 1e-6);
  CHECK(std::abs(binom.a(2) - 0.5) < 1e-6);
}

TEST_CASE("spiked GW at phi = 0 is GW") {
  const MeasureCircle a = spiked_gw(0.8, 0.0);
  const MeasureCircle b = gross_witten(0.8);
  for (int j = 0; j < 1024; ++j) {
    const double t = -M_PI + 2.0 * M_PI * j / 1024.0;
    CHECK(std::abs(a.density(t) - b.density(t)) < 1e-12);
  }
}

TEST_CASE("law spec dispatch") {
  LawSpec spec;
  spec.tag = LawSpec::Tag::SpikedMP;
  spec.tau = 0.5;
  spec.theta = 2.0;
  CHECK(!spec.on_circle());
  CHECK(spec.build_line().atoms().size() == 1);
  CHECK_THROWS_AS(spec.build_circle(), domain_error);

  spec.tag = LawSpec::Tag::GW;
  spec.g = 0.8;
  CHECK(spec.on_circle());
  CHECK(std::abs(spec.build_circle().mass() - 1.0) < 1e-8);
}
