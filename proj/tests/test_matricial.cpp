#include <cmath>
#include <complex>

#include "doctest.h"
#include "sumrule/errors.hpp"
#include "sumrule/laws.hpp"
#include "sumrule/matricial.hpp"
#include "sumrule/rates.hpp"
#include "sumrule/rng.hpp"

using namespace sumrule;
using Mat = Eigen::MatrixXcd;
using cplx = std::complex<double>;

namespace {

Mat random_unitary(int r, Rng& rng) {
  Mat A(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) A(i, j) = cplx{rng.normal(), rng.normal()};
  const Eigen::HouseholderQR<Mat> qr(A);
  Mat Q = qr.householderQ();
  return Q;
}

MatrixMeasure quasi_scalar_sc(int r) {
  auto dens = [r](double x) {
    const double v = std::sqrt(std::max(0.0, 4.0 - x * x)) / (2.0 * M_PI);
    return (v * Mat::Identity(r, r)).eval();
  };
  return MatrixMeasure::line(r, -2.0, 2.0, dens);
}

}  // namespace

TEST_CASE("matrix moments of the quasi-scalar semicircle") {
  const MatrixMeasure nu = quasi_scalar_sc(2);
  const auto m = matrix_moments(nu, 2);
  CHECK(m[0].cwiseAbs().maxCoeff() < 1e-12);
  CHECK((m[1] - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("block Jacobi moments via block powers") {
  Mat Theta(2, 2);
  Theta << 1.2, cplx(0.3, 0.4), cplx(0.3, -0.4), -0.5;
  BlockJacobi J;
  J.B = {Theta};
  J.A = {};
  J.tail = std::make_pair(Mat::Zero(2, 2), Mat::Identity(2, 2));
  const auto m = matrix_moments(J, 2);
  CHECK((m[0] - Theta).cwiseAbs().maxCoeff() < 1e-13);
  const Mat expect2 = Theta * Theta + Mat::Identity(2, 2);
  CHECK((m[1] - expect2).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("spiked semicircle matrix law: diagonal case") {
  Mat Theta = Mat::Zero(2, 2);
  Theta(0, 0) = 2.0;
  Theta(1, 1) = 0.5;
  const MatrixMeasure nu = spiked_sc_matrix(Theta);

  // mass is the identity
  CHECK((nu.mass() - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-7);

  // diagonal entries are the scalar spiked laws
  const MeasureLine mu2 = spiked_semicircle(2.0);
  const MeasureLine mu05 = spiked_semicircle(0.5);
  for (double x : {-1.0, 0.0, 1.5}) {
    const Mat d = nu.density(x);
    CHECK(std::abs(d(0, 0).real() - mu2.density(x)) < 1e-12);
    CHECK(std::abs(d(1, 1).real() - mu05.density(x)) < 1e-12);
    CHECK(std::abs(d(0, 1)) < 1e-13);
  }
  REQUIRE(nu.atoms().size() == 1);
  CHECK(nu.atoms()[0].location == doctest::Approx(2.5));
  CHECK(std::abs(nu.atoms()[0].mass(0, 0).real() - 0.75) < 1e-12);

  // first moment is Theta, second is Theta^2 + 1
  const auto m = matrix_moments(nu, 2);
  CHECK((m[0] - Theta).cwiseAbs().maxCoeff() < 1e-6);
  CHECK((m[1] - (Theta * Theta + Mat::Identity(2, 2))).cwiseAbs().maxCoeff() <
        1e-6);

  // theta = 0 collapses to the quasi-scalar semicircle
  const MatrixMeasure base = spiked_sc_matrix(Mat::Zero(2, 2));
  CHECK(std::abs(base.density(0.7)(0, 0).real() - semicircle().density(0.7)) <
        1e-13);
}

TEST_CASE("matrix relative entropy") {
  const MeasureLine sc = semicircle();
  CHECK(std::abs(matrix_kl(sc, quasi_scalar_sc(3))) < 1e-10);

  // block-diagonal argument: entropies add
  Mat Theta = Mat::Zero(2, 2);
  Theta(0, 0) = 2.0;
  Theta(1, 1) = 0.5;
  const double v = matrix_kl(sc, spiked_sc_matrix(Theta));
  CHECK(v == doctest::Approx(1.5112943611198906 + 0.125).epsilon(1e-7));

  // nonnegative along a perturbation family, zero only at sigma itself
  for (double t : {-0.8, -0.3, 0.4, 0.9}) {
    Mat Th = Mat::Zero(2, 2);
    Th(0, 0) = t;
    const double kl = matrix_kl(sc, spiked_sc_matrix(Th));
    CHECK(kl >= -1e-10);
    CHECK(kl > 1e-4);  // t != 0 moves the first channel off SC
  }
}

TEST_CASE("matrix Hermite rate vanishes at the spiked matrix law") {
  Mat Theta = Mat::Zero(2, 2);
  Theta(0, 0) = 2.0;
  Theta(1, 1) = 0.5;
  CHECK(std::abs(rate_matrix_hermite(spiked_sc_matrix(Theta), Theta)) < 1e-6);

  // merged eigenvalues: one rank-two atom, still a zero of the rate
  Mat Th2 = 2.0 * Mat::Identity(2, 2);
  const MatrixMeasure merged = spiked_sc_matrix(Th2);
  REQUIRE(merged.atoms().size() == 1);
  Eigen::SelfAdjointEigenSolver<Mat> es(merged.atoms()[0].mass);
  CHECK(es.eigenvalues()(0) == doctest::Approx(0.75));
  CHECK(es.eigenvalues()(1) == doctest::Approx(0.75));
  CHECK(std::abs(rate_matrix_hermite(merged, Th2)) < 1e-6);

  // coefficient form: exact zero at B_1 = Theta with the minimal tail
  BlockJacobi J;
  J.B = {Theta};
  J.A = {};
  J.tail = std::make_pair(Mat::Zero(2, 2), Mat::Identity(2, 2));
  CHECK(rate_matrix_hermite(J, Theta) == 0.0);
  // quadratic growth away from the minimizer
  BlockJacobi J2 = J;
  J2.B = {Mat::Zero(2, 2)};
  CHECK(rate_matrix_hermite(J2, Theta) ==
        doctest::Approx(0.5 * (Theta * Theta).trace().real()));
}

TEST_CASE("rank-one projection mixture identity") {
  const double phi = M_PI / 4, theta = 2.0;
  Mat R(2, 2);
  R << std::cos(phi) * std::cos(phi), std::sin(phi) * std::cos(phi),
      std::sin(phi) * std::cos(phi), std::sin(phi) * std::sin(phi);
  const MatrixMeasure nu = spiked_sc_matrix(theta * R);
  const MeasureLine sc = semicircle();
  const MeasureLine sp = spiked_semicircle(theta);
  const double s2 = std::sin(phi) * std::sin(phi);
  const double c2 = std::cos(phi) * std::cos(phi);
  for (int j = 0; j < 1024; ++j) {
    const double x = -2.0 + 4.0 * (j + 0.5) / 1024.0;
    const double mix = s2 * sc.density(x) + c2 * sp.density(x);
    CHECK(std::abs(nu.density(x)(0, 0).real() - mix) < 1e-7);
  }
  REQUIRE(nu.atoms().size() == 1);
  CHECK(std::abs(nu.atoms()[0].mass(0, 0).real() - c2 * 0.75) < 1e-12);
}

TEST_CASE("unitary conjugation covariance") {
  Rng rng(606);
  for (int trial = 0; trial < 3; ++trial) {
    const int r = 2 + trial;  // dimensions 2, 3, 4
    Mat H(r, r);
    for (int i = 0; i < r; ++i) {
      H(i, i) = 3.0 * rng.uniform() - 1.0;
      for (int j = i + 1; j < r; ++j) {
        H(i, j) = cplx{rng.normal(), rng.normal()};
        H(j, i) = std::conj(H(i, j));
      }
    }
    const Mat U = random_unitary(r, rng);
    const MatrixMeasure lhs = spiked_sc_matrix((U * H * U.adjoint()).eval());
    const MatrixMeasure rhs = spiked_sc_matrix(H);
    for (double x : {-1.3, 0.2, 1.7}) {
      const Mat diff = lhs.density(x) - U * rhs.density(x) * U.adjoint();
      CHECK(diff.cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("matrix aleksandrov map and T_g") {
  Rng rng(707);
  const Mat Lambda = random_unitary(2, rng);
  std::vector<Mat> alphas;
  for (int k = 0; k < 4; ++k) {
    Mat a(2, 2);
    for (int i = 0; i < 4; ++i) a(i / 2, i % 2) = 0.2 * cplx{rng.normal(), rng.normal()};
    alphas.push_back(a);
  }
  const auto rotated = matrix_aleksandrov(alphas, Lambda);
  for (size_t k = 0; k < alphas.size(); ++k) {
    CHECK((rotated[k] - Lambda.adjoint() * alphas[k]).cwiseAbs().maxCoeff() <
          1e-14);
    // operator norm is invariant
    CHECK(rotated[k].operatorNorm() ==
          doctest::Approx(alphas[k].operatorNorm()).epsilon(1e-12));
  }
  CHECK_THROWS_AS(matrix_aleksandrov(alphas, (2.0 * Lambda).eval()),
                  domain_error);

  // scalar reduction of T_g
  const cplx a{0.3, -0.2};
  Mat a1(1, 1);
  a1 << a;
  const double expect = -std::log1p(-std::norm(a)) - 0.8 * std::norm(a);
  CHECK(t_g(a1, 0.8) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(t_g(Mat::Zero(2, 2), 0.8) == 0.0);
  Mat big(1, 1);
  big << cplx(1.0, 0.0);
  CHECK(std::isinf(t_g(big, 0.8)));
}

TEST_CASE("matrix Gross-Witten rate at its minimizer") {
  const double g = 0.8;
  Mat Lambda = Mat::Zero(2, 2);
  Lambda(0, 0) = std::exp(cplx(0.0, M_PI / 3));
  Lambda(1, 1) = 1.0;
  const MatrixMeasure minimizer = gw_matrix_aleksandrov(g, Lambda);
  CHECK(std::abs(rate_matrix_gw(minimizer, g, Lambda)) < 1e-6);

  // Lambda = 1 reduces to the matrix KL against GW, minimized by GW itself
  const MatrixMeasure gw1 = gw_matrix_aleksandrov(g, Mat::Identity(2, 2));
  CHECK(std::abs(rate_matrix_gw(gw1, g, Mat::Identity(2, 2))) < 1e-8);
  // and the quasi-scalar GW is not the minimizer for a twisted Lambda
  CHECK(rate_matrix_gw(gw1, g, Lambda) > 0.01);

  // r = 1 reduction agrees with the scalar spiked GW rate
  Mat L1(1, 1);
  L1 << std::exp(cplx(0.0, M_PI / 3));
  const MatrixMeasure cphi = gw_matrix_aleksandrov(g, L1);
  CHECK(std::abs(rate_matrix_gw(cphi, g, L1) -
                 rate_spiked_gw(spiked_gw(g, M_PI / 3), g, M_PI / 3)) < 1e-8);

  // non-diagonal unitary: conjugated eigen-channels still minimize
  Rng rng(808);
  const Mat V = random_unitary(2, rng);
  Mat phases = Mat::Zero(2, 2);
  phases(0, 0) = std::exp(cplx(0.0, 0.9));
  phases(1, 1) = std::exp(cplx(0.0, -0.4));
  const Mat Lrot = V * phases * V.adjoint();
  const MatrixMeasure min2 = gw_matrix_aleksandrov(g, Lrot);
  CHECK(std::abs(rate_matrix_gw(min2, g, Lrot)) < 1e-6);
  CHECK(rate_matrix_gw(min2, g, Mat::Identity(2, 2)) > 1e-3);
}
