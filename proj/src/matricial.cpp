#include "sumrule/matricial.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "sumrule/errors.hpp"
#include "sumrule/laws.hpp"
#include "sumrule/opuc.hpp"
#include "sumrule/rates.hpp"

namespace sumrule {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Mat = Eigen::MatrixXcd;

void check_hermitian(const Mat& A, double tol, const char* what) {
  if ((A - A.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw validation_error(std::string(what) + ": matrix not Hermitian");
}

}  // namespace

MatrixMeasure::MatrixMeasure(int r, Domain domain, double lo, double hi,
                             Density density, std::vector<MatrixAtom> atoms,
                             int nodes)
    : r_(r), domain_(domain), lo_(lo), hi_(hi), density_(std::move(density)),
      atoms_(std::move(atoms)) {
  if (r_ < 1) throw validation_error("MatrixMeasure: dimension must be >= 1");
  rule_ = domain_ == Domain::Line ? cheb_rule(lo_, hi_, nodes)
                                  : circle_rule(nodes);
  grid_density_.reserve(rule_.x.size());
  Eigen::SelfAdjointEigenSolver<Mat> es;
  for (double x : rule_.x) {
    Mat d = density_(x);
    if (d.rows() != r_ || d.cols() != r_)
      throw validation_error("MatrixMeasure: density block has wrong shape");
    check_hermitian(d, 1e-12, "MatrixMeasure density");
    es.compute(d, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
      throw validation_error("MatrixMeasure: density not PSD on the grid");
    grid_density_.push_back(std::move(d));
  }
  for (const auto& a : atoms_) {
    check_hermitian(a.mass, 1e-12, "MatrixMeasure atom");
    es.compute(a.mass, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
      throw validation_error("MatrixMeasure: atom mass not PSD");
  }
  const Mat m = mass();
  if ((m - Mat::Identity(r_, r_)).cwiseAbs().maxCoeff() > 1e-8)
    throw validation_error("MatrixMeasure: total mass is not the identity");
}

MatrixMeasure MatrixMeasure::line(int r, double lo, double hi, Density density,
                                  std::vector<MatrixAtom> atoms) {
  return MatrixMeasure(r, Domain::Line, lo, hi, std::move(density),
                       std::move(atoms));
}

MatrixMeasure MatrixMeasure::circle(int r, Density density,
                                    std::vector<MatrixAtom> atoms) {
  return MatrixMeasure(r, Domain::Circle, -M_PI, M_PI, std::move(density),
                       std::move(atoms));
}

Eigen::MatrixXcd MatrixMeasure::mass() const {
  Mat m = Mat::Zero(r_, r_);
  for (size_t j = 0; j < rule_.x.size(); ++j)
    m += rule_.w[j] * grid_density_[j];
  for (const auto& a : atoms_) m += a.mass;
  return m;
}

Eigen::MatrixXcd MatrixMeasure::integrate_ac(
    const std::function<std::complex<double>(double)>& f) const {
  Mat m = Mat::Zero(r_, r_);
  for (size_t j = 0; j < rule_.x.size(); ++j)
    m += rule_.w[j] * f(rule_.x[j]) * grid_density_[j];
  return m;
}

std::vector<Eigen::MatrixXcd> matrix_moments(const MatrixMeasure& nu, int K) {
  if (K < 1 || K > 64) throw domain_error("matrix_moments: K must be in 1..64");
  if (nu.domain() != MatrixMeasure::Domain::Line)
    throw domain_error("matrix_moments: power moments are for line measures");
  std::vector<Mat> out;
  out.reserve(K);
  for (int k = 1; k <= K; ++k) {
    Mat m = nu.integrate_ac([k](double x) { return std::pow(x, k); });
    for (const auto& a : nu.atoms()) m += std::pow(a.location, k) * a.mass;
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<Eigen::MatrixXcd> matrix_moments(const BlockJacobi& J, int K) {
  if (K < 1) throw domain_error("matrix_moments: K must be >= 1");
  const int r = J.dim();
  const int blocks = K + 1;
  auto B_at = [&](int k) -> Mat {  // 1-based
    if (k <= static_cast<int>(J.B.size())) return J.B[k - 1];
    if (J.tail) return J.tail->first;
    throw domain_error("matrix_moments: block prefix too short");
  };
  auto A_at = [&](int k) -> Mat {
    if (k <= static_cast<int>(J.A.size())) return J.A[k - 1];
    if (J.tail) return J.tail->second;
    throw domain_error("matrix_moments: block prefix too short");
  };
  // block power iteration on the block vector (V_1, ..., V_blocks)
  std::vector<Mat> v(blocks, Mat::Zero(r, r)), nv(blocks, Mat::Zero(r, r));
  v[0] = Mat::Identity(r, r);
  std::vector<Mat> out;
  out.reserve(K);
  for (int k = 0; k < K; ++k) {
    for (int i = 0; i < blocks; ++i) {
      Mat s = B_at(i + 1) * v[i];
      if (i > 0) s += A_at(i).adjoint() * v[i - 1];
      if (i + 1 < blocks) s += A_at(i + 1) * v[i + 1];
      nv[i] = s;
    }
    v.swap(nv);
    out.push_back(v[0]);
  }
  return out;
}

Eigen::MatrixXcd matrix_moment1_circle(const MatrixMeasure& nu) {
  if (nu.domain() != MatrixMeasure::Domain::Circle)
    throw domain_error("matrix_moment1_circle: needs a circle measure");
  Mat m = nu.integrate_ac(
      [](double t) { return std::complex<double>{std::cos(t), std::sin(t)}; });
  for (const auto& a : nu.atoms())
    m += std::complex<double>{std::cos(a.location), std::sin(a.location)} *
         a.mass;
  return m;
}

namespace {

double matrix_kl_impl(const std::function<double(double)>& sigma_density,
                      const std::function<double(std::function<double(double)>)>&
                          sigma_integrate,
                      const MatrixMeasure& nu) {
  const int r = nu.dim();
  bool infinite = false;
  Eigen::SelfAdjointEigenSolver<Mat> es;
  const double v = sigma_integrate([&](double x) {
    const double s = sigma_density(x);
    if (s <= 1e-13) return 0.0;
    es.compute(nu.density(x), Eigen::EigenvaluesOnly);
    double logdet = 0.0;
    for (int i = 0; i < r; ++i) {
      const double ev = es.eigenvalues()(i);
      if (ev <= 1e-300) {
        infinite = true;
        return 0.0;
      }
      logdet += std::log(ev);
    }
    // h = density / s, so log det h = log det density - r log s
    return -(logdet - r * std::log(s));
  });
  return infinite ? kInf : v;
}

}  // namespace

double matrix_kl(const MeasureLine& sigma, const MatrixMeasure& nu) {
  if (nu.domain() != MatrixMeasure::Domain::Line)
    throw domain_error("matrix_kl: domain mismatch");
  return matrix_kl_impl(
      [&sigma](double x) { return sigma.density(x); },
      [&sigma](std::function<double(double)> f) {
        return sigma.integrate_ac(f);
      },
      nu);
}

double matrix_kl_circle(const MeasureCircle& sigma, const MatrixMeasure& nu) {
  if (nu.domain() != MatrixMeasure::Domain::Circle)
    throw domain_error("matrix_kl_circle: domain mismatch");
  return matrix_kl_impl(
      [&sigma](double t) { return sigma.density(t); },
      [&sigma](std::function<double(double)> f) { return sigma.integrate(f); },
      nu);
}

MatrixMeasure spiked_sc_matrix(const Eigen::MatrixXcd& Theta) {
  check_hermitian(Theta, 1e-12, "spiked_sc_matrix");
  const int r = static_cast<int>(Theta.rows());
  const Mat id = Mat::Identity(r, r);
  const Mat Theta2 = Theta * Theta;
  auto dens = [Theta, Theta2, id](double x) -> Mat {
    const double s2 = 4.0 - x * x;
    if (s2 <= 0.0) return Mat::Zero(Theta.rows(), Theta.rows());
    const Mat core = Theta2 + id - x * Theta;
    // positive definite on (-2,2) for Hermitian Theta
    return (std::sqrt(s2) / (2.0 * M_PI)) * core.inverse();
  };
  Eigen::SelfAdjointEigenSolver<Mat> es(Theta);
  if (es.info() != Eigen::Success)
    throw numeric_error("spiked_sc_matrix: eigendecomposition failed");
  std::vector<MatrixMeasure::MatrixAtom> atoms;
  for (int i = 0; i < r; ++i) {
    const double th = es.eigenvalues()(i);
    if (std::abs(th) <= 1.0) continue;  // no atom at or below the threshold
    const double mass = 1.0 - 1.0 / (th * th);
    const double loc = th + 1.0 / th;
    const Eigen::VectorXcd u = es.eigenvectors().col(i);
    const Mat block = mass * (u * u.adjoint());
    bool merged = false;
    for (auto& a : atoms)
      if (std::abs(a.location - loc) < 1e-12) {  // coinciding eigenvalues
        a.mass += block;
        merged = true;
        break;
      }
    if (!merged) atoms.push_back({loc, block});
  }
  return MatrixMeasure::line(r, -2.0, 2.0, dens, std::move(atoms));
}

namespace {

int psd_rank(const Mat& A) {
  Eigen::SelfAdjointEigenSolver<Mat> es(A);
  int rank = 0;
  for (int i = 0; i < A.rows(); ++i)
    if (es.eigenvalues()(i) > 1e-12) ++rank;
  return rank;
}

// G extended to PSD matrices: sum of G over eigenvalues
double g_func_matrix(const Mat& A) {
  Eigen::SelfAdjointEigenSolver<Mat> es(A);
  double s = 0.0;
  for (int i = 0; i < A.rows(); ++i) {
    const double ev = es.eigenvalues()(i);
    if (!(ev > 0.0)) return kInf;
    s += ev - 1.0 - std::log(ev);
  }
  return s;
}

}  // namespace

double rate_matrix_hermite(const MatrixMeasure& nu,
                           const Eigen::MatrixXcd& Theta) {
  check_hermitian(Theta, 1e-12, "rate_matrix_hermite");
  if (nu.dim() != Theta.rows())
    throw domain_error("rate_matrix_hermite: dimension mismatch");
  double outliers = 0.0;
  for (const auto& a : nu.atoms()) {
    if (std::abs(a.location) <= 2.0 + 1e-9) continue;
    outliers += psd_rank(a.mass) * f_hermite(a.location);
  }
  const double kl = matrix_kl(semicircle(), nu);
  if (std::isinf(kl)) return kInf;
  const Mat m1 = matrix_moments(nu, 1)[0];
  return kl + outliers - (Theta * m1).trace().real() +
         0.5 * (Theta * Theta.adjoint()).trace().real();
}

double rate_matrix_hermite(const BlockJacobi& J, const Eigen::MatrixXcd& Theta) {
  check_hermitian(Theta, 1e-12, "rate_matrix_hermite");
  const int r = J.dim();
  if (Theta.rows() != r) throw domain_error("rate_matrix_hermite: dim mismatch");
  double s = 0.0;
  for (size_t k = 0; k < J.B.size(); ++k) {
    const Mat d = (k == 0) ? Mat(J.B[k] - Theta) : J.B[k];
    s += 0.5 * (d * d.adjoint()).trace().real();
  }
  for (const Mat& A : J.A) s += g_func_matrix(A * A.adjoint());
  if (J.tail) {
    const double t =
        0.5 * (J.tail->first * J.tail->first.adjoint()).trace().real() +
        g_func_matrix(J.tail->second * J.tail->second.adjoint());
    if (!(t <= 1e-14)) return kInf;
  }
  return s;
}

std::vector<Eigen::MatrixXcd> matrix_aleksandrov(
    std::span<const Eigen::MatrixXcd> alphas, const Eigen::MatrixXcd& Lambda) {
  const Mat check = Lambda * Lambda.adjoint();
  if ((check - Mat::Identity(Lambda.rows(), Lambda.cols()))
          .cwiseAbs()
          .maxCoeff() > 1e-10)
    throw domain_error("matrix_aleksandrov: Lambda is not unitary");
  std::vector<Mat> out;
  out.reserve(alphas.size());
  for (const Mat& a : alphas) out.push_back(Lambda.adjoint() * a);
  return out;
}

double t_g(const Eigen::MatrixXcd& alpha, double g) {
  const Mat prod = alpha * alpha.adjoint();
  Eigen::SelfAdjointEigenSolver<Mat> es(prod);
  double s = 0.0;
  for (int i = 0; i < prod.rows(); ++i) {
    const double ev = es.eigenvalues()(i);
    if (ev >= 1.0) return kInf;
    s += -std::log1p(-ev) - g * ev;
  }
  return s;
}

double rate_matrix_gw(const MatrixMeasure& nu, double g,
                      const Eigen::MatrixXcd& Lambda) {
  if (std::abs(g) > 1.0) throw domain_error("rate_matrix_gw: |g| > 1");
  const double kl = matrix_kl_circle(gross_witten(g), nu);
  if (std::isinf(kl)) return kInf;
  const Mat m1 = matrix_moment1_circle(nu);
  const Mat id = Mat::Identity(nu.dim(), nu.dim());
  return kl - g * (m1 * (Lambda.adjoint() - id)).trace().real();
}

MatrixMeasure gw_matrix_aleksandrov(double g, const Eigen::MatrixXcd& Lambda) {
  // Lambda = V diag(e^{i phi_j}) V*; the rotated quasi-scalar measure is
  // V diag(aleksandrov(GW_g, phi_j)) V*.
  const int r = static_cast<int>(Lambda.rows());
  const Mat check = Lambda * Lambda.adjoint();
  if ((check - Mat::Identity(r, r)).cwiseAbs().maxCoeff() > 1e-10)
    throw domain_error("gw_matrix_aleksandrov: Lambda is not unitary");
  Eigen::ComplexEigenSolver<Mat> es(Lambda);
  if (es.info() != Eigen::Success)
    throw numeric_error("gw_matrix_aleksandrov: eigensolver failed");
  const Mat V = es.eigenvectors();
  std::vector<double> phis(r);
  for (int j = 0; j < r; ++j) phis[j] = std::arg(es.eigenvalues()(j));
  std::vector<MeasureCircle> channels;
  channels.reserve(r);
  const MeasureCircle base = gross_witten(g);
  for (int j = 0; j < r; ++j)
    channels.push_back(aleksandrov_measure(base, phis[j]));
  auto dens = [V, channels, r](double t) -> Mat {
    Eigen::VectorXcd d(r);
    for (int j = 0; j < r; ++j) d(j) = channels[j].density(t);
    return V * d.asDiagonal() * V.adjoint();
  };
  return MatrixMeasure::circle(r, dens);
}

}  // namespace sumrule
