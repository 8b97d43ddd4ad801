#ifndef SUMRULE_MATRICIAL_HPP
#define SUMRULE_MATRICIAL_HPP

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sumrule/measures.hpp"

namespace sumrule {

// r x r matrix-valued probability measure on a support interval (line) or
// on the circle (densities with respect to lambda_0). Densities live on a
// cosine (resp. uniform) grid of 1024 nodes; a closure is kept so that
// entropies against other measures can re-evaluate off-grid.
class MatrixMeasure {
public:
  enum class Domain { Line, Circle };
  using Density = std::function<Eigen::MatrixXcd(double)>;
  struct MatrixAtom {
    double location;
    Eigen::MatrixXcd mass;
  };

  MatrixMeasure(int r, Domain domain, double lo, double hi, Density density,
                std::vector<MatrixAtom> atoms = {}, int nodes = 1024);

  static MatrixMeasure line(int r, double lo, double hi, Density density,
                            std::vector<MatrixAtom> atoms = {});
  static MatrixMeasure circle(int r, Density density,
                              std::vector<MatrixAtom> atoms = {});

  int dim() const { return r_; }
  Domain domain() const { return domain_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::vector<MatrixAtom>& atoms() const { return atoms_; }

  Eigen::MatrixXcd density(double x) const { return density_(x); }
  Eigen::MatrixXcd mass() const;

  // entrywise integral of f(x) * density(x) dx (line) or dlambda_0 (circle),
  // atoms excluded
  Eigen::MatrixXcd integrate_ac(
      const std::function<std::complex<double>(double)>& f) const;

private:
  int r_;
  Domain domain_;
  double lo_, hi_;
  Density density_;
  std::vector<MatrixAtom> atoms_;
  QuadRule rule_;
  std::vector<Eigen::MatrixXcd> grid_density_;
};

// Block Jacobi coefficients with Hermitian positive-definite off-diagonal
// blocks, prefix plus optional constant tail.
struct BlockJacobi {
  std::vector<Eigen::MatrixXcd> B;  // Hermitian
  std::vector<Eigen::MatrixXcd> A;  // Hermitian positive definite
  std::optional<std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd>> tail;  // (B,A)

  int dim() const { return static_cast<int>(B.front().rows()); }
};

// m_k = int x^k dnu (entrywise), k = 1..K.
std::vector<Eigen::MatrixXcd> matrix_moments(const MatrixMeasure& nu, int K);
// m_k = (J^k)_{11 block} by block-tridiagonal powers.
std::vector<Eigen::MatrixXcd> matrix_moments(const BlockJacobi& J, int K);

// first circle moment int e^{i t} dnu of a circle matrix measure
Eigen::MatrixXcd matrix_moment1_circle(const MatrixMeasure& nu);

// K(sigma 1 | nu) = -int log det h dsigma with h the density of nu with
// respect to the quasi-scalar reference sigma.
double matrix_kl(const MeasureLine& sigma, const MatrixMeasure& nu);
double matrix_kl_circle(const MeasureCircle& sigma, const MatrixMeasure& nu);

// Spiked-semicircle matrix law: a.c. part
// sqrt((4-x^2)_+)/(2 pi) (Theta^2 + 1 - x Theta)^{-1} plus rank-one atoms
// (1 - theta_i^{-2}) at theta_i + 1/theta_i for |theta_i| > 1. Atoms of
// coinciding eigenvalues are merged.
MatrixMeasure spiked_sc_matrix(const Eigen::MatrixXcd& Theta);

// Matrix Hermite rate: measure form K - Tr(Theta m_1) + Tr(Theta Theta*)/2
// + outliers (each atom weighted by the rank of its mass matrix), and the
// block-coefficient form.
double rate_matrix_hermite(const MatrixMeasure& nu,
                           const Eigen::MatrixXcd& Theta);
double rate_matrix_hermite(const BlockJacobi& J, const Eigen::MatrixXcd& Theta);

// alpha_k -> Lambda^* alpha_k for unitary Lambda.
std::vector<Eigen::MatrixXcd> matrix_aleksandrov(
    std::span<const Eigen::MatrixXcd> alphas, const Eigen::MatrixXcd& Lambda);

// T_g(alpha) = -log det(1 - alpha alpha^dag) - g Tr(alpha alpha^dag);
// +infinity once the spectral radius of alpha alpha^dag reaches one.
double t_g(const Eigen::MatrixXcd& alpha, double g);

// Matrix Gross-Witten rate K(GW_g 1 | nu) - g Re Tr(m_1 (Lambda^* - 1)).
double rate_matrix_gw(const MatrixMeasure& nu, double g,
                      const Eigen::MatrixXcd& Lambda);

// The rotated quasi-scalar Gross-Witten measure (the rate minimizer):
// eigen-channels of Lambda carry scalar Aleksandrov rotations of GW_g.
MatrixMeasure gw_matrix_aleksandrov(double g, const Eigen::MatrixXcd& Lambda);

}  // namespace sumrule

#endif
