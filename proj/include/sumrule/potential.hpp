#ifndef SUMRULE_POTENTIAL_HPP
#define SUMRULE_POTENTIAL_HPP

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sumrule/measures.hpp"

namespace sumrule {

// One monomial of Q_V: coeff * theta^j * prod_i m_{js[i]}, where
// m_j = (M^j)_{11}. The multiset `moments` is kept sorted.
struct QvTerm {
  double coeff;
  int theta_pow;
  std::vector<int> moments;
};

class MomentPolynomial {
public:
  explicit MomentPolynomial(std::vector<QvTerm> terms);

  const std::vector<QvTerm>& terms() const { return terms_; }
  int max_moment_order() const;

  // evaluate with m[j-1] = m_j
  double eval(double theta, std::span<const double> m) const;
  std::string format() const;  // e.g. "theta^2 - 2 theta m1"

  MomentPolynomial operator+(const MomentPolynomial& other) const;

private:
  std::vector<QvTerm> terms_;  // canonical order, nonzero coefficients
};

// Expansion of Tr V(M - theta pi) - Tr V(M) as a polynomial in theta and
// the moments (M^j)_{11}, by noncommutative word reduction with the
// projection and cyclic-trace rules. v[r] is the coefficient of x^r;
// degree is capped at 12 (2^r words per monomial).
MomentPolynomial qv_reduce(std::span<const double> v);

struct QvCheckResult {
  double lhs;  // Tr V(M - theta pi) - Tr V(M), direct matrix evaluation
  double rhs;  // Q_V(theta, (M)_11, ..., (M^{2d-1})_11)
  double diff;
};

QvCheckResult qv_check(const MomentPolynomial& Q, std::span<const double> v,
                       const Eigen::MatrixXcd& M, double theta);

// Random Hermitian matrix with entries of unit scale (for check drivers).
Eigen::MatrixXcd random_hermitian(int size, std::uint64_t seed);

// Rate of the rank-one-perturbed general-potential model, up to its
// additive normalization: J(mu) = K(mu_V | mu) + Q(theta, m_1(mu), ...) +
// sum of Hermite-type outlier terms relative to the support of mu_V. The
// normalization inf J is not computed here; when supplied, `value` is
// reported relative to it.
struct GeneralRate {
  double value;
  std::optional<double> normalization;
};

GeneralRate rate_general(const MeasureLine& mu, const MeasureLine& mu_V,
                         const MomentPolynomial& Q, double theta,
                         std::optional<double> inf_norm = std::nullopt);

}  // namespace sumrule

#endif
