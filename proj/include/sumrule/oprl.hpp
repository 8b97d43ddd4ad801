#ifndef SUMRULE_OPRL_HPP
#define SUMRULE_OPRL_HPP

#include <optional>
#include <vector>

#include "sumrule/measures.hpp"

namespace sumrule {

struct JacobiTail {
  double b;
  double a;
};

// Recursion coefficients (b_1, b_2, ...; a_1, a_2, ...) of the orthonormal
// polynomials of a measure on the line, stored as a finite prefix plus an
// optional constant tail. Indices are 1-based to match the usual notation.
class JacobiCoeffs {
public:
  JacobiCoeffs(std::vector<double> b, std::vector<double> a,
               std::optional<JacobiTail> tail = std::nullopt);

  int prefix_size() const { return static_cast<int>(b_.size()); }
  bool has_tail() const { return tail_.has_value(); }
  const JacobiTail& tail() const { return *tail_; }

  // k = 1, 2, ...; reads into the tail when present
  double b(int k) const;
  double a(int k) const;
  int max_index() const;  // largest addressable k (INT_MAX with a tail)

  const std::vector<double>& b_prefix() const { return b_; }
  const std::vector<double>& a_prefix() const { return a_; }

private:
  std::vector<double> b_, a_;
  std::optional<JacobiTail> tail_;
};

// z-parameters of a measure on [0, inf): b_k = z_{2k-2} + z_{2k-1},
// a_k^2 = z_{2k-1} z_{2k} with z_0 = 0. Stored from z_1 on, with an
// optional 2-periodic tail (z_odd, z_even).
struct ZCoeffs {
  std::vector<double> z;  // z[0] = z_1
  std::optional<std::pair<double, double>> tail;  // (z_odd, z_even)

  double at(int k) const;  // k >= 1
};

// Stieltjes/Lanczos with full reorthogonalization: first `depth` recursion
// coefficients of a finitely supported measure.
JacobiCoeffs lanczos(const QuadratureMeasure& mu, int depth);

// Spectral measure of the n-th truncation of the Jacobi matrix: eigenvalues
// via implicit-shift QL with Wilkinson shift, weights as squared first
// eigenvector components.
QuadratureMeasure golub_welsch(const JacobiCoeffs& J, int n);

ZCoeffs z_decompose(const JacobiCoeffs& J);
JacobiCoeffs z_compose(const ZCoeffs& Z);

// Action of the affine pushforward T_{r,s} on coefficients:
// b~_k = (b_k - s)/r, a~_k = a_k/|r|.
JacobiCoeffs jacobi_affine(const JacobiCoeffs& J, double r, double s);

// m_k = (J^k)_{11} through banded matrix powers on e_1; moments of order
// <= K only involve the first K+1 coefficients.
std::vector<double> jacobi_moments(const JacobiCoeffs& J, int K);

}  // namespace sumrule

#endif
