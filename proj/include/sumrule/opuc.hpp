#ifndef SUMRULE_OPUC_HPP
#define SUMRULE_OPUC_HPP

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

#include "sumrule/measures.hpp"

namespace sumrule {

// Verblunsky coefficients of a measure on the circle. For a measure with
// finite support the last entry has modulus one and all earlier ones lie
// strictly inside the disk; `finite()` records that case.
class VerblunskyCoeffs {
public:
  explicit VerblunskyCoeffs(std::vector<std::complex<double>> alpha,
                            bool finite = false);

  int size() const { return static_cast<int>(alpha_.size()); }
  bool finite() const { return finite_; }
  std::complex<double> operator[](int k) const { return alpha_[k]; }
  const std::vector<std::complex<double>>& values() const { return alpha_; }

private:
  std::vector<std::complex<double>> alpha_;
  bool finite_;
};

// Schur algorithm on truncated power series: alpha_0..alpha_{K-1} from the
// trigonometric moments c_1..c_K of a probability measure. Terminates early
// with the finite flag when a modulus-one parameter appears.
VerblunskyCoeffs schur_verblunsky(std::span<const std::complex<double>> c);

// Closed-form Gross-Witten coefficients, |g| <= 1.
std::complex<double> gw_alpha(double g, int n);
VerblunskyCoeffs gw_verblunsky(double g, int terms);

// CMV matrix (LM factorized form, stored dense, n <= 2048). Requires
// moduli < 1 except the last entry which must have modulus one.
Eigen::MatrixXcd cmv_build(const VerblunskyCoeffs& alpha);

// Trace of the CMV matrix from its diagonal:
// conj(a_0) - sum_k conj(a_k) a_{k-1}. Valid for any coefficient list.
std::complex<double> cmv_trace(std::span<const std::complex<double>> alpha);

// c_k = <e_1, C^k e_1>, exact for k <= K given at least K coefficients.
std::vector<std::complex<double>> verblunsky_moments(const VerblunskyCoeffs& a,
                                                     int K);

// F_mu(z) = int (e^{it} + z)/(e^{it} - z) dmu(t), |z| != 1.
std::complex<double> caratheodory(const MeasureCircle& mu,
                                  std::complex<double> z);

// w(theta) = lim_{r->1} Re F(r e^{i theta}); throws numeric_error tagged
// "singular point" when the limit diverges (mass location).
double density_recover(
    const std::function<std::complex<double>(std::complex<double>)>& F,
    double theta);

// Aleksandrov rotation alpha_k -> e^{-i phi} alpha_k, and its measure-level
// form through the Caratheodory transform; rotates m_1 by e^{+i phi}.
VerblunskyCoeffs aleksandrov(const VerblunskyCoeffs& a, double phi);
MeasureCircle aleksandrov_measure(const MeasureCircle& mu, double phi);

}  // namespace sumrule

#endif
