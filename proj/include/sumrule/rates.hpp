#ifndef SUMRULE_RATES_HPP
#define SUMRULE_RATES_HPP

#include <utility>
#include <vector>

#include "sumrule/measures.hpp"
#include "sumrule/oprl.hpp"
#include "sumrule/opuc.hpp"

namespace sumrule {

// G(x) = x - 1 - log x; +infinity for x <= 0.
double g_func(double x);

// Effective potential of the Hermite outlier: int_2^{|x|} sqrt(t^2-4) dt,
// in closed form; +infinity inside (-2, 2).
double f_hermite(double x);

// Laguerre effective potentials F_L^+/F_L^- by adaptive quadrature;
// +infinity on [tau^-, tau^+] and (for the minus branch) at x <= 0.
double f_laguerre_plus(double x, double tau);
double f_laguerre_minus(double x, double tau);

// Reversed relative entropy K(ref | mu) = int log(dref/dmu_ac) dref; the
// reference is the integrating measure. +infinity when the a.c. part of mu
// does not dominate ref on its support.
double reversed_kl_line(const MeasureLine& ref, const MeasureLine& mu);
double kl_circle(const MeasureCircle& ref, const MeasureCircle& mu);

// K(GW_g | lambda_0) = 1 - sqrt(1-g^2) + log((1+sqrt(1-g^2))/2).
double kl_gw_lambda0(double g);

// Measure-side rate functions. +infinity off the band-plus-outliers class.
double rate_meas_hermite(const MeasureLine& mu);
double rate_meas_laguerre(const MeasureLine& mu, double tau);
double rate_meas_gw(const MeasureCircle& mu, double g);

// Coefficient-side rate functions. Entries beyond the stored prefix are
// treated as sitting at the respective minimizer; a constant tail must
// coincide with the minimizing tail for a finite value.
double rate_coeff_hermite(const JacobiCoeffs& J);
double rate_coeff_laguerre(const ZCoeffs& Z, double tau);
double rate_coeff_gw(const VerblunskyCoeffs& alpha, double g);

// Rate functions of the spiked models.
double rate_spiked_hermite(const MeasureLine& mu, double theta);
double rate_spiked_laguerre(const MeasureLine& mu, double tau, double theta);
double rate_spiked_gw(const MeasureCircle& mu, double g, double phi);

// Two-sided audit of a sum rule.
struct RateReport {
  double measure_side = 0.0;
  double coeff_side = 0.0;
  double kl_term = 0.0;
  std::vector<std::pair<double, double>> outlier_terms;  // (location, F value)
  double discrepancy = 0.0;  // |measure - coeff| when both finite
};

RateReport audit_hermite(const MeasureLine& mu, const JacobiCoeffs& J);
RateReport audit_laguerre(const MeasureLine& mu, const ZCoeffs& Z, double tau);
RateReport audit_szego(const MeasureCircle& mu, const VerblunskyCoeffs& alpha);
RateReport audit_gw(const MeasureCircle& mu, const VerblunskyCoeffs& alpha,
                    double g);

// Named audit cases used by the CLI and the acceptance suite.
RateReport audit_hermite_spiked(double theta);
RateReport audit_laguerre_spiked(double tau, double theta);
RateReport audit_meixner(double b, double c);
RateReport audit_szego_gw(double g, int terms = 201);
RateReport audit_gw_lambda0(double g);

}  // namespace sumrule

#endif
