#ifndef SUMRULE_LAWS_HPP
#define SUMRULE_LAWS_HPP

#include <string>
#include <vector>

#include "sumrule/measures.hpp"
#include "sumrule/oprl.hpp"

namespace sumrule {

// Equilibrium laws
MeasureLine semicircle();                  // sqrt(4-x^2)/(2 pi) on [-2,2]
MeasureLine marchenko_pastur(double tau);  // tau in (0,1]
MeasureCircle lebesgue_circle();           // lambda_0
MeasureCircle gross_witten(double g);      // (1 + g cos t) dlambda_0, |g| <= 1

// Limit laws of the rank-one perturbed models
MeasureLine spiked_semicircle(double theta);
MeasureLine spiked_mp(double tau, double theta);  // tau < 1; theta = 1 -> MP
MeasureCircle spiked_gw(double g, double phi);

// Free Meixner family mu_{b,c} (mean 0, variance 1), c > -1, plus the
// variant transported to support [-2,2].
MeasureLine meixner(double b, double c);
MeasureLine meixner_normalized(double b, double c);

std::string meixner_classify(double b, double c);
std::vector<Atom> meixner_atoms(double b, double c);

// (0, b, b, ...; 1, sqrt(1+c), ...) and its normalized variant
// (-b/sqrt(1+c); 1/sqrt(1+c), 1, 1, ...).
JacobiCoeffs meixner_jacobi(double b, double c);
JacobiCoeffs meixner_jacobi_normalized(double b, double c);

// Tagged law description, the CLI-facing entry point.
struct LawSpec {
  enum class Tag {
    SC, MP, GW, SpikedSC, SpikedMP, SpikedGW, Meixner, MeixnerNormalized
  };
  Tag tag;
  double theta = 0.0, tau = 0.5, g = 0.0, phi = 0.0, b = 0.0, c = 0.0;

  bool on_circle() const;
  MeasureLine build_line() const;
  MeasureCircle build_circle() const;
};

}  // namespace sumrule

#endif
