#ifndef SUMRULE_ENSEMBLES_HPP
#define SUMRULE_ENSEMBLES_HPP

#include "sumrule/measures.hpp"
#include "sumrule/oprl.hpp"
#include "sumrule/opuc.hpp"
#include "sumrule/rng.hpp"

namespace sumrule {

struct SpikedHermiteSample {
  JacobiCoeffs jacobi;
  int n;
  double theta;
};

struct SpikedLaguerreSample {
  std::vector<double> diag;  // chi_{2(N-k+1)} / sqrt(2N), spike on diag[0]
  std::vector<double> sub;   // chi_{2(n-k)} / sqrt(2N)
  int n, N;
  double theta;

  JacobiCoeffs jacobi() const;  // J = B B^T
};

struct McmcStats {
  double acceptance = 1.0;
  int sweeps = 0;
  bool mixing_warning = false;  // acceptance rate below one percent
};

struct GrossWittenSample {
  VerblunskyCoeffs alpha;
  double g;
  int n;
  McmcStats mcmc;
};

// Tridiagonal coefficient model of the rank-one additive perturbation:
// b_1 ~ N(theta, 1/n), b_k ~ N(0, 1/n), a_k = chi_{2(n-k)} / sqrt(2n).
SpikedHermiteSample sample_spiked_gue(int n, double theta, Rng& rng);

// Bidiagonal coefficient model of the multiplicative spike: the first
// diagonal entry carries sqrt(theta), so z_1 -> theta z_1 in J = B B^T.
SpikedLaguerreSample sample_spiked_lue(int n, int N, double theta, Rng& rng);

// Haar-unitary coefficient law: |alpha_k|^2 ~ Beta(1, n-k-1) with uniform
// phase, alpha_{n-1} uniform on the circle.
VerblunskyCoeffs sample_cue_verblunsky(int n, Rng& rng);

// Metropolis over the CUE coefficient base with log-weight
// n g Re Tr C(alpha); g = 0 delegates to the CUE sampler bit-for-bit.
GrossWittenSample sample_gw_verblunsky(int n, double g, Rng& rng,
                                       int sweeps = 1, int burnin = 100);

QuadratureMeasure spectral_measure(const SpikedHermiteSample& s);
QuadratureMeasure spectral_measure(const SpikedLaguerreSample& s);
QuadratureMeasure spectral_measure(const GrossWittenSample& s);

// Spectral measure of a finite Verblunsky coefficient list (angles/weights).
QuadratureMeasure spectral_measure_verblunsky(const VerblunskyCoeffs& alpha);

// Coefficient rotation alpha_k -> e^{-i phi} alpha_k; rotates m_1 by e^{i phi}.
GrossWittenSample unitary_rank_one_pushforward(const GrossWittenSample& s,
                                               double phi);

}  // namespace sumrule

#endif
