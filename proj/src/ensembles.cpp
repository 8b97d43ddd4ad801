#include "sumrule/ensembles.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "sumrule/errors.hpp"

namespace sumrule {

namespace {

using cplx = std::complex<double>;

// Re Tr C(alpha) restricted to the terms touching coordinate k; the CMV
// diagonal is conj(a_0), -conj(a_j) a_{j-1}, so a single-coordinate move
// only changes two terms.
double local_trace(const std::vector<cplx>& a, int k, cplx value) {
  double s = 0.0;
  if (k == 0)
    s += value.real();
  else
    s -= (std::conj(value) * a[k - 1]).real();
  if (k + 1 < static_cast<int>(a.size()))
    s -= (std::conj(a[k + 1]) * value).real();
  return s;
}

}  // namespace

JacobiCoeffs SpikedLaguerreSample::jacobi() const {
  std::vector<double> b(n), a(n - 1);
  for (int k = 0; k < n; ++k) {
    b[k] = diag[k] * diag[k];
    if (k > 0) b[k] += sub[k - 1] * sub[k - 1];
    if (k < n - 1) a[k] = diag[k] * sub[k];
  }
  return JacobiCoeffs(std::move(b), std::move(a));
}

SpikedHermiteSample sample_spiked_gue(int n, double theta, Rng& rng) {
  if (n < 2) throw domain_error("sample_spiked_gue: n must be >= 2");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> b(n), a(n - 1);
  b[0] = theta + scale * rng.normal();
  for (int k = 1; k < n; ++k) b[k] = scale * rng.normal();
  for (int k = 1; k < n; ++k)
    a[k - 1] = rng.chi(2.0 * (n - k)) / std::sqrt(2.0 * n);
  return {JacobiCoeffs(std::move(b), std::move(a)), n, theta};
}

SpikedLaguerreSample sample_spiked_lue(int n, int N, double theta, Rng& rng) {
  if (n < 2) throw domain_error("sample_spiked_lue: n must be >= 2");
  if (n > N) throw domain_error("sample_spiked_lue: requires n <= N");
  if (!(theta > 0.0)) throw domain_error("sample_spiked_lue: theta <= 0");
  const double scale = 1.0 / std::sqrt(2.0 * N);
  SpikedLaguerreSample s;
  s.n = n;
  s.N = N;
  s.theta = theta;
  s.diag.resize(n);
  s.sub.resize(n - 1);
  for (int k = 1; k <= n; ++k)
    s.diag[k - 1] = rng.chi(2.0 * (N - k + 1)) * scale;
  s.diag[0] *= std::sqrt(theta);  // z_1' = theta z_1
  for (int k = 1; k <= n - 1; ++k)
    s.sub[k - 1] = rng.chi(2.0 * (n - k)) * scale;
  return s;
}

VerblunskyCoeffs sample_cue_verblunsky(int n, Rng& rng) {
  if (n < 1) throw domain_error("sample_cue_verblunsky: n must be >= 1");
  std::vector<cplx> a(n);
  for (int k = 0; k < n - 1; ++k) a[k] = rng.disk_beta(n - k - 1);
  a[n - 1] = rng.unit_circle();
  return VerblunskyCoeffs(std::move(a), true);
}

GrossWittenSample sample_gw_verblunsky(int n, double g, Rng& rng, int sweeps,
                                       int burnin) {
  if (std::abs(g) > 1.0) throw domain_error("sample_gw_verblunsky: |g| > 1");
  if (sweeps < 1) throw domain_error("sample_gw_verblunsky: sweeps < 1");
  if (g == 0.0)  // exact reduction, same rng stream as the CUE sampler
    return {sample_cue_verblunsky(n, rng), 0.0, n, {1.0, sweeps, false}};

  std::vector<cplx> a = sample_cue_verblunsky(n, rng).values();
  long accepted = 0, proposed = 0;
  const int total_sweeps = burnin + sweeps;
  for (int sweep = 0; sweep < total_sweeps; ++sweep) {
    // Even sweeps redraw a coordinate from the CUE base (the acceptance
    // ratio is the tilt alone); odd sweeps take local Gaussian steps, which
    // mix the low coordinates whose base marginal is too concentrated for
    // independence proposals to reach the tilted bulk.
    const bool base_sweep = (sweep % 2 == 0);
    for (int k = 0; k < n; ++k) {
      cplx prop;
      double log_base_ratio = 0.0;  // log base(prop)/base(cur) for RW moves
      if (base_sweep) {
        prop = (k == n - 1) ? rng.unit_circle() : rng.disk_beta(n - k - 1);
      } else {
        const double sigma =
            std::clamp(1.0 / std::sqrt(static_cast<double>(n - k)), 0.05, 0.4);
        if (k == n - 1) {
          const double t = std::arg(a[k]) + sigma * rng.normal();
          prop = cplx{std::cos(t), std::sin(t)};  // base uniform: ratio 1
        } else {
          prop = a[k] + sigma * cplx{rng.normal(), rng.normal()};
          if (std::norm(prop) >= 1.0) {
            ++proposed;
            continue;  // outside the disk: density zero, reject
          }
          const int m = n - k - 2;  // base density (1-|a|^2)^m
          log_base_ratio =
              m * (std::log1p(-std::norm(prop)) - std::log1p(-std::norm(a[k])));
        }
      }
      const double dS = local_trace(a, k, prop) - local_trace(a, k, a[k]);
      const double log_ratio = n * g * dS + log_base_ratio;
      ++proposed;
      if (log_ratio >= 0.0 || std::log(rng.uniform() + 1e-300) < log_ratio) {
        a[k] = prop;
        ++accepted;
      }
    }
  }
  McmcStats stats{static_cast<double>(accepted) / proposed, total_sweeps,
                  accepted < proposed / 100};
  return {VerblunskyCoeffs(std::move(a), true), g, n, stats};
}

QuadratureMeasure spectral_measure(const SpikedHermiteSample& s) {
  return golub_welsch(s.jacobi, s.n);
}

QuadratureMeasure spectral_measure(const SpikedLaguerreSample& s) {
  return golub_welsch(s.jacobi(), s.n);
}

QuadratureMeasure spectral_measure_verblunsky(const VerblunskyCoeffs& alpha) {
  const Eigen::MatrixXcd C = cmv_build(alpha);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C);
  if (es.info() != Eigen::Success)
    throw numeric_error("spectral_measure: unitary eigensolver failed");
  const int n = alpha.size();
  std::vector<double> angles(n), weights(n);
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    angles[k] = std::arg(es.eigenvalues()(k));
    const Eigen::VectorXcd v = es.eigenvectors().col(k);
    weights[k] = std::norm(v(0)) / v.squaredNorm();
    total += weights[k];
  }
  // eigenvectors of a unitary matrix are orthogonal; renormalize the
  // residual machine-precision defect
  for (double& w : weights) w /= total;
  return QuadratureMeasure(std::move(angles), std::move(weights), true);
}

QuadratureMeasure spectral_measure(const GrossWittenSample& s) {
  return spectral_measure_verblunsky(s.alpha);
}

GrossWittenSample unitary_rank_one_pushforward(const GrossWittenSample& s,
                                               double phi) {
  return {aleksandrov(s.alpha, phi), s.g, s.n, s.mcmc};
}

}  // namespace sumrule
