#include "sumrule/opuc.hpp"

#include <cmath>

#include "sumrule/errors.hpp"

namespace sumrule {

namespace {

using cplx = std::complex<double>;
using lcplx = std::complex<long double>;
constexpr double kUnimodularTol = 1e-10;  // finite-measure detection
constexpr int kCmvCap = 2048;

// quotient of truncated power series to `len` output coefficients
std::vector<lcplx> series_div(const std::vector<lcplx>& num,
                              const std::vector<lcplx>& den, int len) {
  std::vector<lcplx> out(len, 0.0L);
  std::vector<lcplx> rem(num);
  rem.resize(std::max<size_t>(rem.size(), len), 0.0L);
  for (int i = 0; i < len; ++i) {
    const lcplx q = rem[i] / den[0];
    out[i] = q;
    const int jmax = std::min<int>(len - i, static_cast<int>(den.size()));
    for (int j = 1; j < jmax; ++j) rem[i + j] -= q * den[j];
  }
  return out;
}

}  // namespace

VerblunskyCoeffs::VerblunskyCoeffs(std::vector<cplx> alpha, bool finite)
    : alpha_(std::move(alpha)), finite_(finite) {
  if (alpha_.empty()) throw validation_error("VerblunskyCoeffs: empty list");
  const int last = size() - 1;
  for (int k = 0; k < size(); ++k) {
    const double m = std::abs(alpha_[k]);
    if (k < last || !finite_) {
      if (m >= 1.0)
        throw validation_error("VerblunskyCoeffs: |alpha_" + std::to_string(k) +
                               "| >= 1");
    } else if (std::abs(m - 1.0) > 1e-12) {
      throw validation_error("VerblunskyCoeffs: final modulus != 1");
    }
  }
}

VerblunskyCoeffs schur_verblunsky(std::span<const cplx> c) {
  const int K = static_cast<int>(c.size());
  if (K < 1) throw domain_error("schur_verblunsky: need at least one moment");
  // F(z) = 1 + 2 sum conj(c_k) z^k, f_0 = (F - 1)/(z (F + 1)); the series
  // arithmetic runs in extended precision since each Schur step divides by
  // 1 - |gamma|^2-sized quantities
  std::vector<lcplx> num(K), den(K + 1);
  den[0] = 2.0L;
  for (int k = 1; k <= K; ++k) {
    num[k - 1] = 2.0L * lcplx(c[k - 1].real(), -c[k - 1].imag());
    den[k] = num[k - 1];
  }
  std::vector<lcplx> f = series_div(num, den, K);

  std::vector<cplx> alphas;
  bool finite = false;
  for (int step = 0; step < K; ++step) {
    const lcplx gamma = f[0];
    const double m = static_cast<double>(std::abs(gamma));
    if (m > 1.0 + kUnimodularTol)
      throw domain_error("schur_verblunsky: not a moment sequence (|gamma_" +
                         std::to_string(step) + "| = " + std::to_string(m) + ")");
    if (m >= 1.0 - kUnimodularTol) {
      alphas.push_back(cplx(static_cast<double>(gamma.real() / m),
                            static_cast<double>(gamma.imag() / m)));
      finite = true;  // modulus-one parameter: finitely supported measure
      break;
    }
    alphas.push_back(cplx(static_cast<double>(gamma.real()),
                          static_cast<double>(gamma.imag())));
    if (step == K - 1) break;
    // f_{n+1} = z^{-1} (f_n - gamma) / (1 - conj(gamma) f_n)
    const int len = static_cast<int>(f.size()) - 1;
    std::vector<lcplx> shifted(f.begin() + 1, f.end());
    std::vector<lcplx> bottom(f.size());
    bottom[0] = 1.0L - std::conj(gamma) * f[0];
    for (size_t i = 1; i < f.size(); ++i) bottom[i] = -std::conj(gamma) * f[i];
    f = series_div(shifted, bottom, len);
  }
  return VerblunskyCoeffs(std::move(alphas), finite);
}

std::complex<double> gw_alpha(double g, int n) {
  if (std::abs(g) > 1.0)
    throw domain_error("gw_alpha: |g| > 1 (gapped phase not supported)");
  if (n < 0) throw domain_error("gw_alpha: n must be >= 0");
  if (g == 0.0) return 0.0;
  if (std::abs(g) == 1.0) {
    // g (-g)^n / (n + 2): the g -> +-1 limit of the generic branch, and the
    // value the Schur algorithm produces from the moments; consistent with
    // alpha_0 = g/2 at n = 0
    const double numer = (n % 2 == 0) ? g : -1.0;
    return numer / (n + 2.0);
  }
  // roots of x + 1/x = -2/g; |x_minus| > 1 > |x_plus|, x_plus x_minus = 1
  const double inv = -1.0 / g;
  const double d = std::sqrt(1.0 / (g * g) - 1.0);
  const double xp = inv + (g > 0 ? d : -d);  // smaller modulus root
  const double xm = inv - (g > 0 ? d : -d);
  // scale by xm^{-(n+2)} so large n underflows to zero instead of
  // overflowing: alpha_n = -(xp - xm) xm^{-(n+2)} / (q^{n+2} - 1), q = xp/xm
  const double q = xp / xm, ixm = 1.0 / xm;
  double qn = 1.0, ixmn = 1.0;
  for (int i = 0; i < n + 2; ++i) {
    qn *= q;
    ixmn *= ixm;
  }
  return -(xp - xm) * ixmn / (qn - 1.0);
}

VerblunskyCoeffs gw_verblunsky(double g, int terms) {
  if (terms < 1) throw domain_error("gw_verblunsky: need at least one term");
  std::vector<cplx> a(terms);
  for (int n = 0; n < terms; ++n) a[n] = gw_alpha(g, n);
  return VerblunskyCoeffs(std::move(a));
}

Eigen::MatrixXcd cmv_build(const VerblunskyCoeffs& alpha) {
  const int n = alpha.size();
  if (n > kCmvCap) throw domain_error("cmv_build: size above dense cap 2048");
  if (!alpha.finite())
    throw domain_error("cmv_build: last coefficient must have modulus one");
  auto theta_block = [](cplx a) {
    const double rho = std::sqrt(std::max(0.0, 1.0 - std::norm(a)));
    Eigen::Matrix2cd t;
    t << std::conj(a), rho, rho, -a;
    return t;
  };
  Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; i += 2) {
    if (i + 1 < n)
      L.block<2, 2>(i, i) = theta_block(alpha[i]);
    else
      L(i, i) = std::conj(alpha[i]);
  }
  M(0, 0) = 1.0;
  for (int i = 1; i < n; i += 2) {
    if (i + 1 < n)
      M.block<2, 2>(i, i) = theta_block(alpha[i]);
    else
      M(i, i) = std::conj(alpha[i]);
  }
  return L * M;
}

std::complex<double> cmv_trace(std::span<const cplx> alpha) {
  if (alpha.empty()) return 0.0;
  cplx t = std::conj(alpha[0]);
  for (size_t k = 1; k < alpha.size(); ++k)
    t -= std::conj(alpha[k]) * alpha[k - 1];
  return t;
}

std::vector<std::complex<double>> verblunsky_moments(const VerblunskyCoeffs& a,
                                                     int K) {
  if (K < 1) throw domain_error("verblunsky_moments: K must be >= 1");
  if (!a.finite() && a.size() < K)
    throw domain_error("verblunsky_moments: need at least K coefficients");
  // Terminate with a modulus-one coefficient: the finite measure shares the
  // first K moments with any measure extending the given prefix.
  std::vector<cplx> coeff(a.values().begin(),
                          a.values().begin() + std::min(a.size(), K + 1));
  if (std::abs(std::abs(coeff.back()) - 1.0) > 1e-12) coeff.push_back(1.0);
  VerblunskyCoeffs fin(std::move(coeff), true);
  Eigen::MatrixXcd C = cmv_build(fin);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(C.rows());
  v(0) = 1.0;
  std::vector<cplx> out;
  out.reserve(K);
  for (int k = 0; k < K; ++k) {
    v = C * v;
    out.push_back(v(0));
  }
  return out;
}

std::complex<double> caratheodory(const MeasureCircle& mu, cplx z) {
  if (std::abs(std::abs(z) - 1.0) < 1e-14)
    throw domain_error("caratheodory: |z| = 1");
  auto re_part = [&mu, z](bool imag) {
    return mu.integrate([z, imag](double t) {
      const cplx e{std::cos(t), std::sin(t)};
      const cplx v = (e + z) / (e - z);
      return imag ? v.imag() : v.real();
    });
  };
  return {re_part(false), re_part(true)};
}

double density_recover(
    const std::function<cplx(cplx)>& F, double theta) {
  const cplx e{std::cos(theta), std::sin(theta)};
  double prev = 0.0;
  for (int j = 4; j <= 48; ++j) {
    const double r = 1.0 - std::pow(2.0, -j);
    const double v = F(r * e).real();
    if (v > 1e10)
      throw numeric_error("density_recover: singular point at theta = " +
                          std::to_string(theta));
    if (j > 4 && std::abs(v - prev) < 1e-11 * (1.0 + std::abs(v))) return v;
    prev = v;
  }
  return prev;
}

VerblunskyCoeffs aleksandrov(const VerblunskyCoeffs& a, double phi) {
  const cplx rot = std::exp(cplx(0.0, -phi));
  std::vector<cplx> out(a.values());
  for (cplx& v : out) v *= rot;
  return VerblunskyCoeffs(std::move(out), a.finite());
}

MeasureCircle aleksandrov_measure(const MeasureCircle& mu, double phi) {
  if (!mu.atoms().empty())
    throw domain_error("aleksandrov_measure: atomic inputs not supported");
  // F of the rotated measure through the fractional-linear action on F_mu,
  // then the boundary density w~ = w / |cos(phi/2) + i sin(phi/2) F|^2.
  MeasureCircle::Caratheodory base;
  if (mu.has_caratheodory()) {
    base = [mu](cplx z) { return mu.caratheodory_closure(z); };
  } else {
    base = [mu](cplx z) { return caratheodory(mu, z); };
  }
  const cplx e = std::exp(cplx(0.0, -phi));
  MeasureCircle::Caratheodory rotated = [base, e](cplx z) {
    const cplx F0 = base(z);
    return ((1.0 - e) + (1.0 + e) * F0) / ((1.0 + e) + (1.0 - e) * F0);
  };
  const double ch = std::cos(phi / 2.0), sh = std::sin(phi / 2.0);
  auto dens = [mu, base, ch, sh](double t) {
    // boundary value of F_mu: for stored closures this is exact; otherwise
    // approach radially
    cplx Fb;
    if (mu.has_caratheodory()) {
      Fb = mu.caratheodory_closure(cplx{std::cos(t), std::sin(t)});
    } else {
      const double r = 1.0 - 1e-9;
      Fb = base(r * cplx{std::cos(t), std::sin(t)});
    }
    const cplx den = cplx(ch, 0.0) + cplx(0.0, sh) * Fb;
    return mu.density(t) / std::norm(den);
  };
  return MeasureCircle(dens, {}, 2048, rotated);
}

}  // namespace sumrule
