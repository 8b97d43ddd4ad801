#include "sumrule/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sumrule/errors.hpp"
#include "sumrule/laws.hpp"

namespace sumrule {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDensityFloor = 1e-300;  // clip before log, keeps +inf clean
constexpr double kVanishTol = 1e-13;      // dominance test on the grid
constexpr double kBandTol = 1e-9;         // outlier classification
constexpr double kTermFloor = 1e-14;      // coefficient tail cutoff

bool ac_extends_beyond(const MeasureLine& mu, double lo, double hi) {
  auto probe = [&mu](double a, double b) {
    if (!(b > a)) return false;
    for (int i = 0; i < 128; ++i) {
      const double x = a + (b - a) * (i + 0.5) / 128.0;
      if (mu.density(x) > 1e-12) return true;
    }
    return false;
  };
  return probe(mu.lo(), std::min(lo, mu.hi())) ||
         probe(std::max(hi, mu.lo()), mu.hi());
}

struct MeasParts {
  double kl = 0.0;
  std::vector<std::pair<double, double>> outliers;
  bool infinite = false;

  double total() const {
    if (infinite) return kInf;
    double s = kl;
    for (const auto& [e, f] : outliers) s += f;
    return s;
  }
};

double kl_line_impl(const MeasureLine& ref, const MeasureLine& mu) {
  bool infinite = false;
  const double v = ref.integrate_ac([&](double x) {
    const double r = ref.density(x);
    const double m = mu.density(x);
    if (r > kVanishTol && m <= kVanishTol) {
      infinite = true;
      return 0.0;
    }
    return std::log(std::max(r, kDensityFloor) / std::max(m, kDensityFloor));
  });
  return infinite ? kInf : v;
}

MeasParts hermite_parts(const MeasureLine& mu) {
  MeasParts parts;
  if (ac_extends_beyond(mu, -2.0, 2.0)) {
    parts.infinite = true;
    return parts;
  }
  for (const Atom& a : mu.atoms())
    if (std::abs(a.location) > 2.0 + kBandTol)
      parts.outliers.emplace_back(a.location, f_hermite(a.location));
  parts.kl = kl_line_impl(semicircle(), mu);
  parts.infinite = std::isinf(parts.kl);
  return parts;
}

MeasParts laguerre_parts(const MeasureLine& mu, double tau) {
  if (!(tau > 0.0) || tau > 1.0) throw domain_error("tau must lie in (0,1]");
  const double lo = (1.0 - std::sqrt(tau)) * (1.0 - std::sqrt(tau));
  const double hi = (1.0 + std::sqrt(tau)) * (1.0 + std::sqrt(tau));
  MeasParts parts;
  if (ac_extends_beyond(mu, lo, hi)) {
    parts.infinite = true;
    return parts;
  }
  for (const Atom& a : mu.atoms()) {
    if (a.location > hi + kBandTol) {
      parts.outliers.emplace_back(a.location, f_laguerre_plus(a.location, tau));
    } else if (a.location < lo - kBandTol) {
      const double f = f_laguerre_minus(a.location, tau);
      parts.outliers.emplace_back(a.location, f);
      if (std::isinf(f)) parts.infinite = true;
    }
  }
  if (!parts.infinite) {
    parts.kl = kl_line_impl(marchenko_pastur(tau), mu);
    parts.infinite = std::isinf(parts.kl);
  }
  return parts;
}

double kl_circle_impl(const MeasureCircle& ref, const MeasureCircle& mu) {
  if (!ref.atoms().empty())
    throw domain_error("kl_circle: atomic reference measures unsupported");
  bool infinite = false;
  const double v = ref.integrate([&](double t) {
    const double r = ref.density(t);
    const double m = mu.density(t);
    if (r > kVanishTol && m <= kVanishTol) {
      infinite = true;
      return 0.0;
    }
    return std::log(std::max(r, kDensityFloor) / std::max(m, kDensityFloor));
  });
  return infinite ? kInf : v;
}

double finish(RateReport& rep) {
  if (std::isfinite(rep.measure_side) && std::isfinite(rep.coeff_side))
    rep.discrepancy = std::abs(rep.measure_side - rep.coeff_side);
  else if (std::isinf(rep.measure_side) && std::isinf(rep.coeff_side))
    rep.discrepancy = 0.0;
  else
    rep.discrepancy = kInf;
  return rep.discrepancy;
}

}  // namespace

double g_func(double x) {
  if (!(x > 0.0)) return kInf;
  return x - 1.0 - std::log(x);
}

double f_hermite(double x) {
  const double y = std::abs(x);
  if (y < 2.0) return kInf;
  const double s = std::sqrt(y * y - 4.0);
  return 0.5 * y * s - 2.0 * std::log(0.5 * (y + s));
}

double f_laguerre_plus(double x, double tau) {
  if (!(tau > 0.0) || tau > 1.0) throw domain_error("tau must lie in (0,1]");
  const double lo = (1.0 - std::sqrt(tau)) * (1.0 - std::sqrt(tau));
  const double hi = (1.0 + std::sqrt(tau)) * (1.0 + std::sqrt(tau));
  if (x < hi - 1e-12) return kInf;
  if (x <= hi) return 0.0;
  // t = hi + s^2 removes the square-root edge at the lower limit
  const double width = hi - lo;
  auto f = [tau, hi, width](double s) {
    return 2.0 * s * s * std::sqrt(width + s * s) / ((hi + s * s) * tau);
  };
  return adaptive_simpson(f, 0.0, std::sqrt(x - hi), 1e-12);
}

double f_laguerre_minus(double x, double tau) {
  if (!(tau > 0.0) || tau > 1.0) throw domain_error("tau must lie in (0,1]");
  const double lo = (1.0 - std::sqrt(tau)) * (1.0 - std::sqrt(tau));
  const double hi = (1.0 + std::sqrt(tau)) * (1.0 + std::sqrt(tau));
  if (x <= 0.0) return kInf;  // hard edge at the origin
  if (x > lo + 1e-12) return kInf;
  if (x >= lo) return 0.0;
  const double width = hi - lo;
  auto f = [tau, lo, width](double s) {
    return 2.0 * s * s * std::sqrt(width + s * s) / ((lo - s * s) * tau);
  };
  return adaptive_simpson(f, 0.0, std::sqrt(lo - x), 1e-12);
}

double reversed_kl_line(const MeasureLine& ref, const MeasureLine& mu) {
  return kl_line_impl(ref, mu);
}

double kl_circle(const MeasureCircle& ref, const MeasureCircle& mu) {
  return kl_circle_impl(ref, mu);
}

double kl_gw_lambda0(double g) {
  if (std::abs(g) > 1.0) throw domain_error("kl_gw_lambda0: |g| > 1");
  const double s = std::sqrt(1.0 - g * g);
  return 1.0 - s + std::log(0.5 * (1.0 + s));
}

double rate_meas_hermite(const MeasureLine& mu) {
  return hermite_parts(mu).total();
}

double rate_meas_laguerre(const MeasureLine& mu, double tau) {
  return laguerre_parts(mu, tau).total();
}

double rate_meas_gw(const MeasureCircle& mu, double g) {
  return kl_circle_impl(gross_witten(g), mu);
}

double rate_coeff_hermite(const JacobiCoeffs& J) {
  double s = 0.0;
  for (int k = 1; k <= J.prefix_size(); ++k) s += 0.5 * J.b(k) * J.b(k);
  for (size_t k = 0; k < J.a_prefix().size(); ++k) {
    const double a2 = J.a_prefix()[k] * J.a_prefix()[k];
    s += g_func(a2);
  }
  if (J.has_tail()) {
    const double t = 0.5 * J.tail().b * J.tail().b +
                     g_func(J.tail().a * J.tail().a);
    if (!(t <= kTermFloor)) return kInf;  // non-minimizing constant tail
  }
  return s;
}

double rate_coeff_laguerre(const ZCoeffs& Z, double tau) {
  if (!(tau > 0.0) || tau > 1.0) throw domain_error("tau must lie in (0,1]");
  double s = 0.0;
  const int nz = static_cast<int>(Z.z.size());
  for (int k = 1; 2 * k - 1 <= nz; ++k) s += g_func(Z.z[2 * k - 2]) / tau;
  for (int k = 1; 2 * k <= nz; ++k) s += g_func(Z.z[2 * k - 1] / tau);
  if (Z.tail) {
    const double t = g_func(Z.tail->first) / tau + g_func(Z.tail->second / tau);
    if (!(t <= kTermFloor)) return kInf;
  }
  return s;
}

double rate_coeff_gw(const VerblunskyCoeffs& alpha, double g) {
  if (std::abs(g) > 1.0) throw domain_error("rate_coeff_gw: |g| > 1");
  double szego = 0.0;
  for (int k = 0; k < alpha.size(); ++k) {
    const double m2 = std::norm(alpha[k]);
    if (m2 >= 1.0) return kInf;
    szego -= std::log1p(-m2);
  }
  const double coupling = cmv_trace(alpha.values()).real();
  return kl_gw_lambda0(g) - g * coupling + szego;
}

double rate_spiked_hermite(const MeasureLine& mu, double theta) {
  const MeasParts parts = hermite_parts(mu);
  if (parts.infinite) return kInf;
  const double m1 = mu.moments(1)[0];
  return parts.total() - theta * m1 + 0.5 * theta * theta;
}

double rate_spiked_laguerre(const MeasureLine& mu, double tau, double theta) {
  if (!(theta > 0.0)) throw domain_error("rate_spiked_laguerre: theta <= 0");
  const MeasParts parts = laguerre_parts(mu, tau);
  if (parts.infinite) return kInf;
  const double m1 = mu.moments(1)[0];
  return parts.total() + (1.0 / theta - 1.0) / tau * m1 + std::log(theta) / tau;
}

double rate_spiked_gw(const MeasureCircle& mu, double g, double phi) {
  const double kl = kl_circle_impl(gross_witten(g), mu);
  if (std::isinf(kl)) return kInf;
  const std::complex<double> m1 = mu.moment1();
  const std::complex<double> e = std::exp(std::complex<double>(0.0, -phi));
  return kl - g * ((e - 1.0) * m1).real();
}

RateReport audit_hermite(const MeasureLine& mu, const JacobiCoeffs& J) {
  RateReport rep;
  const MeasParts parts = hermite_parts(mu);
  rep.kl_term = parts.kl;
  rep.outlier_terms = parts.outliers;
  rep.measure_side = parts.total();
  rep.coeff_side = rate_coeff_hermite(J);
  finish(rep);
  return rep;
}

RateReport audit_laguerre(const MeasureLine& mu, const ZCoeffs& Z, double tau) {
  RateReport rep;
  const MeasParts parts = laguerre_parts(mu, tau);
  rep.kl_term = parts.kl;
  rep.outlier_terms = parts.outliers;
  rep.measure_side = parts.total();
  rep.coeff_side = rate_coeff_laguerre(Z, tau);
  finish(rep);
  return rep;
}

RateReport audit_szego(const MeasureCircle& mu, const VerblunskyCoeffs& alpha) {
  RateReport rep;
  rep.kl_term = kl_circle_impl(lebesgue_circle(), mu);
  rep.measure_side = rep.kl_term;
  double s = 0.0;
  for (int k = 0; k < alpha.size(); ++k) {
    const double m2 = std::norm(alpha[k]);
    if (m2 >= 1.0) {
      s = kInf;
      break;
    }
    s -= std::log1p(-m2);
  }
  rep.coeff_side = s;
  finish(rep);
  return rep;
}

RateReport audit_gw(const MeasureCircle& mu, const VerblunskyCoeffs& alpha,
                    double g) {
  RateReport rep;
  rep.kl_term = kl_circle_impl(gross_witten(g), mu);
  rep.measure_side = rep.kl_term;
  rep.coeff_side = rate_coeff_gw(alpha, g);
  finish(rep);
  return rep;
}

RateReport audit_hermite_spiked(double theta) {
  const MeasureLine mu = spiked_semicircle(theta);
  const JacobiCoeffs J({theta}, {}, JacobiTail{0.0, 1.0});
  return audit_hermite(mu, J);
}

RateReport audit_laguerre_spiked(double tau, double theta) {
  const MeasureLine mu = spiked_mp(tau, theta);
  ZCoeffs Z;
  Z.z = {theta, tau};
  Z.tail = std::make_pair(1.0, tau);
  return audit_laguerre(mu, Z, tau);
}

RateReport audit_meixner(double b, double c) {
  const MeasureLine mu = meixner_normalized(b, c);
  const JacobiCoeffs J = meixner_jacobi_normalized(b, c);
  return audit_hermite(mu, J);
}

RateReport audit_szego_gw(double g, int terms) {
  return audit_szego(gross_witten(g), gw_verblunsky(g, terms));
}

RateReport audit_gw_lambda0(double g) {
  const VerblunskyCoeffs zero(std::vector<std::complex<double>>(64, 0.0));
  return audit_gw(lebesgue_circle(), zero, g);
}

}  // namespace sumrule
