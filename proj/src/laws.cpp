#include "sumrule/laws.hpp"

#include <algorithm>
#include <cmath>

#include "sumrule/errors.hpp"

namespace sumrule {

namespace {

inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }

void require_tau(double tau) {
  if (!(tau > 0.0) || tau > 1.0)
    throw domain_error("tau must lie in (0, 1]");
}

void require_g(double g) {
  if (std::abs(g) > 1.0)
    throw domain_error("|g| > 1: gapped Gross-Witten phase not supported");
}

}  // namespace

MeasureLine semicircle() {
  auto d = [](double x) {
    return std::sqrt(positive_part(4.0 - x * x)) / (2.0 * M_PI);
  };
  return MeasureLine(-2.0, 2.0, d);
}

MeasureLine marchenko_pastur(double tau) {
  require_tau(tau);
  const double lo = (1.0 - std::sqrt(tau)) * (1.0 - std::sqrt(tau));
  const double hi = (1.0 + std::sqrt(tau)) * (1.0 + std::sqrt(tau));
  auto d = [lo, hi, tau](double x) {
    if (x <= lo || x >= hi) return 0.0;
    return std::sqrt((hi - x) * (x - lo)) / (2.0 * M_PI * tau * x);
  };
  if (tau == 1.0) {
    // hard edge: the density diverges like x^{-1/2} at 0, so the
    // square-root-edge rule does not apply. With x = 2 + 2t the measure is
    // (1/pi) sqrt((1-t)/(1+t)) dt, the fourth-kind Chebyshev weight, whose
    // Gauss rule has nodes cos(2 j pi/(2n+1)) and weights
    // (4 pi/(2n+1)) sin^2(j pi/(2n+1)).
    auto factory = [](int n) {
      QuadRule r;
      r.x.resize(n);
      r.w.resize(n);
      for (int j = 1; j <= n; ++j) {
        const double s = std::sin(j * M_PI / (2 * n + 1));
        r.x[j - 1] = 2.0 + 2.0 * std::cos(2.0 * j * M_PI / (2 * n + 1));
        r.w[j - 1] = 4.0 / (2 * n + 1) * s * s;
      }
      return r;
    };
    return MeasureLine(lo, hi, d, {}, 2048, factory);
  }
  return MeasureLine(lo, hi, d);
}

MeasureCircle lebesgue_circle() {
  auto one = [](double) { return 1.0; };
  auto F = [](std::complex<double>) { return std::complex<double>(1.0, 0.0); };
  return MeasureCircle(one, {}, 2048, F);
}

MeasureCircle gross_witten(double g) {
  require_g(g);
  auto d = [g](double t) { return 1.0 + g * std::cos(t); };
  auto F = [g](std::complex<double> z) { return 1.0 + g * z; };
  return MeasureCircle(d, {}, 2048, F);
}

MeasureLine spiked_semicircle(double theta) {
  auto d = [theta](double x) {
    return std::sqrt(positive_part(4.0 - x * x)) /
           (2.0 * M_PI * (theta * theta + 1.0 - theta * x));
  };
  if (theta == 0.0) return semicircle();
  std::vector<Atom> atoms;
  const double atom_mass = positive_part(1.0 - 1.0 / (theta * theta));
  const double pole = theta + 1.0 / theta;  // root of theta^2 + 1 - theta x
  if (atom_mass > 0.0) atoms.push_back({pole, atom_mass});
  // The density is sqrt(4-x^2)/(2 pi |theta| |x - pole|) with |pole| >= 2,
  // which degenerates into a boundary spike as |theta| -> 1. Integrate by
  // splitting off the pole through a difference quotient,
  //   int f dmu = sum_j w_j (f(x_j) - f(pole)) + f(pole) * acmass,
  // where acmass = min(1, theta^-2) is the closed-form a.c. mass. The
  // remaining integrand is smooth uniformly in theta.
  const double acmass = std::min(1.0, 1.0 / (theta * theta));
  const double at = std::abs(theta);
  auto factory = [at, pole, acmass](int n) {
    QuadRule r = cheb_rule(-2.0, 2.0, n);
    double partial = 0.0;
    for (int j = 0; j < n; ++j) {
      const double x = r.x[j];
      r.w[j] *= std::sqrt(positive_part(4.0 - x * x)) /
                (2.0 * M_PI * at * std::abs(pole - x));
      partial += r.w[j];
    }
    r.x.push_back(pole);
    r.w.push_back(acmass - partial);
    return r;
  };
  return MeasureLine(-2.0, 2.0, d, std::move(atoms), 2048, factory);
}

MeasureLine spiked_mp(double tau, double theta) {
  require_tau(tau);
  if (tau == 1.0)
    throw domain_error("spiked_mp: tau = 1 not supported (mass at the hard edge)");
  if (!(theta > 0.0)) throw domain_error("spiked_mp: theta must be positive");
  if (theta == 1.0) return marchenko_pastur(tau);  // z_1' = z_1, no spike
  const double lo = (1.0 - std::sqrt(tau)) * (1.0 - std::sqrt(tau));
  const double hi = (1.0 + std::sqrt(tau)) * (1.0 + std::sqrt(tau));
  auto d = [lo, hi, tau, theta](double x) {
    if (x <= lo || x >= hi) return 0.0;
    const double q = (theta + tau - 1.0) + x * (1.0 / theta - 1.0);
    return std::sqrt((hi - x) * (x - lo)) / (2.0 * M_PI * x * q);
  };
  std::vector<Atom> atoms;
  const double num = positive_part((theta - 1.0) * (theta - 1.0) - tau);
  if (num > 0.0) {
    // Atom mass ((theta-1)^2 - tau)/((theta-1)(theta+tau-1)): forced by
    // normalization together with m_1 = theta, and confirmed by the
    // Stieltjes residue of the coefficient minimizer.
    const double v = num / ((theta - 1.0) * (theta + tau - 1.0));
    const double w = -(theta + tau - 1.0) / (1.0 / theta - 1.0);
    atoms.push_back({w, v});
  }
  const double dist = std::min(std::abs(theta - (1.0 - std::sqrt(tau))),
                               std::abs(theta - (1.0 + std::sqrt(tau))));
  const int nodes = dist < 0.1 ? 8192 : 2048;
  return MeasureLine(lo, hi, d, std::move(atoms), nodes);
}

MeasureCircle spiked_gw(double g, double phi) {
  require_g(g);
  const double sp = std::sin(phi / 2.0);
  auto d = [g, phi, sp](double t) {
    const double den =
        1.0 - 2.0 * g * sp * std::sin(t - phi / 2.0) + g * g * sp * sp;
    return (1.0 + g * std::cos(t)) / den;
  };
  // Caratheodory transform of the rotated measure through the fractional
  // map of F(z) = 1 + g z.
  auto F = [g, phi](std::complex<double> z) {
    const std::complex<double> e = std::exp(std::complex<double>(0.0, -phi));
    const std::complex<double> F0 = 1.0 + g * z;
    return ((1.0 - e) + (1.0 + e) * F0) / ((1.0 + e) + (1.0 - e) * F0);
  };
  return MeasureCircle(d, {}, 2048, F);
}

namespace {

// Stieltjes-transform residue at a candidate pole z of a measure with
// coefficients (0, b, b, ...; 1, s, s, ...): G(z) = 1/(z - T(z)) with T the
// resolvent of the constant tail. Returns mass 0 when z is not a pole on
// the decaying branch.
double meixner_residue(double b, double c, double z) {
  const double u = z - b;
  const double s2 = u * u - 4.0 * (1.0 + c);
  // a genuine pole sits strictly outside the essential support; roots that
  // are only outside by rounding carry no mass
  if (s2 <= 1e-10 * (1.0 + u * u)) return 0.0;
  const double sq = (u >= 0.0 ? 1.0 : -1.0) * std::sqrt(s2);
  const double T = (u - sq) / (2.0 * (1.0 + c));
  if (std::abs(T - z) > 1e-8 * (1.0 + std::abs(z))) return 0.0;
  const double Tp = (1.0 - u / sq) / (2.0 * (1.0 + c));
  const double mass = 1.0 / (1.0 - Tp);
  return mass > 1e-12 ? mass : 0.0;
}

}  // namespace

std::string meixner_classify(double b, double c) {
  if (!(c > -1.0)) throw domain_error("meixner: c must be > -1");
  if (c == 0.0) return b == 0.0 ? "free Gaussian" : "free Poisson";
  if (c < 0.0) return "free binomial";
  const double disc = b * b - 4.0 * c;
  if (disc < 0.0) return "free hyperbolic tangent";
  if (disc == 0.0) return "free Gamma";
  return "free Pascal";
}

std::vector<Atom> meixner_atoms(double b, double c) {
  if (!(c > -1.0)) throw domain_error("meixner: c must be > -1");
  std::vector<Atom> atoms;
  auto push = [&atoms](double loc, double mass) {
    if (mass > 1e-14) atoms.push_back({loc, mass});
  };
  auto sorted = [&atoms]() {
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& x, const Atom& y) { return x.location < y.location; });
    return atoms;
  };
  if (c == 0.0) {
    if (b == 0.0) return sorted();  // semicircle
    const double closed = positive_part(1.0 - 1.0 / (b * b));
    if (closed > 1e-9) {
      push(-1.0 / b, closed);
    } else {
      push(-1.0 / b, meixner_residue(b, c, -1.0 / b));  // boundary: residue decides
    }
    return sorted();
  }
  const double disc = b * b - 4.0 * c;
  if (disc < 0.0) return sorted();  // complex roots, no atoms
  const double sq = std::sqrt(disc);
  // roots of 1 + b x + c x^2
  const double x_plus = (b >= 0.0 ? (-b + sq) : (-b - sq)) / (2.0 * c);
  const double x_minus = (b >= 0.0 ? (-b - sq) : (-b + sq)) / (2.0 * c);
  if (c > 0.0) {
    // free Pascal / free Gamma: at most one atom, at the root nearer the bulk
    double closed = 0.0;
    if (disc > 0.0)
      closed = positive_part(1.0 - (std::abs(b) - sq) / (2.0 * c * sq));
    if (closed > 1e-9 && std::abs(b) > 1e-9) {
      push(x_plus, closed);
    } else {
      push(x_plus, meixner_residue(b, c, x_plus));
    }
    return sorted();
  }
  // free binomial: a closed mass formula exists only for b = 0; residues otherwise
  if (b == 0.0) {
    const double closed = positive_part(1.0 + 1.0 / (2.0 * c));
    double m1 = closed, m2 = closed;
    if (closed <= 1e-9) {
      m1 = meixner_residue(b, c, x_minus);
      m2 = meixner_residue(b, c, x_plus);
    }
    push(x_minus, m1);
    push(x_plus, m2);
    return sorted();
  }
  push(x_minus, meixner_residue(b, c, x_minus));
  push(x_plus, meixner_residue(b, c, x_plus));
  return sorted();
}

MeasureLine meixner(double b, double c) {
  if (!(c > -1.0)) throw domain_error("meixner: c must be > -1");
  const double half = 2.0 * std::sqrt(1.0 + c);
  auto d = [b, c, half](double x) {
    const double s2 = half * half - (x - b) * (x - b);
    if (s2 <= 0.0) return 0.0;
    const double q = 1.0 + b * x + c * x * x;
    return std::sqrt(s2) / (2.0 * M_PI * q);
  };
  return MeasureLine(b - half, b + half, d, meixner_atoms(b, c));
}

MeasureLine meixner_normalized(double b, double c) {
  return affine_map(meixner(b, c), std::sqrt(1.0 + c), b);
}

JacobiCoeffs meixner_jacobi(double b, double c) {
  if (!(c > -1.0)) throw domain_error("meixner: c must be > -1");
  const double s = std::sqrt(1.0 + c);
  return JacobiCoeffs({0.0, b}, {1.0, s}, JacobiTail{b, s});
}

JacobiCoeffs meixner_jacobi_normalized(double b, double c) {
  return jacobi_affine(meixner_jacobi(b, c), std::sqrt(1.0 + c), b);
}

bool LawSpec::on_circle() const {
  return tag == Tag::GW || tag == Tag::SpikedGW;
}

MeasureLine LawSpec::build_line() const {
  switch (tag) {
    case Tag::SC: return semicircle();
    case Tag::MP: return marchenko_pastur(tau);
    case Tag::SpikedSC: return spiked_semicircle(theta);
    case Tag::SpikedMP: return spiked_mp(tau, theta);
    case Tag::Meixner: return meixner(b, c);
    case Tag::MeixnerNormalized: return meixner_normalized(b, c);
    default: throw domain_error("law lives on the circle");
  }
}

MeasureCircle LawSpec::build_circle() const {
  switch (tag) {
    case Tag::GW: return gross_witten(g);
    case Tag::SpikedGW: return spiked_gw(g, phi);
    default: throw domain_error("law lives on the line");
  }
}

}  // namespace sumrule
