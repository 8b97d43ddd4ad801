#include "sumrule/rng.hpp"

#include <cmath>

#include "sumrule/errors.hpp"

namespace sumrule {

namespace {

// splitmix64 finalizer; full-period bijection on 64-bit words
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  key_ = mix64(mix64(seed) ^ mix64(stream * 0xd2b74407b1ce6e93ULL + 1));
}

Rng Rng::substream(std::uint64_t index) const {
  Rng child(key_, index + 0x51ed270b8a1c);
  return child;
}

std::uint64_t Rng::next_u64() { return mix64(key_ ^ mix64(++counter_)); }

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform_symmetric() { return 2.0 * uniform() - 1.0; }

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Marsaglia polar method
  for (;;) {
    double u = uniform_symmetric();
    double v = uniform_symmetric();
    double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      double f = std::sqrt(-2.0 * std::log(s) / s);
      spare_ = v * f;
      have_spare_ = true;
      return u * f;
    }
  }
}

double Rng::gamma(double shape) {
  if (shape < 0.5) throw domain_error("gamma: shape must be >= 0.5");
  // Marsaglia-Tsang squeeze; handles shape >= 0.5 after boosting below 1
  if (shape < 1.0) {
    double g = gamma(shape + 1.0);
    return g * std::pow(uniform() + 1e-300, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = normal();
    double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    double v = t * t * t;
    double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
      return d * v;
  }
}

double Rng::chi(double dof) {
  if (dof < 1.0) throw domain_error("chi: dof must be >= 1");
  return std::sqrt(2.0 * gamma(dof / 2.0));
}

std::complex<double> Rng::unit_circle() {
  double phi = 2.0 * M_PI * uniform();
  return {std::cos(phi), std::sin(phi)};
}

std::complex<double> Rng::disk_beta(int m) {
  if (m < 1) throw domain_error("disk_beta: m must be >= 1");
  // |alpha|^2 ~ Beta(1, m) via inverse CDF
  double r2 = 1.0 - std::pow(1.0 - uniform(), 1.0 / m);
  return std::sqrt(r2) * unit_circle();
}

}  // namespace sumrule
