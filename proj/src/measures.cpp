#include "sumrule/measures.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "sumrule/errors.hpp"

namespace sumrule {

namespace {

constexpr double kMassTol = 1e-8;
constexpr double kAtomFloor = 1e-14;
constexpr int kMaxMomentOrder = 64;

std::vector<Atom> clean_atoms(std::vector<Atom> atoms) {
  std::erase_if(atoms, [](const Atom& a) { return a.mass < kAtomFloor; });
  for (const Atom& a : atoms)
    if (!(a.mass > 0.0)) throw validation_error("atom mass must be positive");
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.location < b.location; });
  for (size_t i = 1; i < atoms.size(); ++i)
    if (atoms[i].location == atoms[i - 1].location)
      throw validation_error("atom locations must be distinct");
  return atoms;
}

}  // namespace

MeasureLine::MeasureLine(double lo, double hi,
                         std::function<double(double)> density,
                         std::vector<Atom> atoms, int nodes,
                         RuleFactory factory)
    : lo_(lo), hi_(hi), density_(std::move(density)),
      atoms_(clean_atoms(std::move(atoms))), factory_(std::move(factory)) {
  if (!(hi_ > lo_)) throw validation_error("support interval is empty");
  if (!factory_) {
    const auto dens = density_;
    const double a = lo_, b = hi_;
    factory_ = [dens, a, b](int n) {
      QuadRule r = cheb_rule(a, b, n);
      for (size_t j = 0; j < r.x.size(); ++j) r.w[j] *= dens(r.x[j]);
      return r;
    };
  }
  rule_ = factory_(nodes);
  half_rule_ = factory_(nodes / 2);
  for (const auto* r : {&rule_, &half_rule_})
    for (double x : r->x)
      if (density_(x) < 0.0)
        throw validation_error("density is negative on the grid");
  const double m = mass();
  if (std::abs(m - 1.0) > kMassTol)
    throw validation_error("measure not normalized: mass = " + std::to_string(m));
}

double MeasureLine::density(double x) const {
  if (x < lo_ || x > hi_) return 0.0;
  return density_(x);
}

double MeasureLine::ac_mass() const {
  double s = 0.0;
  for (double w : rule_.w) s += w;
  return s;
}

double MeasureLine::mass() const {
  double s = ac_mass();
  for (const Atom& a : atoms_) s += a.mass;
  return s;
}

double MeasureLine::integrate_ac(const std::function<double(double)>& f) const {
  double s = 0.0;
  for (size_t j = 0; j < rule_.x.size(); ++j) s += rule_.w[j] * f(rule_.x[j]);
  return s;
}

double MeasureLine::integrate(const std::function<double(double)>& f) const {
  double s = integrate_ac(f);
  for (const Atom& a : atoms_) s += a.mass * f(a.location);
  return s;
}

std::vector<double> MeasureLine::moments(int K) const {
  if (K < 1 || K > kMaxMomentOrder)
    throw domain_error("moments: order must be in 1..64");
  const double m = mass();
  if (std::abs(m - 1.0) > kMassTol)
    throw validation_error("moments: measure not normalized");
  std::vector<double> out(K, 0.0);
  std::vector<double> half(K, 0.0);
  for (size_t j = 0; j < rule_.x.size(); ++j) {
    double p = 1.0;
    for (int k = 0; k < K; ++k) {
      p *= rule_.x[j];
      out[k] += rule_.w[j] * p;
    }
  }
  for (size_t j = 0; j < half_rule_.x.size(); ++j) {
    double p = 1.0;
    for (int k = 0; k < K; ++k) {
      p *= half_rule_.x[j];
      half[k] += half_rule_.w[j] * p;
    }
  }
  for (int k = 0; k < K; ++k) {
    const double scale = std::max({1.0, std::abs(out[k]), std::abs(half[k])});
    const double residual = std::abs(out[k] - half[k]) / scale;
    if (residual > 1e-8)
      throw accuracy_error("moments: quadrature residual " +
                               std::to_string(residual) + " at order " +
                               std::to_string(k + 1),
                           residual);
  }
  for (const Atom& a : atoms_) {
    double p = 1.0;
    for (int k = 0; k < K; ++k) {
      p *= a.location;
      out[k] += a.mass * p;
    }
  }
  return out;
}

MeasureCircle::MeasureCircle(std::function<double(double)> density,
                             std::vector<Atom> atoms, int nodes,
                             Caratheodory F)
    : density_(std::move(density)), atoms_(clean_atoms(std::move(atoms))),
      F_(std::move(F)) {
  for (const Atom& a : atoms_)
    if (a.location < -M_PI || a.location >= M_PI)
      throw validation_error("atom angle outside [-pi, pi)");
  rule_ = circle_rule(nodes);
  half_rule_ = circle_rule(nodes / 2);
  for (auto* r : {&rule_, &half_rule_}) {
    for (size_t j = 0; j < r->x.size(); ++j) {
      const double d = density_(r->x[j]);
      if (d < 0.0) throw validation_error("circle density is negative on grid");
      r->w[j] *= d;
    }
  }
  const double m = mass();
  if (std::abs(m - 1.0) > kMassTol)
    throw validation_error("circle measure not normalized: mass = " +
                           std::to_string(m));
}

double MeasureCircle::density(double theta) const { return density_(theta); }

double MeasureCircle::mass() const {
  double s = 0.0;
  for (double w : rule_.w) s += w;
  for (const Atom& a : atoms_) s += a.mass;
  return s;
}

double MeasureCircle::integrate(const std::function<double(double)>& f) const {
  double s = 0.0;
  for (size_t j = 0; j < rule_.x.size(); ++j) s += rule_.w[j] * f(rule_.x[j]);
  for (const Atom& a : atoms_) s += a.mass * f(a.location);
  return s;
}

std::vector<std::complex<double>> MeasureCircle::moments(int K) const {
  if (K < 1 || K > kMaxMomentOrder)
    throw domain_error("moments: order must be in 1..64");
  std::vector<std::complex<double>> out(K, 0.0), half(K, 0.0);
  auto accumulate = [K](const QuadRule& r, std::vector<std::complex<double>>& acc) {
    for (size_t j = 0; j < r.x.size(); ++j) {
      const std::complex<double> e{std::cos(r.x[j]), std::sin(r.x[j])};
      std::complex<double> p = 1.0;
      for (int k = 0; k < K; ++k) {
        p *= e;
        acc[k] += r.w[j] * p;
      }
    }
  };
  accumulate(rule_, out);
  accumulate(half_rule_, half);
  for (int k = 0; k < K; ++k) {
    const double residual = std::abs(out[k] - half[k]);
    if (residual > 1e-8)
      throw accuracy_error("moments_circle: quadrature residual " +
                               std::to_string(residual),
                           residual);
  }
  for (const Atom& a : atoms_) {
    const std::complex<double> e{std::cos(a.location), std::sin(a.location)};
    std::complex<double> p = 1.0;
    for (int k = 0; k < K; ++k) {
      p *= e;
      out[k] += a.mass * p;
    }
  }
  return out;
}

std::complex<double> MeasureCircle::moment1() const { return moments(1)[0]; }

std::complex<double> MeasureCircle::caratheodory_closure(
    std::complex<double> z) const {
  if (!F_) throw domain_error("no Caratheodory closure stored");
  return F_(z);
}

QuadratureMeasure::QuadratureMeasure(std::vector<double> points,
                                     std::vector<double> weights, bool circle)
    : points_(std::move(points)), weights_(std::move(weights)),
      circle_(circle) {
  if (points_.size() != weights_.size() || points_.empty())
    throw validation_error("points/weights size mismatch");
  std::vector<size_t> idx(points_.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](size_t i, size_t j) { return points_[i] < points_[j]; });
  std::vector<double> p(points_.size()), w(points_.size());
  for (size_t i = 0; i < idx.size(); ++i) {
    p[i] = points_[idx[i]];
    w[i] = weights_[idx[i]];
  }
  points_ = std::move(p);
  weights_ = std::move(w);
  double s = 0.0;
  for (size_t i = 0; i < points_.size(); ++i) {
    if (weights_[i] < -1e-14)
      throw validation_error("negative quadrature weight");
    if (weights_[i] < 0.0) weights_[i] = 0.0;
    if (i > 0 && points_[i] == points_[i - 1])
      throw validation_error("quadrature points must be distinct");
    s += weights_[i];
  }
  if (std::abs(s - 1.0) > 1e-12)
    throw validation_error("quadrature weights sum to " + std::to_string(s));
}

std::vector<double> QuadratureMeasure::moments(int K) const {
  if (K < 1 || K > kMaxMomentOrder)
    throw domain_error("moments: order must be in 1..64");
  if (circle_) throw domain_error("real moments of a circle measure");
  std::vector<double> out(K, 0.0);
  for (size_t j = 0; j < points_.size(); ++j) {
    double p = 1.0;
    for (int k = 0; k < K; ++k) {
      p *= points_[j];
      out[k] += weights_[j] * p;
    }
  }
  return out;
}

std::complex<double> QuadratureMeasure::circle_moment1() const {
  if (!circle_) throw domain_error("circle moment of a line measure");
  std::complex<double> m = 0.0;
  for (size_t j = 0; j < points_.size(); ++j)
    m += weights_[j] * std::complex<double>{std::cos(points_[j]),
                                            std::sin(points_[j])};
  return m;
}

std::pair<double, double> QuadratureMeasure::top() const {
  return {points_.back(), weights_.back()};
}

void QuadratureMeasure::write_csv(std::ostream& os) const {
  os << "point,weight\n";
  char buf[96];
  for (size_t i = 0; i < points_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", points_[i], weights_[i]);
    os << buf;
  }
}

MeasureLine affine_map(const MeasureLine& mu, double r, double s) {
  if (r == 0.0) throw domain_error("affine_map: r must be nonzero");
  auto f = mu;  // keep the closure alive inside the new density
  auto dens = [f, r, s](double y) { return f.density(r * y + s) * std::abs(r); };
  double lo = (mu.lo() - s) / r, hi = (mu.hi() - s) / r;
  if (lo > hi) std::swap(lo, hi);
  std::vector<Atom> atoms;
  atoms.reserve(mu.atoms().size());
  for (const Atom& a : mu.atoms())
    atoms.push_back({(a.location - s) / r, a.mass});
  // transport the parent's quadrature rule node-by-node: folded weights are
  // invariant under the change of variable, so mass is preserved exactly
  auto parent_factory = mu.factory_;
  auto factory = [parent_factory, r, s](int n) {
    QuadRule rule = parent_factory(n);
    for (double& x : rule.x) x = (x - s) / r;
    if (r < 0.0) {
      std::reverse(rule.x.begin(), rule.x.end());
      std::reverse(rule.w.begin(), rule.w.end());
    }
    return rule;
  };
  return MeasureLine(lo, hi, dens, std::move(atoms),
                     static_cast<int>(mu.rule_.x.size()), factory);
}

QuadratureMeasure affine_map(const QuadratureMeasure& mu, double r, double s) {
  if (r == 0.0) throw domain_error("affine_map: r must be nonzero");
  if (mu.on_circle()) throw domain_error("affine_map: circle measure");
  std::vector<double> p(mu.points());
  for (double& x : p) x = (x - s) / r;
  return QuadratureMeasure(std::move(p), mu.weights());
}

std::vector<double> moments_line(const MeasureLine& mu, int K) {
  return mu.moments(K);
}
std::vector<double> moments_line(const QuadratureMeasure& mu, int K) {
  return mu.moments(K);
}
std::vector<std::complex<double>> moments_circle(const MeasureCircle& mu, int K) {
  return mu.moments(K);
}

QuadratureMeasure discretize(const MeasureLine& mu, int nodes) {
  QuadRule r = mu.factory_(nodes);
  std::vector<double> pts(r.x), wts(r.w);
  pts.reserve(pts.size() + mu.atoms().size());
  wts.reserve(wts.size() + mu.atoms().size());
  for (const Atom& a : mu.atoms()) {
    // an atom may sit exactly on a rule node (pole-splitting rules place a
    // residual node at the atom location); merge instead of duplicating
    bool merged = false;
    for (size_t i = 0; i < pts.size(); ++i)
      if (pts[i] == a.location) {
        wts[i] += a.mass;
        merged = true;
        break;
      }
    if (!merged) {
      pts.push_back(a.location);
      wts.push_back(a.mass);
    }
  }
  double s = 0.0;
  for (double w : wts) s += w;
  for (double& w : wts) w /= s;
  return QuadratureMeasure(std::move(pts), std::move(wts));
}

}  // namespace sumrule
