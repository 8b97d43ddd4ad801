#ifndef SUMRULE_MEASURES_HPP
#define SUMRULE_MEASURES_HPP

#include <complex>
#include <functional>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "sumrule/quadrature.hpp"

namespace sumrule {

struct Atom {
  double location;
  double mass;
};

class MeasureLine;
class QuadratureMeasure;
QuadratureMeasure discretize(const MeasureLine& mu, int nodes);
MeasureLine affine_map(const MeasureLine& mu, double r, double s);

// Probability measure on the real line: an absolutely continuous part given
// by a density closure on a closed support interval, plus finitely many
// atoms. Instances are immutable after construction; construction validates
// normalization (1e-8), nonnegativity of the density on the quadrature grid
// and positivity/distinctness of atoms. Atoms below mass 1e-14 are dropped.
class MeasureLine {
public:
  // A rule factory produces, for a node count n, a quadrature rule whose
  // weights already include the density: sum w_j f(x_j) ~ int f dmu_ac.
  // The default factory folds the density into the Chebyshev rule; laws
  // with a non-square-root edge (the hard-edge Marchenko-Pastur) supply
  // their own substitution.
  using RuleFactory = std::function<QuadRule(int)>;

  MeasureLine(double lo, double hi, std::function<double(double)> density,
              std::vector<Atom> atoms = {}, int nodes = 2048,
              RuleFactory factory = nullptr);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  double density(double x) const;

  double ac_mass() const;
  double mass() const;

  // integral of f against the a.c. part only / against the whole measure
  double integrate_ac(const std::function<double(double)>& f) const;
  double integrate(const std::function<double(double)>& f) const;

  // m_k = int x^k dmu, k = 1..K (K <= 64); verifies normalization and
  // checks convergence against the half-resolution rule.
  std::vector<double> moments(int K) const;

private:
  double lo_, hi_;
  std::function<double(double)> density_;
  std::vector<Atom> atoms_;
  RuleFactory factory_;
  QuadRule rule_, half_rule_;  // rules premultiplied by the density

  friend QuadratureMeasure discretize(const MeasureLine& mu, int nodes);
  friend MeasureLine affine_map(const MeasureLine& mu, double r, double s);
};

// Probability measure on the unit circle: density in the angle theta with
// respect to the normalized Lebesgue measure lambda_0, plus atoms at angles.
// Optionally carries a closed-form Caratheodory transform when one is known
// (catalog laws), which downstream operations may exploit.
class MeasureCircle {
public:
  using Caratheodory = std::function<std::complex<double>(std::complex<double>)>;

  MeasureCircle(std::function<double(double)> density,
                std::vector<Atom> atoms = {}, int nodes = 2048,
                Caratheodory F = nullptr);

  const std::vector<Atom>& atoms() const { return atoms_; }
  double density(double theta) const;
  double mass() const;

  double integrate(const std::function<double(double)>& f) const;

  // c_k = int e^{i k theta} dmu, k = 1..K
  std::vector<std::complex<double>> moments(int K) const;
  std::complex<double> moment1() const;

  bool has_caratheodory() const { return static_cast<bool>(F_); }
  std::complex<double> caratheodory_closure(std::complex<double> z) const;

private:
  std::function<double(double)> density_;
  std::vector<Atom> atoms_;
  QuadRule rule_, half_rule_;
  Caratheodory F_;
};

// Finitely supported probability measure: the empirical spectral-measure
// representation. Points are sorted and distinct, weights nonnegative and
// summing to one within 1e-12. `circle` means points are angles in [-pi,pi).
class QuadratureMeasure {
public:
  QuadratureMeasure(std::vector<double> points, std::vector<double> weights,
                    bool circle = false);

  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  bool on_circle() const { return circle_; }
  int size() const { return static_cast<int>(points_.size()); }

  std::vector<double> moments(int K) const;  // line case
  std::complex<double> circle_moment1() const;

  // index and weight of the largest point (top of the spectrum)
  std::pair<double, double> top() const;

  void write_csv(std::ostream& os) const;  // columns: point,weight

private:
  std::vector<double> points_;
  std::vector<double> weights_;
  bool circle_;
};

// Pushforward under T_{r,s}, the change of variable x = r*y + s solved for
// y: atoms move to (location - s)/r, the density picks up the Jacobian |r|.
MeasureLine affine_map(const MeasureLine& mu, double r, double s);
QuadratureMeasure affine_map(const QuadratureMeasure& mu, double r, double s);

std::vector<double> moments_line(const MeasureLine& mu, int K);
std::vector<double> moments_line(const QuadratureMeasure& mu, int K);
std::vector<std::complex<double>> moments_circle(const MeasureCircle& mu, int K);

// Deterministic discretization on the Chebyshev grid (plus the atoms),
// renormalized to total mass one.
QuadratureMeasure discretize(const MeasureLine& mu, int nodes);

}  // namespace sumrule

#endif
