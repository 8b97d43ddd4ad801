#include "sumrule/quadrature.hpp"

#include <cmath>

#include "sumrule/errors.hpp"

namespace sumrule {

QuadRule cheb_rule(double lo, double hi, int n) {
  if (!(hi > lo)) throw domain_error("cheb_rule: empty support interval");
  if (n < 1) throw domain_error("cheb_rule: need at least one node");
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  QuadRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int j = 1; j <= n; ++j) {
    const double phi = j * M_PI / (n + 1);
    rule.x[j - 1] = c + h * std::cos(phi);
    rule.w[j - 1] = (M_PI / (n + 1)) * h * std::sin(phi);
  }
  return rule;
}

QuadRule circle_rule(int n) {
  if (n < 1) throw domain_error("circle_rule: need at least one node");
  QuadRule rule;
  rule.x.resize(n);
  rule.w.assign(n, 1.0 / n);
  for (int j = 0; j < n; ++j)
    rule.x[j] = -M_PI + (j + 0.5) * (2.0 * M_PI / n);
  return rule;
}

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double m,
                   double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double err = left + right - whole;
  if (depth <= 0 || std::abs(err) <= 15.0 * tol)
    return left + right + err / 15.0;
  return simpson_rec(f, a, lm, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson_rec(f, m, rm, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace sumrule
