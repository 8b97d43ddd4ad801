#ifndef SUMRULE_QUADRATURE_HPP
#define SUMRULE_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace sumrule {

struct QuadRule {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Chebyshev (second kind) rule mapped to [lo, hi]:
//   sum_j w_j f(x_j)  ~  int_lo^hi f(x) dx
// with nodes x_j = c + h cos(j pi/(n+1)). Spectrally accurate whenever
// f/sqrt((hi-x)(x-lo)) is smooth, which covers every density in this
// library (all vanish like a square root at the support edges).
QuadRule cheb_rule(double lo, double hi, int n);

// Uniform midpoint rule on [-pi, pi); spectrally accurate for smooth
// periodic integrands. Weights are 1/n, i.e. the rule integrates against
// the normalized Lebesgue measure on the circle.
QuadRule circle_rule(int n);

// Adaptive Simpson refinement to the requested absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 50);

}  // namespace sumrule

#endif
