#include "sumrule/oprl.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

#include "sumrule/errors.hpp"

namespace sumrule {

JacobiCoeffs::JacobiCoeffs(std::vector<double> b, std::vector<double> a,
                           std::optional<JacobiTail> tail)
    : b_(std::move(b)), a_(std::move(a)), tail_(tail) {
  if (b_.empty()) throw validation_error("JacobiCoeffs: empty diagonal");
  if (a_.size() + 1 != b_.size() && a_.size() != b_.size())
    throw validation_error("JacobiCoeffs: off-diagonal length must be m or m-1");
  for (double ak : a_)
    if (!(ak > 0.0)) throw validation_error("JacobiCoeffs: a_k must be > 0");
  if (tail_) {
    if (!std::isfinite(tail_->a) || !std::isfinite(tail_->b) || !(tail_->a > 0.0))
      throw validation_error("JacobiCoeffs: invalid tail");
  }
}

double JacobiCoeffs::b(int k) const {
  if (k < 1) throw domain_error("JacobiCoeffs::b: index must be >= 1");
  if (k <= static_cast<int>(b_.size())) return b_[k - 1];
  if (tail_) return tail_->b;
  throw domain_error("JacobiCoeffs::b: index beyond prefix and no tail");
}

double JacobiCoeffs::a(int k) const {
  if (k < 1) throw domain_error("JacobiCoeffs::a: index must be >= 1");
  if (k <= static_cast<int>(a_.size())) return a_[k - 1];
  if (tail_) return tail_->a;
  throw domain_error("JacobiCoeffs::a: index beyond prefix and no tail");
}

int JacobiCoeffs::max_index() const {
  return tail_ ? INT_MAX : static_cast<int>(b_.size());
}

double ZCoeffs::at(int k) const {
  if (k < 1) throw domain_error("ZCoeffs::at: index must be >= 1");
  if (k <= static_cast<int>(z.size())) return z[k - 1];
  if (tail) return (k % 2 == 1) ? tail->first : tail->second;
  throw domain_error("ZCoeffs::at: index beyond prefix and no tail");
}

JacobiCoeffs lanczos(const QuadratureMeasure& mu, int depth) {
  const int m = mu.size();
  if (depth < 1) throw domain_error("lanczos: depth must be >= 1");
  if (depth > m)
    throw domain_error("lanczos: depth exceeds the number of support points");
  // extended precision: the coefficient map of a discrete measure is badly
  // conditioned in its last rows, and the round-trip contract is 1e-9
  std::vector<long double> x(mu.points().begin(), mu.points().end());
  std::vector<long double> w(mu.weights().begin(), mu.weights().end());

  auto dot = [&](const std::vector<long double>& f,
                 const std::vector<long double>& g) {
    long double s = 0.0L;
    for (int i = 0; i < m; ++i) s += w[i] * f[i] * g[i];
    return s;
  };

  std::vector<std::vector<long double>> basis;
  basis.emplace_back(m, 1.0L);  // p_0 = 1 is already normalized
  std::vector<double> bs, as;
  std::vector<long double> v(m);
  for (int k = 0; k < depth; ++k) {
    const std::vector<long double>& pk = basis[k];
    for (int i = 0; i < m; ++i) v[i] = x[i] * pk[i];
    const long double bk = dot(pk, v);
    bs.push_back(static_cast<double>(bk));
    if (k == depth - 1) break;
    for (int i = 0; i < m; ++i) v[i] -= bk * pk[i];
    if (k > 0)
      for (int i = 0; i < m; ++i)
        v[i] -= static_cast<long double>(as[k - 1]) * basis[k - 1][i];
    // full reorthogonalization, applied twice
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) {
        const long double c = dot(q, v);
        for (int i = 0; i < m; ++i) v[i] -= c * q[i];
      }
    const long double ak = std::sqrt(std::max(0.0L, dot(v, v)));
    if (!(ak > 1e-14L))
      throw numeric_error("lanczos: breakdown (a_" + std::to_string(k + 1) +
                          " not positive)");
    as.push_back(static_cast<double>(ak));
    for (int i = 0; i < m; ++i) v[i] /= ak;
    basis.push_back(v);
  }
  return JacobiCoeffs(std::move(bs), std::move(as));
}

QuadratureMeasure golub_welsch(const JacobiCoeffs& J, int n) {
  if (n < 1) throw domain_error("golub_welsch: n must be >= 1");
  if (n > J.max_index())
    throw domain_error("golub_welsch: truncation exceeds stored coefficients");
  std::vector<long double> d(n), e(n, 0.0L), z(n, 0.0L);
  for (int k = 1; k <= n; ++k) d[k - 1] = J.b(k);
  for (int k = 1; k < n; ++k) e[k - 1] = J.a(k);
  z[0] = 1.0L;

  // Implicit-shift QL with Wilkinson shift on the symmetric tridiagonal
  // matrix, rotating only the tracked first-row vector z (Golub-Welsch).
  const int kMaxIter = 50;
  for (int l = 0; l < n; ++l) {
    for (int iter = 0;; ++iter) {
      int mend = l;
      for (; mend < n - 1; ++mend) {
        const long double dd = std::abs(d[mend]) + std::abs(d[mend + 1]);
        if (std::abs(e[mend]) <= 1e-18L * dd) break;
      }
      if (mend == l) break;
      if (iter >= kMaxIter)
        throw numeric_error("golub_welsch: QL failed to converge at row " +
                            std::to_string(l + 1));
      long double g = (d[l + 1] - d[l]) / (2.0L * e[l]);
      long double r = std::hypot(g, 1.0L);
      g = d[mend] - d[l] + e[l] / (g + std::copysign(r, g));
      long double s = 1.0L, c = 1.0L, p = 0.0L;
      bool deflated = false;
      for (int i = mend - 1; i >= l; --i) {
        long double f = s * e[i];
        const long double bb = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0L) {
          d[i + 1] -= p;
          e[mend] = 0.0L;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0L * c * bb;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - bb;
        f = z[i + 1];
        z[i + 1] = s * z[i] + c * f;
        z[i] = c * z[i] - s * f;
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[mend] = 0.0L;
    }
  }

  std::vector<double> points(n), weights(n);
  for (int i = 0; i < n; ++i) {
    points[i] = static_cast<double>(d[i]);
    weights[i] = static_cast<double>(z[i] * z[i]);
  }
  return QuadratureMeasure(std::move(points), std::move(weights));
}

ZCoeffs z_decompose(const JacobiCoeffs& J) {
  const int m = J.prefix_size();
  // With a constant tail the z-recursion settles to a 2-periodic sequence;
  // run it past the prefix and detect the period.
  const int extra = J.has_tail() ? 80 : 0;
  const int steps = m + extra;
  std::vector<double> z;
  z.reserve(2 * steps);
  double prev_even = 0.0;  // z_0
  for (int k = 1; k <= steps; ++k) {
    double zodd = J.b(k) - prev_even;  // z_{2k-1}
    if (zodd < -1e-12)
      throw domain_error("z_decompose: measure not supported on [0,inf)");
    zodd = std::max(zodd, 0.0);
    z.push_back(zodd);
    if (k == steps && !J.has_tail() &&
        static_cast<int>(J.a_prefix().size()) < m)
      break;  // a_m absent for an m-point prefix
    const double ak = J.a(k);
    if (zodd <= 0.0)
      throw domain_error("z_decompose: z_{2k-1} vanishes under a positive a_k");
    const double zeven = ak * ak / zodd;  // z_{2k}
    z.push_back(zeven);
    prev_even = zeven;
  }
  ZCoeffs out;
  if (J.has_tail()) {
    const size_t L = z.size();
    const double zo = z[L - 2], ze = z[L - 1];
    if (std::abs(z[L - 4] - zo) > 1e-10 || std::abs(z[L - 3] - ze) > 1e-10)
      throw numeric_error("z_decompose: tail did not settle to period two");
    // trim to the prefix and record the periodic tail; keep parity aligned
    z.resize(2 * static_cast<size_t>(m));
    out.tail = std::make_pair(zo, ze);
  }
  out.z = std::move(z);
  return out;
}

JacobiCoeffs z_compose(const ZCoeffs& Z) {
  const int nz = static_cast<int>(Z.z.size());
  if (nz < 1 && !Z.tail) throw domain_error("z_compose: empty coefficient list");
  for (double zk : Z.z)
    if (zk < 0.0) throw domain_error("z_compose: z_k must be nonnegative");
  // b_k needs z_{2k-1}, a_k needs z_{2k}
  const int nb = Z.tail ? nz / 2 + 2 : (nz + 1) / 2;
  const int na = Z.tail ? nb : nz / 2;
  std::vector<double> bs, as;
  for (int k = 1; k <= nb; ++k) {
    const double zprev = (k == 1) ? 0.0 : Z.at(2 * k - 2);
    bs.push_back(zprev + Z.at(2 * k - 1));
  }
  for (int k = 1; k <= na; ++k) {
    const double a2 = Z.at(2 * k - 1) * Z.at(2 * k);
    if (!(a2 > 0.0)) throw domain_error("z_compose: a_k^2 must be positive");
    as.push_back(std::sqrt(a2));
  }
  std::optional<JacobiTail> tail;
  if (Z.tail) {
    const auto [zo, ze] = *Z.tail;
    tail = JacobiTail{zo + ze, std::sqrt(zo * ze)};
  }
  return JacobiCoeffs(std::move(bs), std::move(as), tail);
}

JacobiCoeffs jacobi_affine(const JacobiCoeffs& J, double r, double s) {
  if (r == 0.0) throw domain_error("jacobi_affine: r must be nonzero");
  std::vector<double> bs(J.b_prefix()), as(J.a_prefix());
  for (double& b : bs) b = (b - s) / r;
  for (double& a : as) a = a / std::abs(r);
  std::optional<JacobiTail> tail;
  if (J.has_tail())
    tail = JacobiTail{(J.tail().b - s) / r, J.tail().a / std::abs(r)};
  return JacobiCoeffs(std::move(bs), std::move(as), tail);
}

std::vector<double> jacobi_moments(const JacobiCoeffs& J, int K) {
  if (K < 1) throw domain_error("jacobi_moments: K must be >= 1");
  constexpr int kExpansionCap = 4096;
  if (K + 1 > kExpansionCap)
    throw domain_error("jacobi_moments: K exceeds the expansion cap");
  const int n = K + 1;  // banded locality: (J^k)_{11} needs k+1 coefficients
  if (n > J.max_index())
    throw domain_error("jacobi_moments: prefix too short for requested order");
  std::vector<double> d(n), e(n - 1);
  for (int k = 1; k <= n; ++k) d[k - 1] = J.b(k);
  for (int k = 1; k < n; ++k) e[k - 1] = J.a(k);
  std::vector<double> v(n, 0.0), nv(n);
  v[0] = 1.0;
  std::vector<double> out;
  out.reserve(K);
  for (int k = 0; k < K; ++k) {
    for (int i = 0; i < n; ++i) {
      double s = d[i] * v[i];
      if (i > 0) s += e[i - 1] * v[i - 1];
      if (i + 1 < n) s += e[i] * v[i + 1];
      nv[i] = s;
    }
    v.swap(nv);
    out.push_back(v[0]);
  }
  return out;
}

}  // namespace sumrule
