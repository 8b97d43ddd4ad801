#include "sumrule/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "sumrule/errors.hpp"
#include "sumrule/rates.hpp"
#include "sumrule/rng.hpp"

namespace sumrule {

namespace {

constexpr int kDegreeCap = 12;

using TermKey = std::pair<int, std::vector<int>>;

std::vector<QvTerm> to_terms(const std::map<TermKey, double>& acc) {
  std::vector<QvTerm> terms;
  for (const auto& [key, coeff] : acc)
    if (std::abs(coeff) > 1e-12)
      terms.push_back({coeff, key.first, key.second});
  return terms;
}

}  // namespace

MomentPolynomial::MomentPolynomial(std::vector<QvTerm> terms)
    : terms_(std::move(terms)) {
  for (auto& t : terms_) {
    if (t.theta_pow < 0) throw validation_error("negative theta power");
    std::sort(t.moments.begin(), t.moments.end());
  }
  std::sort(terms_.begin(), terms_.end(), [](const QvTerm& x, const QvTerm& y) {
    if (x.theta_pow != y.theta_pow) return x.theta_pow > y.theta_pow;
    return x.moments < y.moments;
  });
  for (size_t i = 1; i < terms_.size(); ++i)
    if (terms_[i].theta_pow == terms_[i - 1].theta_pow &&
        terms_[i].moments == terms_[i - 1].moments)
      throw validation_error("duplicate moment-polynomial term");
}

int MomentPolynomial::max_moment_order() const {
  int mx = 0;
  for (const auto& t : terms_)
    for (int j : t.moments) mx = std::max(mx, j);
  return mx;
}

double MomentPolynomial::eval(double theta, std::span<const double> m) const {
  double total = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff * std::pow(theta, t.theta_pow);
    for (int j : t.moments) {
      if (j > static_cast<int>(m.size()))
        throw domain_error("eval: moment m_" + std::to_string(j) + " missing");
      v *= m[j - 1];
    }
    total += v;
  }
  return total;
}

std::string MomentPolynomial::format() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    double c = t.coeff;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    c = std::abs(c);
    const bool unit = std::abs(c - 1.0) < 1e-12;
    bool need_space = false;
    if (!unit || (t.theta_pow == 0 && t.moments.empty())) {
      os << c;
      need_space = true;
    }
    if (t.theta_pow > 0) {
      if (need_space) os << " ";
      os << "theta";
      if (t.theta_pow > 1) os << "^" << t.theta_pow;
      need_space = true;
    }
    for (int j : t.moments) {
      if (need_space) os << " ";
      os << "m" << j;
      need_space = true;
    }
  }
  return os.str();
}

MomentPolynomial MomentPolynomial::operator+(const MomentPolynomial& o) const {
  std::map<TermKey, double> acc;
  for (const auto& t : terms_) acc[{t.theta_pow, t.moments}] += t.coeff;
  for (const auto& t : o.terms_) acc[{t.theta_pow, t.moments}] += t.coeff;
  return MomentPolynomial(to_terms(acc));
}

MomentPolynomial qv_reduce(std::span<const double> v) {
  const int deg = static_cast<int>(v.size()) - 1;
  if (deg < 1) throw domain_error("qv_reduce: potential must have degree >= 1");
  if (deg > kDegreeCap)
    throw domain_error("qv_reduce: degree above cost guard (max 12)");
  std::map<TermKey, double> acc;
  for (int r = 1; r <= deg; ++r) {
    const double c = v[r];
    if (c == 0.0) continue;
    // words in {M, -theta pi} of length r, excluding the all-M word;
    // bit set means the pi letter
    for (unsigned word = 1; word < (1u << r); ++word) {
      const int j = __builtin_popcount(word);  // theta power, sign (-1)^j
      // rotate so the word starts at its first pi, then split the cyclic
      // word at the pi letters; each M-run of length L contributes a factor
      // (M^L)_{11} via pi M^L pi = (M^L)_{11} pi and the cyclic trace
      int first = 0;
      while (!((word >> first) & 1u)) ++first;
      std::vector<int> runs;
      int run = 0;
      for (int i = 1; i <= r; ++i) {
        const int pos = (first + i) % r;
        if ((word >> pos) & 1u) {
          if (run > 0) runs.push_back(run);
          run = 0;
        } else {
          ++run;
        }
      }
      if (run > 0) runs.push_back(run);
      std::sort(runs.begin(), runs.end());
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      acc[{j, runs}] += c * sign;
    }
  }
  return MomentPolynomial(to_terms(acc));
}

QvCheckResult qv_check(const MomentPolynomial& Q, std::span<const double> v,
                       const Eigen::MatrixXcd& M, double theta) {
  const int deg = static_cast<int>(v.size()) - 1;
  const int n = static_cast<int>(M.rows());
  Eigen::MatrixXcd Mpert = M;
  Mpert(0, 0) -= theta;

  auto tr_poly = [&](const Eigen::MatrixXcd& A) {
    double total = 0.0;
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(n, n);
    for (int r = 1; r <= deg; ++r) {
      P = P * A;
      if (v[r] != 0.0) total += v[r] * P.trace().real();
    }
    return total;
  };
  const double lhs = tr_poly(Mpert) - tr_poly(M);

  const int kmax = std::max(Q.max_moment_order(), 1);
  std::vector<double> m(kmax);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
  e(0) = 1.0;
  Eigen::VectorXcd w = e;
  for (int k = 1; k <= kmax; ++k) {
    w = M * w;
    m[k - 1] = w(0).real();  // Hermitian M: (M^k)_{11} is real
  }
  const double rhs = Q.eval(theta, m);
  return {lhs, rhs, lhs - rhs};
}

Eigen::MatrixXcd random_hermitian(int size, std::uint64_t seed) {
  // GUE normalization H/sqrt(n): spectrum on the order of [-2, 2], so
  // traces of powers stay at unit scale
  Rng rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(size));
  Eigen::MatrixXcd M(size, size);
  for (int i = 0; i < size; ++i) {
    M(i, i) = scale * rng.normal();
    for (int j = i + 1; j < size; ++j) {
      const std::complex<double> z{rng.normal() * scale / std::sqrt(2.0),
                                   rng.normal() * scale / std::sqrt(2.0)};
      M(i, j) = z;
      M(j, i) = std::conj(z);
    }
  }
  return M;
}

GeneralRate rate_general(const MeasureLine& mu, const MeasureLine& mu_V,
                         const MomentPolynomial& Q, double theta,
                         std::optional<double> inf_norm) {
  const double mass = mu_V.mass();
  if (std::abs(mass - 1.0) > 1e-8)
    throw validation_error("rate_general: mu_V not normalized");
  double kl = reversed_kl_line(mu_V, mu);
  GeneralRate out{std::numeric_limits<double>::infinity(), inf_norm};
  if (std::isinf(kl)) return out;
  double outliers = 0.0;
  for (const Atom& a : mu.atoms()) {
    if (a.location > mu_V.hi() + 1e-9 || a.location < mu_V.lo() - 1e-9) {
      const double f = f_hermite(a.location);
      outliers += f;
      if (std::isinf(f)) {
        return out;
      }
    }
  }
  const int kmax = std::max(Q.max_moment_order(), 1);
  const std::vector<double> m = mu.moments(kmax);
  double j = kl + Q.eval(theta, m) + outliers;
  if (inf_norm) j -= *inf_norm;
  out.value = j;
  return out;
}

}  // namespace sumrule
