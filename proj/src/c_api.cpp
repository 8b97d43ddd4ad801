#include "sumrule.h"

#include <cmath>
#include <complex>
#include <cstring>
#include <variant>

#include "sumrule/ensembles.hpp"
#include "sumrule/errors.hpp"
#include "sumrule/laws.hpp"
#include "sumrule/matricial.hpp"
#include "sumrule/oprl.hpp"
#include "sumrule/opuc.hpp"
#include "sumrule/potential.hpp"
#include "sumrule/rates.hpp"
#include "sumrule/rng.hpp"

using namespace sumrule;

struct sr_measure {
  std::variant<MeasureLine, MeasureCircle> m;

  const MeasureLine& line() const {
    if (!std::holds_alternative<MeasureLine>(m))
      throw domain_error("operation requires a measure on the line");
    return std::get<MeasureLine>(m);
  }
  const MeasureCircle& circle() const {
    if (!std::holds_alternative<MeasureCircle>(m))
      throw domain_error("operation requires a measure on the circle");
    return std::get<MeasureCircle>(m);
  }
};

struct sr_jacobi {
  JacobiCoeffs j;
};

struct sr_rng {
  Rng r;
};

struct sr_qv {
  MomentPolynomial q;
};

namespace {

thread_local std::string g_last_error;

sr_status fail(sr_status code, const char* what) {
  g_last_error = what;
  return code;
}

template <typename F>
sr_status guard(F&& f) {
  try {
    f();
    return SR_OK;
  } catch (const domain_error& e) {
    return fail(SR_ERR_DOMAIN, e.what());
  } catch (const validation_error& e) {
    return fail(SR_ERR_VALIDATION, e.what());
  } catch (const accuracy_error& e) {
    return fail(SR_ERR_ACCURACY, e.what());
  } catch (const numeric_error& e) {
    return fail(SR_ERR_NUMERIC, e.what());
  } catch (const std::exception& e) {
    return fail(SR_ERR_INTERNAL, e.what());
  }
}

sr_status require(bool ok, const char* what) {
  return ok ? SR_OK : fail(SR_ERR_NULLPTR, what);
}

std::vector<std::complex<double>> pack_complex(const double* re,
                                               const double* im, int n) {
  std::vector<std::complex<double>> v(n);
  for (int i = 0; i < n; ++i) v[i] = {re[i], im ? im[i] : 0.0};
  return v;
}

void fill_report(const RateReport& rep, sr_audit_report* out) {
  out->measure_side = rep.measure_side;
  out->coeff_side = rep.coeff_side;
  out->kl_term = rep.kl_term;
  out->discrepancy = rep.discrepancy;
  out->n_outliers = static_cast<int>(
      std::min<size_t>(rep.outlier_terms.size(), SR_AUDIT_MAX_OUTLIERS));
  for (int i = 0; i < out->n_outliers; ++i) {
    out->outlier_location[i] = rep.outlier_terms[i].first;
    out->outlier_value[i] = rep.outlier_terms[i].second;
  }
}

sr_status copy_string(const std::string& s, char* buf, size_t buflen) {
  if (!buf) return fail(SR_ERR_NULLPTR, "null buffer");
  if (s.size() + 1 > buflen)
    return fail(SR_ERR_BUFFER, "buffer too small");
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return SR_OK;
}

}  // namespace

extern "C" {

const char* sr_status_name(sr_status s) {
  switch (s) {
    case SR_OK: return "ok";
    case SR_ERR_DOMAIN: return "domain error";
    case SR_ERR_VALIDATION: return "validation error";
    case SR_ERR_NUMERIC: return "numeric error";
    case SR_ERR_ACCURACY: return "accuracy error";
    case SR_ERR_NULLPTR: return "null pointer";
    case SR_ERR_BUFFER: return "buffer too small";
    default: return "internal error";
  }
}

const char* sr_last_error(void) { return g_last_error.c_str(); }

/* ---- laws ---- */

sr_status sr_law_sc(sr_measure** out) {
  if (auto s = require(out, "null output"); s != SR_OK) return s;
  return guard([&] { *out = new sr_measure{semicircle()}; });
}

sr_status sr_law_mp(double tau, sr_measure** out) {
  if (auto s = require(out, "null output"); s != SR_OK) return s;
  return guard([&] { *out = new sr_measure{marchenko_pastur(tau)}; });
}

sr_status sr_law_gw(double g, sr_measure** out) {
  if (auto s = require(out, "null output"); s != SR_OK) return s;
  return guard([&] { *out = new sr_measure{gross_witten(g)}; });
}

sr_status sr_law_lebesgue_circle(sr_measure** out) {
  if (auto s = require(out, "null output"); s != SR_OK) return s;
  return guard([&] { *out = new sr_measure{lebesgue_circle()}; });
}

sr_status sr_law_spiked_sc(double theta, sr_measure** out) {
  if (auto s = require(out, "null output"); s != SR_OK) return s;
  return guard([&] { *out = new sr_measure{spiked_semicircle(theta)}; });
}

sr_status sr_law_spiked_mp(double tau, double theta, sr_measure** out) {
  if (auto s = require(out, "null output"); s != SR_OK) return s;
  return guard([&] { *out = new sr_measure{spiked_mp(tau, theta)}; });
}

sr_status sr_law_spiked_gw(double g, double phi, sr_measure** out) {
  if (auto s = require(out, "null output"); s != SR_OK) return s;
  return guard([&] { *out = new sr_measure{spiked_gw(g, phi)}; });
}

sr_status sr_law_meixner(double b, double c, int normalized, sr_measure** out) {
  if (auto s = require(out, "null output"); s != SR_OK) return s;
  return guard([&] {
    *out = new sr_measure{normalized ? meixner_normalized(b, c)
                                     : meixner(b, c)};
  });
}

void sr_measure_free(sr_measure* m) { delete m; }

/* ---- measure queries ---- */

int sr_measure_on_circle(const sr_measure* m) {
  return m && std::holds_alternative<MeasureCircle>(m->m) ? 1 : 0;
}

sr_status sr_measure_mass(const sr_measure* m, double* mass) {
  if (auto s = require(m && mass, "null argument"); s != SR_OK) return s;
  return guard([&] {
    *mass = std::holds_alternative<MeasureLine>(m->m) ? m->line().mass()
                                                      : m->circle().mass();
  });
}

sr_status sr_measure_support(const sr_measure* m, double* lo, double* hi) {
  if (auto s = require(m && lo && hi, "null argument"); s != SR_OK) return s;
  return guard([&] {
    if (std::holds_alternative<MeasureLine>(m->m)) {
      *lo = m->line().lo();
      *hi = m->line().hi();
    } else {
      *lo = -M_PI;
      *hi = M_PI;
    }
  });
}

sr_status sr_measure_density(const sr_measure* m, double x, double* value) {
  if (auto s = require(m && value, "null argument"); s != SR_OK) return s;
  return guard([&] {
    *value = std::holds_alternative<MeasureLine>(m->m) ? m->line().density(x)
                                                       : m->circle().density(x);
  });
}

sr_status sr_measure_atom_count(const sr_measure* m, int* count) {
  if (auto s = require(m && count, "null argument"); s != SR_OK) return s;
  return guard([&] {
    *count = static_cast<int>(std::holds_alternative<MeasureLine>(m->m)
                                  ? m->line().atoms().size()
                                  : m->circle().atoms().size());
  });
}

sr_status sr_measure_atom(const sr_measure* m, int index, double* location,
                          double* mass) {
  if (auto s = require(m && location && mass, "null argument"); s != SR_OK)
    return s;
  return guard([&] {
    const auto& atoms = std::holds_alternative<MeasureLine>(m->m)
                            ? m->line().atoms()
                            : m->circle().atoms();
    if (index < 0 || index >= static_cast<int>(atoms.size()))
      throw domain_error("atom index out of range");
    *location = atoms[index].location;
    *mass = atoms[index].mass;
  });
}

sr_status sr_moments_line(const sr_measure* m, int K, double* out) {
  if (auto s = require(m && out, "null argument"); s != SR_OK) return s;
  return guard([&] {
    const auto v = m->line().moments(K);
    std::copy(v.begin(), v.end(), out);
  });
}

sr_status sr_moments_circle(const sr_measure* m, int K, double* out_re,
                            double* out_im) {
  if (auto s = require(m && out_re && out_im, "null argument"); s != SR_OK)
    return s;
  return guard([&] {
    const auto v = m->circle().moments(K);
    for (int k = 0; k < K; ++k) {
      out_re[k] = v[k].real();
      out_im[k] = v[k].imag();
    }
  });
}

sr_status sr_affine_map(const sr_measure* m, double r, double s,
                        sr_measure** out) {
  if (auto st = require(m && out, "null argument"); st != SR_OK) return st;
  return guard([&] { *out = new sr_measure{affine_map(m->line(), r, s)}; });
}

sr_status sr_meixner_classify(double b, double c, char* buf, size_t buflen) {
  std::string name;
  if (auto s = guard([&] { name = meixner_classify(b, c); }); s != SR_OK)
    return s;
  return copy_string(name, buf, buflen);
}

sr_status sr_meixner_atoms(double b, double c, double* locations,
                           double* masses, int capacity, int* count) {
  if (auto s = require(locations && masses && count, "null argument");
      s != SR_OK)
    return s;
  return guard([&] {
    const auto atoms = meixner_atoms(b, c);
    if (static_cast<int>(atoms.size()) > capacity)
      throw error("atom buffer too small");
    *count = static_cast<int>(atoms.size());
    for (int i = 0; i < *count; ++i) {
      locations[i] = atoms[i].location;
      masses[i] = atoms[i].mass;
    }
  });
}

/* ---- Jacobi ---- */

sr_status sr_jacobi_create(const double* b, int nb, const double* a, int na,
                           sr_jacobi** out) {
  if (auto s = require(b && out && (na == 0 || a), "null argument");
      s != SR_OK)
    return s;
  return guard([&] {
    *out = new sr_jacobi{JacobiCoeffs(std::vector<double>(b, b + nb),
                                      std::vector<double>(a, a + na))};
  });
}

sr_status sr_jacobi_create_tail(const double* b, int nb, const double* a,
                                int na, double tail_b, double tail_a,
                                sr_jacobi** out) {
  if (auto s = require(b && out && (na == 0 || a), "null argument");
      s != SR_OK)
    return s;
  return guard([&] {
    *out = new sr_jacobi{JacobiCoeffs(std::vector<double>(b, b + nb),
                                      std::vector<double>(a, a + na),
                                      JacobiTail{tail_b, tail_a})};
  });
}

void sr_jacobi_free(sr_jacobi* j) { delete j; }

sr_status sr_jacobi_size(const sr_jacobi* j, int* prefix, int* has_tail) {
  if (auto s = require(j && prefix && has_tail, "null argument"); s != SR_OK)
    return s;
  *prefix = j->j.prefix_size();
  *has_tail = j->j.has_tail() ? 1 : 0;
  return SR_OK;
}

sr_status sr_jacobi_entry(const sr_jacobi* j, int k, double* b, double* a) {
  if (auto s = require(j && b && a, "null argument"); s != SR_OK) return s;
  return guard([&] {
    *b = j->j.b(k);
    *a = (k < j->j.max_index() || j->j.has_tail() ||
          static_cast<int>(j->j.a_prefix().size()) >= k)
             ? j->j.a(k)
             : 0.0;
  });
}

sr_status sr_lanczos(const double* points, const double* weights, int npoints,
                     int depth, sr_jacobi** out) {
  if (auto s = require(points && weights && out, "null argument"); s != SR_OK)
    return s;
  return guard([&] {
    QuadratureMeasure mu(std::vector<double>(points, points + npoints),
                         std::vector<double>(weights, weights + npoints));
    *out = new sr_jacobi{lanczos(mu, depth)};
  });
}

sr_status sr_golub_welsch(const sr_jacobi* j, int n, double* points,
                          double* weights) {
  if (auto s = require(j && points && weights, "null argument"); s != SR_OK)
    return s;
  return guard([&] {
    const QuadratureMeasure mu = golub_welsch(j->j, n);
    std::copy(mu.points().begin(), mu.points().end(), points);
    std::copy(mu.weights().begin(), mu.weights().end(), weights);
  });
}

sr_status sr_jacobi_moments(const sr_jacobi* j, int K, double* out) {
  if (auto s = require(j && out, "null argument"); s != SR_OK) return s;
  return guard([&] {
    const auto v = jacobi_moments(j->j, K);
    std::copy(v.begin(), v.end(), out);
  });
}

sr_status sr_jacobi_affine(const sr_jacobi* j, double r, double s,
                           sr_jacobi** out) {
  if (auto st = require(j && out, "null argument"); st != SR_OK) return st;
  return guard([&] { *out = new sr_jacobi{jacobi_affine(j->j, r, s)}; });
}

sr_status sr_z_decompose(const sr_jacobi* j, double* z, int capacity,
                         int* count) {
  if (auto s = require(j && z && count, "null argument"); s != SR_OK) return s;
  return guard([&] {
    const ZCoeffs Z = z_decompose(j->j);
    if (static_cast<int>(Z.z.size()) > capacity)
      throw error("z buffer too small");
    *count = static_cast<int>(Z.z.size());
    std::copy(Z.z.begin(), Z.z.end(), z);
  });
}

sr_status sr_z_compose(const double* z, int nz, sr_jacobi** out) {
  if (auto s = require(z && out, "null argument"); s != SR_OK) return s;
  return guard([&] {
    ZCoeffs Z;
    Z.z.assign(z, z + nz);
    *out = new sr_jacobi{z_compose(Z)};
  });
}

sr_status sr_discretize(const sr_measure* m, int nodes, double* points,
                        double* weights, int capacity, int* count) {
  if (auto s = require(m && points && weights && count, "null argument");
      s != SR_OK)
    return s;
  return guard([&] {
    const QuadratureMeasure mu = discretize(m->line(), nodes);
    if (mu.size() > capacity) throw error("discretize buffer too small");
    *count = mu.size();
    std::copy(mu.points().begin(), mu.points().end(), points);
    std::copy(mu.weights().begin(), mu.weights().end(), weights);
  });
}

/* ---- OPUC ---- */

sr_status sr_gw_alpha(double g, int n, double* re, double* im) {
  if (auto s = require(re && im, "null argument"); s != SR_OK) return s;
  return guard([&] {
    const auto a = gw_alpha(g, n);
    *re = a.real();
    *im = a.imag();
  });
}

sr_status sr_schur_verblunsky(const double* c_re, const double* c_im, int K,
                              double* a_re, double* a_im, int* count,
                              int* finite) {
  if (auto s = require(c_re && c_im && a_re && a_im && count && finite,
                       "null argument");
      s != SR_OK)
    return s;
  return guard([&] {
    const auto c = pack_complex(c_re, c_im, K);
    const VerblunskyCoeffs a = schur_verblunsky(c);
    *count = a.size();
    *finite = a.finite() ? 1 : 0;
    for (int i = 0; i < a.size(); ++i) {
      a_re[i] = a[i].real();
      a_im[i] = a[i].imag();
    }
  });
}

sr_status sr_verblunsky_moments(const double* a_re, const double* a_im, int n,
                                int K, double* c_re, double* c_im) {
  if (auto s = require(a_re && a_im && c_re && c_im, "null argument");
      s != SR_OK)
    return s;
  return guard([&] {
    VerblunskyCoeffs a(pack_complex(a_re, a_im, n));
    const auto c = verblunsky_moments(a, K);
    for (int k = 0; k < K; ++k) {
      c_re[k] = c[k].real();
      c_im[k] = c[k].imag();
    }
  });
}

sr_status sr_caratheodory(const sr_measure* m, double z_re, double z_im,
                          double* f_re, double* f_im) {
  if (auto s = require(m && f_re && f_im, "null argument"); s != SR_OK)
    return s;
  return guard([&] {
    const auto F = caratheodory(m->circle(), {z_re, z_im});
    *f_re = F.real();
    *f_im = F.imag();
  });
}

sr_status sr_aleksandrov_measure(const sr_measure* m, double phi,
                                 sr_measure** out) {
  if (auto s = require(m && out, "null argument"); s != SR_OK) return s;
  return guard(
      [&] { *out = new sr_measure{aleksandrov_measure(m->circle(), phi)}; });
}

/* ---- rates ---- */

double sr_g_func(double x) { return g_func(x); }
double sr_f_hermite(double x) { return f_hermite(x); }

sr_status sr_f_laguerre(double x, double tau, double* out) {
  if (auto s = require(out, "null argument"); s != SR_OK) return s;
  return guard([&] {
    const double hi = (1.0 + std::sqrt(tau)) * (1.0 + std::sqrt(tau));
    *out = x >= hi ? f_laguerre_plus(x, tau) : f_laguerre_minus(x, tau);
  });
}

double sr_kl_gw_lambda0(double g) { return kl_gw_lambda0(g); }

sr_status sr_reversed_kl(const sr_measure* ref, const sr_measure* mu,
                         double* out) {
  if (auto s = require(ref && mu && out, "null argument"); s != SR_OK)
    return s;
  return guard([&] {
    if (std::holds_alternative<MeasureLine>(ref->m))
      *out = reversed_kl_line(ref->line(), mu->line());
    else
      *out = kl_circle(ref->circle(), mu->circle());
  });
}

sr_status sr_rate_meas_hermite(const sr_measure* mu, double* out) {
  if (auto s = require(mu && out, "null argument"); s != SR_OK) return s;
  return guard([&] { *out = rate_meas_hermite(mu->line()); });
}

sr_status sr_rate_meas_laguerre(const sr_measure* mu, double tau, double* out) {
  if (auto s = require(mu && out, "null argument"); s != SR_OK) return s;
  return guard([&] { *out = rate_meas_laguerre(mu->line(), tau); });
}

sr_status sr_rate_meas_gw(const sr_measure* mu, double g, double* out) {
  if (auto s = require(mu && out, "null argument"); s != SR_OK) return s;
  return guard([&] { *out = rate_meas_gw(mu->circle(), g); });
}

sr_status sr_rate_coeff_hermite(const sr_jacobi* j, double* out) {
  if (auto s = require(j && out, "null argument"); s != SR_OK) return s;
  return guard([&] { *out = rate_coeff_hermite(j->j); });
}

sr_status sr_rate_coeff_gw(const double* a_re, const double* a_im, int n,
                           double g, double* out) {
  if (auto s = require(a_re && a_im && out, "null argument"); s != SR_OK)
    return s;
  return guard([&] {
    VerblunskyCoeffs a(pack_complex(a_re, a_im, n));
    *out = rate_coeff_gw(a, g);
  });
}

sr_status sr_rate_spiked_hermite(const sr_measure* mu, double theta,
                                 double* out) {
  if (auto s = require(mu && out, "null argument"); s != SR_OK) return s;
  return guard([&] { *out = rate_spiked_hermite(mu->line(), theta); });
}

sr_status sr_rate_spiked_laguerre(const sr_measure* mu, double tau,
                                  double theta, double* out) {
  if (auto s = require(mu && out, "null argument"); s != SR_OK) return s;
  return guard([&] { *out = rate_spiked_laguerre(mu->line(), tau, theta); });
}

sr_status sr_rate_spiked_gw(const sr_measure* mu, double g, double phi,
                            double* out) {
  if (auto s = require(mu && out, "null argument"); s != SR_OK) return s;
  return guard([&] { *out = rate_spiked_gw(mu->circle(), g, phi); });
}

/* ---- audits ---- */

sr_status sr_audit_hermite_spiked(double theta, sr_audit_report* out) {
  if (auto s = require(out, "null argument"); s != SR_OK) return s;
  return guard([&] { fill_report(audit_hermite_spiked(theta), out); });
}

sr_status sr_audit_laguerre_spiked(double tau, double theta,
                                   sr_audit_report* out) {
  if (auto s = require(out, "null argument"); s != SR_OK) return s;
  return guard([&] { fill_report(audit_laguerre_spiked(tau, theta), out); });
}

sr_status sr_audit_meixner(double b, double c, sr_audit_report* out) {
  if (auto s = require(out, "null argument"); s != SR_OK) return s;
  return guard([&] { fill_report(audit_meixner(b, c), out); });
}

sr_status sr_audit_szego_gw(double g, int terms, sr_audit_report* out) {
  if (auto s = require(out, "null argument"); s != SR_OK) return s;
  return guard([&] { fill_report(audit_szego_gw(g, terms), out); });
}

sr_status sr_audit_gw_lambda0(double g, sr_audit_report* out) {
  if (auto s = require(out, "null argument"); s != SR_OK) return s;
  return guard([&] { fill_report(audit_gw_lambda0(g), out); });
}

/* ---- ensembles ---- */

sr_status sr_rng_create(uint64_t seed, uint64_t stream, sr_rng** out) {
  if (auto s = require(out, "null argument"); s != SR_OK) return s;
  return guard([&] { *out = new sr_rng{Rng(seed, stream)}; });
}

void sr_rng_free(sr_rng* r) { delete r; }

sr_status sr_sample_spiked_gue(int n, double theta, sr_rng* rng,
                               sr_jacobi** out) {
  if (auto s = require(rng && out, "null argument"); s != SR_OK) return s;
  return guard([&] {
    *out = new sr_jacobi{sample_spiked_gue(n, theta, rng->r).jacobi};
  });
}

sr_status sr_sample_spiked_lue(int n, int N, double theta, sr_rng* rng,
                               sr_jacobi** out) {
  if (auto s = require(rng && out, "null argument"); s != SR_OK) return s;
  return guard([&] {
    *out = new sr_jacobi{sample_spiked_lue(n, N, theta, rng->r).jacobi()};
  });
}

sr_status sr_sample_cue(int n, sr_rng* rng, double* a_re, double* a_im) {
  if (auto s = require(rng && a_re && a_im, "null argument"); s != SR_OK)
    return s;
  return guard([&] {
    const VerblunskyCoeffs a = sample_cue_verblunsky(n, rng->r);
    for (int i = 0; i < n; ++i) {
      a_re[i] = a[i].real();
      a_im[i] = a[i].imag();
    }
  });
}

sr_status sr_sample_gw(int n, double g, int sweeps, sr_rng* rng, double* a_re,
                       double* a_im, double* acceptance) {
  if (auto s = require(rng && a_re && a_im && acceptance, "null argument");
      s != SR_OK)
    return s;
  return guard([&] {
    const GrossWittenSample smp = sample_gw_verblunsky(n, g, rng->r, sweeps);
    for (int i = 0; i < n; ++i) {
      a_re[i] = smp.alpha[i].real();
      a_im[i] = smp.alpha[i].imag();
    }
    *acceptance = smp.mcmc.acceptance;
  });
}

sr_status sr_spectral_measure(const sr_jacobi* j, int n, double* points,
                              double* weights) {
  return sr_golub_welsch(j, n, points, weights);
}

sr_status sr_spectral_measure_verblunsky(const double* a_re,
                                         const double* a_im, int n,
                                         double* angles, double* weights) {
  if (auto s = require(a_re && a_im && angles && weights, "null argument");
      s != SR_OK)
    return s;
  return guard([&] {
    VerblunskyCoeffs a(pack_complex(a_re, a_im, n), true);
    const QuadratureMeasure mu = spectral_measure_verblunsky(a);
    std::copy(mu.points().begin(), mu.points().end(), angles);
    std::copy(mu.weights().begin(), mu.weights().end(), weights);
  });
}

/* ---- Q_V ---- */

sr_status sr_qv_reduce(const double* v, int degree, sr_qv** out) {
  if (auto s = require(v && out, "null argument"); s != SR_OK) return s;
  return guard([&] {
    *out = new sr_qv{qv_reduce(std::span<const double>(v, degree + 1))};
  });
}

void sr_qv_free(sr_qv* q) { delete q; }

int sr_qv_term_count(const sr_qv* q) {
  return q ? static_cast<int>(q->q.terms().size()) : 0;
}

sr_status sr_qv_term(const sr_qv* q, int index, double* coeff, int* theta_pow,
                     int* moment_js, int capacity, int* n_moments) {
  if (auto s = require(q && coeff && theta_pow && moment_js && n_moments,
                       "null argument");
      s != SR_OK)
    return s;
  return guard([&] {
    const auto& terms = q->q.terms();
    if (index < 0 || index >= static_cast<int>(terms.size()))
      throw domain_error("term index out of range");
    const QvTerm& t = terms[index];
    if (static_cast<int>(t.moments.size()) > capacity)
      throw error("moment buffer too small");
    *coeff = t.coeff;
    *theta_pow = t.theta_pow;
    *n_moments = static_cast<int>(t.moments.size());
    std::copy(t.moments.begin(), t.moments.end(), moment_js);
  });
}

sr_status sr_qv_format(const sr_qv* q, char* buf, size_t buflen) {
  if (auto s = require(q, "null argument"); s != SR_OK) return s;
  std::string text;
  if (auto s = guard([&] { text = q->q.format(); }); s != SR_OK) return s;
  return copy_string(text, buf, buflen);
}

sr_status sr_qv_check_random(const sr_qv* q, const double* v, int degree,
                             int trials, int size, uint64_t seed,
                             double* max_residual) {
  if (auto s = require(q && v && max_residual, "null argument"); s != SR_OK)
    return s;
  return guard([&] {
    double worst = 0.0;
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
      const Eigen::MatrixXcd M = random_hermitian(size, rng.next_u64());
      const double theta = 4.0 * rng.uniform() - 2.0;
      const QvCheckResult r =
          qv_check(q->q, std::span<const double>(v, degree + 1), M, theta);
      worst = std::max(worst, std::abs(r.diff));
    }
    *max_residual = worst;
  });
}

}  // extern "C"
