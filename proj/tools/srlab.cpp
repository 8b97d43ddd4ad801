// srlab: reproducible experiment driver over the sumrule C API.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sumrule.h"

using json = nlohmann::ordered_json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// short form for labels
std::string fmtg(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// order-independent summation for summaries
double pairwise_sum(const std::vector<double>& v, size_t lo, size_t hi) {
  if (hi - lo == 1) return v[lo];
  const size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

double mean_of(const std::vector<double>& v) {
  return pairwise_sum(v, 0, v.size()) / static_cast<double>(v.size());
}

double stderr_of(const std::vector<double>& v, double mean) {
  std::vector<double> sq(v.size());
  for (size_t i = 0; i < v.size(); ++i) sq[i] = (v[i] - mean) * (v[i] - mean);
  const double var = pairwise_sum(sq, 0, sq.size()) /
                     std::max<double>(1.0, static_cast<double>(v.size() - 1));
  return std::sqrt(var / static_cast<double>(v.size()));
}

struct Table {
  std::vector<std::string> columns;
  std::vector<json> rows;  // each row: array aligned with columns

  void add(std::initializer_list<json> cells) { rows.emplace_back(cells); }
};

void write_output(const Table& table, const std::string& command,
                  const std::string& out_path, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    json doc;
    doc["command"] = command;
    doc["rows"] = json::array();
    for (const auto& row : table.rows) {
      json obj;
      for (size_t c = 0; c < table.columns.size(); ++c)
        obj[table.columns[c]] = row[c];
      doc["rows"].push_back(obj);
    }
    os << doc.dump(2) << "\n";
  } else {
    for (size_t c = 0; c < table.columns.size(); ++c)
      os << (c ? "," : "") << table.columns[c];
    os << "\n";
    for (const auto& row : table.rows) {
      for (size_t c = 0; c < row.size(); ++c) {
        if (c) os << ",";
        if (row[c].is_number_float())
          os << fmt(row[c].get<double>());
        else if (row[c].is_number_integer())
          os << row[c].get<long long>();
        else
          os << row[c].get<std::string>();
      }
      os << "\n";
    }
  }
  if (out_path.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(out_path, std::ios::binary);
    f << os.str();
  }
}

[[noreturn]] void api_fail(const char* where, sr_status s) {
  std::cerr << "srlab: " << where << ": " << sr_status_name(s) << ": "
            << sr_last_error() << "\n";
  std::exit(2);
}

void check(sr_status s, const char* where) {
  if (s != SR_OK) api_fail(where, s);
}

struct AuditCase {
  std::string name;
  double tol;
  sr_audit_report rep;
};

int run_sumrule(const std::string& which, double b, double c, double g,
                double theta, double tau, double tol_override,
                const std::string& out, const std::string& format) {
  std::vector<AuditCase> cases;
  const bool all = which.empty();
  if (all || which == "hermite") {
    AuditCase ac{"hermite-spiked theta=" + fmtg(all ? 2.0 : theta), 1e-6, {}};
    check(sr_audit_hermite_spiked(all ? 2.0 : theta, &ac.rep), "hermite");
    cases.push_back(ac);
  }
  if (all || which == "laguerre") {
    const double t = all ? 0.5 : tau, th = all ? 2.0 : theta;
    AuditCase ac{"laguerre-spiked tau=" + fmtg(t) + " theta=" + fmtg(th), 1e-5, {}};
    check(sr_audit_laguerre_spiked(t, th, &ac.rep), "laguerre");
    cases.push_back(ac);
  }
  if (all) {
    for (auto [bb, cc] : {std::pair<double, double>{0.0, -0.75},
                          {0.5, 0.0},
                          {0.0, 0.5}}) {
      AuditCase ac{"meixner b=" + fmtg(bb) + " c=" + fmtg(cc), 1e-5, {}};
      check(sr_audit_meixner(bb, cc, &ac.rep), "meixner");
      cases.push_back(ac);
    }
  } else if (which == "meixner") {
    AuditCase ac{"meixner b=" + fmtg(b) + " c=" + fmtg(c), 1e-5, {}};
    check(sr_audit_meixner(b, c, &ac.rep), "meixner");
    cases.push_back(ac);
  }
  if (all || which == "szego-gw") {
    const double gg = all ? 0.8 : g;
    AuditCase ac{"szego-gw g=" + fmtg(gg), 1e-8, {}};
    check(sr_audit_szego_gw(gg, 201, &ac.rep), "szego-gw");
    cases.push_back(ac);
  }
  if (all || which == "gw") {
    const double gg = all ? 0.8 : g;
    AuditCase ac{"gw-at-lambda0 g=" + fmtg(gg), 1e-8, {}};
    check(sr_audit_gw_lambda0(gg, &ac.rep), "gw");
    cases.push_back(ac);
  }
  if (cases.empty()) {
    std::cerr << "srlab: unknown sum-rule case '" << which
              << "' (hermite|laguerre|meixner|szego-gw|gw)\n";
    return 2;
  }

  Table t;
  t.columns = {"case",      "measure_side", "coeff_side", "kl_term",
               "outliers",  "discrepancy",  "tol",        "pass"};
  int failures = 0;
  for (auto& ac : cases) {
    const double tol = tol_override > 0 ? tol_override : ac.tol;
    const bool pass = ac.rep.discrepancy <= tol;
    if (!pass) ++failures;
    std::string outliers;
    for (int i = 0; i < ac.rep.n_outliers; ++i) {
      if (i) outliers += " ";
      outliers += "F(" + fmtg(ac.rep.outlier_location[i]) +
                  ")=" + fmt(ac.rep.outlier_value[i]);
    }
    t.add({ac.name, ac.rep.measure_side, ac.rep.coeff_side, ac.rep.kl_term,
           outliers, ac.rep.discrepancy, tol, pass ? "yes" : "no"});
  }
  write_output(t, "sumrule", out, format);
  return failures == 0 ? 0 : 1;
}

int run_mc_spike(const std::string& model, int n, int N_opt, double theta,
                 double tau, int replicas, std::uint64_t seed,
                 const std::string& dump_spectral, const std::string& out,
                 const std::string& format) {
  const bool hermite = model == "hermite";
  if (!hermite && model != "laguerre") {
    std::cerr << "srlab: --model must be hermite or laguerre\n";
    return 2;
  }
  const int N = N_opt > 0 ? N_opt : static_cast<int>(std::lround(n / tau));
  std::vector<double> tops(replicas), wts(replicas), m1s(replicas);
  std::vector<double> pts(n), w(n);
  for (int i = 0; i < replicas; ++i) {
    sr_rng* rng = nullptr;
    check(sr_rng_create(seed, static_cast<std::uint64_t>(i), &rng), "rng");
    sr_jacobi* j = nullptr;
    if (hermite)
      check(sr_sample_spiked_gue(n, theta, rng, &j), "sample");
    else
      check(sr_sample_spiked_lue(n, N, theta, rng, &j), "sample");
    check(sr_spectral_measure(j, n, pts.data(), w.data()), "spectral");
    tops[i] = pts[n - 1];
    wts[i] = w[n - 1];
    double m1 = 0.0;
    for (int k = 0; k < n; ++k) m1 += w[k] * pts[k];
    m1s[i] = m1;
    if (i == 0 && !dump_spectral.empty()) {
      std::ofstream f(dump_spectral, std::ios::binary);
      f << "point,weight\n";
      for (int k = 0; k < n; ++k) f << fmt(pts[k]) << "," << fmt(w[k]) << "\n";
    }
    sr_jacobi_free(j);
    sr_rng_free(rng);
  }

  Table t;
  t.columns = {"row", "top_point", "top_weight", "m1",
               "tol_top", "tol_weight", "tol_m1"};
  for (int i = 0; i < replicas; ++i)
    t.add({i + 1, tops[i], wts[i], m1s[i], 0.0, 0.0, 0.0});
  const double mt = mean_of(tops), mw = mean_of(wts), mm = mean_of(m1s);
  const double st = stderr_of(tops, mt), sw = stderr_of(wts, mw),
               sm = stderr_of(m1s, mm);
  // summary tolerances: four standard errors of the mean
  t.add({"mean", mt, mw, mm, 4.0 * st, 4.0 * sw, 4.0 * sm});
  t.add({"stderr", st, sw, sm, 0.0, 0.0, 0.0});
  write_output(t, "mc-spike", out, format);
  return 0;
}

int run_verblunsky(double g, int kmax, double tol, const std::string& out,
                   const std::string& format) {
  sr_measure* gw = nullptr;
  check(sr_law_gw(g, &gw), "law gw");
  const int K = kmax + 1;
  std::vector<double> cre(K), cim(K), are(K), aim(K);
  check(sr_moments_circle(gw, K, cre.data(), cim.data()), "moments");
  sr_measure_free(gw);
  int count = 0, finite = 0;
  check(sr_schur_verblunsky(cre.data(), cim.data(), K, are.data(), aim.data(),
                            &count, &finite),
        "schur");
  Table t;
  t.columns = {"n",       "alpha_closed_re", "alpha_closed_im",
               "alpha_schur_re", "alpha_schur_im", "abs_diff", "tol", "pass"};
  int failures = 0;
  for (int nn = 0; nn <= kmax && nn < count; ++nn) {
    double re = 0.0, im = 0.0;
    check(sr_gw_alpha(g, nn, &re, &im), "gw_alpha");
    const double diff = std::hypot(are[nn] - re, aim[nn] - im);
    const bool pass = diff <= tol;
    if (!pass) ++failures;
    t.add({nn, re, im, are[nn], aim[nn], diff, tol, pass ? "yes" : "no"});
  }
  write_output(t, "verblunsky", out, format);
  return failures == 0 ? 0 : 1;
}

int run_qv(int degree, const std::vector<double>& coeffs, int trials, int size,
           std::uint64_t seed, double tol, const std::string& out,
           const std::string& format) {
  std::vector<double> v = coeffs;
  if (v.empty()) {
    v.assign(degree + 1, 0.0);
    v[degree] = 1.0;  // monomial x^degree
  }
  sr_qv* q = nullptr;
  const sr_status st = sr_qv_reduce(v.data(), static_cast<int>(v.size()) - 1, &q);
  if (st != SR_OK) api_fail("qv_reduce", st);
  Table t;
  t.columns = {"kind", "coeff", "theta_pow", "moments", "tol", "pass"};
  for (int i = 0; i < sr_qv_term_count(q); ++i) {
    double coeff = 0.0;
    int tp = 0, njs = 0, js[16];
    check(sr_qv_term(q, i, &coeff, &tp, js, 16, &njs), "qv_term");
    std::string moms;
    for (int k = 0; k < njs; ++k)
      moms += (k ? " m" : "m") + std::to_string(js[k]);
    t.add({"term", coeff, tp, moms.empty() ? "1" : moms, 0.0, "yes"});
  }
  double resid = 0.0;
  check(sr_qv_check_random(q, v.data(), static_cast<int>(v.size()) - 1, trials,
                           size, seed, &resid),
        "qv_check");
  const bool pass = resid <= tol;
  t.add({"max_residual", resid, 0, "", tol, pass ? "yes" : "no"});
  char buf[512];
  if (sr_qv_format(q, buf, sizeof buf) == SR_OK)
    t.add({"polynomial", 0.0, 0, std::string(buf), 0.0, "yes"});
  sr_qv_free(q);
  write_output(t, "qv", out, format);
  return pass ? 0 : 1;
}

int run_laws(const std::string& law, double theta, double tau, double g,
             double phi, double b, double c, int grid, int discretize_n,
             const std::string& out, const std::string& format) {
  sr_measure* m = nullptr;
  sr_status st = SR_ERR_DOMAIN;
  if (law == "sc") st = sr_law_sc(&m);
  else if (law == "mp") st = sr_law_mp(tau, &m);
  else if (law == "gw") st = sr_law_gw(g, &m);
  else if (law == "lebesgue") st = sr_law_lebesgue_circle(&m);
  else if (law == "spiked-sc") st = sr_law_spiked_sc(theta, &m);
  else if (law == "spiked-mp") st = sr_law_spiked_mp(tau, theta, &m);
  else if (law == "spiked-gw") st = sr_law_spiked_gw(g, phi, &m);
  else if (law == "meixner") st = sr_law_meixner(b, c, 0, &m);
  else if (law == "meixner-norm") st = sr_law_meixner(b, c, 1, &m);
  else {
    std::cerr << "srlab: unknown law '" << law << "'\n";
    return 2;
  }
  if (st != SR_OK) api_fail("law", st);

  if (discretize_n > 0) {
    // quadrature-measure serialization: columns point,weight
    std::vector<double> pts(discretize_n + 16), wts(discretize_n + 16);
    int count = 0;
    check(sr_discretize(m, discretize_n, pts.data(), wts.data(),
                        static_cast<int>(pts.size()), &count),
          "discretize");
    Table t;
    t.columns = {"point", "weight"};
    for (int i = 0; i < count; ++i) t.add({pts[i], wts[i]});
    write_output(t, "laws-discretize", out, format);
    sr_measure_free(m);
    return 0;
  }

  Table t;
  t.columns = {"kind", "x", "value", "tol", "pass"};
  double mass = 0.0;
  check(sr_measure_mass(m, &mass), "mass");
  t.add({"mass", 0.0, mass, 1e-8, std::abs(mass - 1.0) <= 1e-8 ? "yes" : "no"});
  double lo = 0.0, hi = 0.0;
  check(sr_measure_support(m, &lo, &hi), "support");
  int natoms = 0;
  check(sr_measure_atom_count(m, &natoms), "atoms");
  for (int i = 0; i < natoms; ++i) {
    double loc = 0.0, am = 0.0;
    check(sr_measure_atom(m, i, &loc, &am), "atom");
    t.add({"atom", loc, am, 0.0, "yes"});
  }
  for (int i = 0; i < grid; ++i) {
    const double x = lo + (hi - lo) * (i + 0.5) / grid;
    double d = 0.0;
    check(sr_measure_density(m, x, &d), "density");
    t.add({"density", x, d, 0.0, "yes"});
  }
  sr_measure_free(m);
  write_output(t, "laws", out, format);
  return std::abs(mass - 1.0) <= 1e-8 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sum-rule laboratory for rank-one-spiked matrix ensembles"};
  app.require_subcommand(1);

  std::string out, format = "csv";
  std::uint64_t seed = 42;
  double theta = 2.0, tau = 0.5, g = 0.8, phi = 0.0, b = 0.0, c = 0.0;
  double tol = -1.0;
  int n = 500, replicas = 200;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out, "output path (default stdout)")
        ->envname("SRLAB_OUT");
    cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->envname("SRLAB_FORMAT");
  };

  auto* sum = app.add_subcommand("sumrule", "two-sided sum-rule audits");
  std::string which;
  sum->add_option("--case", which, "hermite|laguerre|meixner|szego-gw|gw");
  sum->add_option("--b", b, "Meixner b");
  sum->add_option("--c", c, "Meixner c");
  sum->add_option("--g", g, "Gross-Witten coupling");
  sum->add_option("--theta", theta, "spike strength");
  sum->add_option("--tau", tau, "Laguerre aspect ratio");
  sum->add_option("--tol", tol, "override the per-case tolerance")
      ->envname("SRLAB_TOL");
  add_common(sum);

  auto* mc = app.add_subcommand("mc-spike", "Monte Carlo spiked ensembles");
  std::string model = "hermite", dump_spectral;
  int N_opt = 0;
  mc->add_option("--model", model, "hermite or laguerre");
  mc->add_option("--n", n, "matrix size")->envname("SRLAB_N");
  mc->add_option("--N", N_opt, "Laguerre column count (default n/tau)");
  mc->add_option("--theta", theta, "spike strength");
  mc->add_option("--tau", tau, "Laguerre aspect ratio");
  mc->add_option("--replicas", replicas, "replica count")
      ->check(CLI::PositiveNumber)
      ->envname("SRLAB_REPLICAS");
  mc->add_option("--seed", seed, "master seed")->envname("SRLAB_SEED");
  mc->add_option("--dump-spectral", dump_spectral,
                 "write the first replica's spectral measure as CSV");
  add_common(mc);

  auto* vb = app.add_subcommand("verblunsky",
                                "closed-form GW coefficients vs Schur");
  int kmax = 30;
  vb->add_option("--g", g, "Gross-Witten coupling");
  vb->add_option("--kmax", kmax, "largest index");
  vb->add_option("--tol", tol, "comparison tolerance")->envname("SRLAB_TOL");
  add_common(vb);

  auto* qv = app.add_subcommand("qv", "perturbation polynomial Q_V");
  int degree = 4, trials = 50, size = 8;
  std::vector<double> coeffs;
  qv->add_option("--degree", degree, "monomial degree (x^degree)");
  qv->add_option("--v", coeffs, "potential coefficients c0,c1,...")
      ->delimiter(',');
  qv->add_option("--trials", trials, "random check matrices");
  qv->add_option("--size", size, "check matrix size");
  qv->add_option("--seed", seed, "check seed")->envname("SRLAB_SEED");
  qv->add_option("--tol", tol, "residual tolerance")->envname("SRLAB_TOL");
  add_common(qv);

  auto* laws = app.add_subcommand("laws", "evaluate a catalog law");
  std::string law = "sc";
  int grid = 512, discretize_n = 0;
  laws->add_option("--law", law,
                   "sc|mp|gw|lebesgue|spiked-sc|spiked-mp|spiked-gw|meixner|"
                   "meixner-norm");
  laws->add_option("--theta", theta, "spike strength");
  laws->add_option("--tau", tau, "Laguerre aspect ratio");
  laws->add_option("--g", g, "Gross-Witten coupling");
  laws->add_option("--phi", phi, "rotation angle");
  laws->add_option("--b", b, "Meixner b");
  laws->add_option("--c", c, "Meixner c");
  laws->add_option("--grid", grid, "density grid size");
  laws->add_option("--discretize", discretize_n,
                   "emit an n-node quadrature measure instead (point,weight)");
  add_common(laws);

  CLI11_PARSE(app, argc, argv);

  if (sum->parsed())
    return run_sumrule(which, b, c, g, theta, tau, tol, out, format);
  if (mc->parsed())
    return run_mc_spike(model, n, N_opt, theta, tau, replicas, seed,
                        dump_spectral, out, format);
  if (vb->parsed())
    return run_verblunsky(g, kmax, tol > 0 ? tol : 1e-10, out, format);
  if (qv->parsed())
    return run_qv(degree, coeffs, trials, size, seed, tol > 0 ? tol : 1e-10,
                  out, format);
  if (laws->parsed())
    return run_laws(law, theta, tau, g, phi, b, c, grid, discretize_n, out,
                    format);
  return 2;
}
