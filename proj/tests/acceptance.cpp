// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <gmp.h>
#include <mpfr.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cubinc/bounds.hpp"
#include "cubinc/experiments.hpp"
#include "cubinc/field.hpp"
#include "cubinc/incidence.hpp"
#include "cubinc/oracle.hpp"
#include "cubinc/rng.hpp"

using namespace cubinc;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(const char* name, bool ok, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  failures += !ok;
}

void guarded(const char* name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(name, false, std::string("exception: ") + e.what());
  }
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

PointSet random_points(Rng& rng, const PrimeModulus& p, std::size_t n) {
  std::set<AffinePoint> seen;
  std::vector<AffinePoint> v;
  while (v.size() < n) {
    AffinePoint q(rng.below(p.value()), rng.below(p.value()), p);
    if (seen.insert(q).second) v.push_back(q);
  }
  return PointSet(std::move(v), p);
}

CurveSet random_curves(Rng& rng, const PrimeModulus& p, std::size_t n) {
  std::set<Coeffs> seen;
  std::vector<CurveCoeffs> v;
  while (v.size() < n) {
    CurveCoeffs c = random_irreducible_cubic(rng.next(), p);
    if (seen.insert(c.coeffs()).second) v.push_back(c);
  }
  return CurveSet(std::move(v), p);
}

void oracle_equivalence() {
  const auto t0 = Clock::now();
  const u64 primes[] = {3, 5, 7, 11, 13};
  int agree = 0;
  for (int i = 0; i < 100; ++i) {
    Rng rng(derive_seed(2024, i));
    const PrimeModulus p(primes[i % 5]);
    const std::size_t np = 1 + rng.below(std::min<u64>(200, p.value() * p.value()));
    const std::size_t nc = 1 + rng.below(200);
    const PointSet pts = random_points(rng, p, np);
    const CurveSet cs = random_curves(rng, p, nc);
    agree += count_incidences(pts, cs, 4) == oracle::naive_count_incidences(pts, cs);
  }
  const double sec = since(t0);
  report("oracle-equivalence", agree == 100 && sec < 60,
         std::to_string(agree) + "/100 instances agree, " + fmt("%.2f s", sec));
}

void duality_equivalence() {
  const auto t0 = Clock::now();
  CampaignParams prm;
  prm.p = 7;
  prm.trials = 500;
  const auto s = verify_campaign(Campaign::kDuality, prm, 31);
  const double sec = since(t0);
  report("duality-equivalence", s.checks == 500 && s.violations == 0 && sec < 60,
         std::to_string(s.checks - s.violations) + "/" + std::to_string(s.checks) +
             " configurations agree, " + fmt("%.2f s", sec));
}

void lemma_suite() {
  const auto t0 = Clock::now();
  CampaignParams prm;
  prm.p = 31;
  prm.trials = 20;  // exhaustive 12-point instances
  prm.points = 200;
  prm.subsets = 10000;
  prm.k = 11;
  const auto s = verify_campaign(Campaign::kLemma, prm, 41);
  const double sec = since(t0);
  std::string detail;
  std::uint64_t sampled = 0;
  for (const auto& [k, v] : s.stats) {
    if (k == "sampled_subsets") sampled = std::stoull(v);
    if (k == "exhaustive_subsets" || k == "exhaustive_nonempty" || k == "exhaustive_rank_below_7" ||
        k == "sampled_subsets" || k == "sampled_nonempty")
      detail += k + "=" + v + " ";
  }
  report("seven-point-flat", s.violations == 0 && sampled >= 10000 && sec < 300,
         detail + "violations=" + std::to_string(s.violations) + ", " + fmt("%.2f s", sec));
}

void proposition_suite() {
  const auto t0 = Clock::now();
  CampaignParams prm;
  prm.p = 11;
  prm.trials = 10000;
  const auto s = verify_campaign(Campaign::kProposition, prm, 51);
  std::string detail;
  for (const auto& [k, v] : s.stats) detail += k + "=" + v + " ";
  report("independent-conditions", s.violations == 0 && s.checks == 20000,
         detail + fmt("%.2f s", since(t0)));
}

std::vector<CertificateReport> certificate_matrix() {
  std::vector<CertificateReport> out;
  const CurveKind kinds[] = {CurveKind::kUniformIrreducible, CurveKind::kThroughCommonPoints,
                             CurveKind::kTranslateFamily};
  std::uint64_t counter = 0;
  for (u64 p : {31ULL, 127ULL, 1009ULL})
    for (auto ck : kinds)
      for (int rep = 0; rep < 2; ++rep) {
        InstanceSpec spec;
        spec.p = p;
        spec.points = PointKind::kOnCurves;
        spec.curves = ck;
        spec.num_points = 200;
        spec.num_curves = 60;
        spec.points_per_host = rep == 0 ? 13 : 17;
        spec.seed = derive_seed(61, counter++);
        const Instance inst = generate_instance(spec);
        out.push_back(pipeline_certificate(inst.points, inst.curves, 11, 2000, spec.seed, 2));
      }
  // graph of y = x^3 with extra points, fully enumerated
  const PrimeModulus p(13);
  std::vector<AffinePoint> pts;
  for (u64 x = 0; x < 13; ++x) pts.emplace_back(x, x * x * x % 13, p);
  Rng rng(62);
  std::set<AffinePoint> seen(pts.begin(), pts.end());
  while (pts.size() < 20) {
    AffinePoint q(rng.below(13), rng.below(13), p);
    if (seen.insert(q).second) pts.push_back(q);
  }
  Coeffs cusp{};
  cusp[monomial_index(0, 1)] = 1;
  cusp[monomial_index(3, 0)] = 12;
  std::vector<CurveCoeffs> cs = {CurveCoeffs(cusp, p)};
  const CurveSet extra = random_curves(rng, p, 20);
  for (const auto& c : extra.curves())
    if (!(c == cs.front())) cs.push_back(c);
  out.push_back(pipeline_certificate(PointSet(pts, p), CurveSet(cs, p), 11, 0, 1));
  return out;
}

void multiplicity_and_transfer(const std::vector<CertificateReport>& runs) {
  std::uint64_t max_mult = 0, degenerate = 0, psi_n = 0, nonempty = 0, transfer = 0,
                transfer_bad = 0, multi = 0;
  for (const auto& r : runs) {
    max_mult = std::max(max_mult, r.max_multiplicity);
    degenerate += r.degenerate_psi;
    psi_n += r.psi_computed;
    nonempty += r.subsets_nonempty;
    transfer += r.transfer_checks;
    multi += r.max_cks >= 2;
    for (const auto& v : r.violations)
      transfer_bad += v.find("distinct dual lines") != std::string::npos ||
                      v.find("rich dual points") != std::string::npos;
    if (r.min_distinct_lines && *r.min_distinct_lines < r.t) ++transfer_bad;
  }
  report("multiplicity", max_mult <= 2 && degenerate == 0 && nonempty > 0,
         std::to_string(runs.size()) + " certificates, " + std::to_string(nonempty) +
             " nonempty subsets, " + std::to_string(psi_n) + " psi evaluations, max multiplicity " +
             std::to_string(max_mult) + ", degenerate " + std::to_string(degenerate) + ", " +
             std::to_string(multi) + " certificates with |C_kS| >= 2");
  report("rich-point-transfer", transfer_bad == 0 && transfer > 0,
         std::to_string(transfer) + " (gamma, S) checks, " + std::to_string(transfer_bad) +
             " violations");
}

void bezout_suite() {
  const auto t0 = Clock::now();
  std::string detail;
  std::uint64_t violations = 0;
  bool sizes_ok = true;
  for (u64 p : {7ULL, 11ULL, 31ULL}) {
    const auto s = oracle::bezout_campaign(PrimeModulus(p), 10000, 71 + p, 2);
    violations += s.violations;
    sizes_ok = sizes_ok && s.rows.size() == 30000;
    detail += "p=" + std::to_string(p) + " max(cc,lc,qc)=(" + std::to_string(s.max_observed[0]) +
              "," + std::to_string(s.max_observed[1]) + "," + std::to_string(s.max_observed[2]) +
              ") ";
  }
  const double sec = since(t0);
  report("bezout", violations == 0 && sizes_ok && sec < 600,
         detail + "violations=" + std::to_string(violations) + ", " + fmt("%.2f s", sec));
}

// MPFR recomputation at 256 bits.
struct Mp {
  mpfr_t v;
  Mp() { mpfr_init2(v, 256); }
  explicit Mp(double d) : Mp() { mpfr_set_d(v, d, MPFR_RNDN); }
  Mp(const Mp&) = delete;
  ~Mp() { mpfr_clear(v); }
};

double relerr(const Mp& exact, const Real& got) {
  Mp g, d;
  mpfr_set_str(g.v, got.str(40, std::ios_base::scientific).c_str(), 10, MPFR_RNDN);
  if (mpfr_zero_p(exact.v)) return mpfr_zero_p(g.v) ? 0 : 1;
  mpfr_sub(d.v, g.v, exact.v, MPFR_RNDN);
  mpfr_div(d.v, d.v, exact.v, MPFR_RNDN);
  return std::fabs(mpfr_get_d(d.v, MPFR_RNDN));
}

// out = x^(a/b)
void mpow(Mp& out, double x, long a, long b) {
  Mp e, base(x);
  mpfr_set_si(e.v, a, MPFR_RNDN);
  mpfr_div_si(e.v, e.v, b, MPFR_RNDN);
  mpfr_pow(out.v, base.v, e.v, MPFR_RNDN);
}

void bound_evaluators() {
  const std::vector<double> sizes = {0, 1, 2, 3, 10, 11, 12, 50, 100, 1000, 12345, 1e5, 1e6, 1e8};
  double worst = 0;
  std::uint64_t evals = 0;
  auto track = [&](const Mp& e, const Real& g) {
    worst = std::max(worst, relerr(e, g));
    ++evals;
  };
  for (double m : sizes)
    for (double n : sizes) {
      Mp a, b, c, x, y, z;
      // kst
      mpow(a, n, 9, 10);
      mpfr_mul_d(a.v, a.v, m, MPFR_RNDN);
      mpfr_add_d(a.v, a.v, n, MPFR_RNDN);
      mpow(b, m, 1, 2);
      mpfr_mul_d(b.v, b.v, n, MPFR_RNDN);
      mpfr_add_d(b.v, b.v, m, MPFR_RNDN);
      mpfr_min(c.v, a.v, b.v, MPFR_RNDN);
      track(c, kst_bound(m, n).value);
      // theorem 1
      mpow(x, m * n, 39, 43);
      mpow(y, n, 9, 10);
      mpfr_mul_d(y.v, y.v, m, MPFR_RNDN);
      mpow(z, m, 1, 2);
      mpfr_mul_d(z.v, z.v, n, MPFR_RNDN);
      mpfr_min(c.v, x.v, y.v, MPFR_RNDN);
      mpfr_min(c.v, c.v, z.v, MPFR_RNDN);
      mpfr_add_d(c.v, c.v, m + n, MPFR_RNDN);
      track(c, theorem1_bound(m, n).value);
      // theorem 2
      mpow(a, m, 71, 43);
      mpow(b, n, 28, 43);
      mpfr_mul(a.v, a.v, b.v, MPFR_RNDN);
      mpfr_add(c.v, x.v, a.v, MPFR_RNDN);
      mpfr_add_d(c.v, c.v, n, MPFR_RNDN);
      track(c, theorem2_bound(m, n));
      if (n >= 2) {  // sdz with (L, t) = (m, n); cks and ck need n >= 11
        mpow(a, m, 11, 4);
        mpow(b, n, 15, 4);
        mpfr_div(a.v, a.v, b.v, MPFR_RNDN);
        Mp r(m);
        mpfr_div_d(r.v, r.v, n, MPFR_RNDN);
        mpfr_add(c.v, a.v, r.v, MPFR_RNDN);
        track(c, sdz_rich_points_bound(m, n));
        if (n >= 11) {
          track(c, cks_bound(m, n));
          mpow(a, m, 39, 4);
          mpow(b, n, 43, 4);
          mpfr_div(a.v, a.v, b.v, MPFR_RNDN);
          mpow(x, m, 8, 1);
          mpow(y, n, 8, 1);
          mpfr_div(x.v, x.v, y.v, MPFR_RNDN);
          mpfr_add(c.v, a.v, x.v, MPFR_RNDN);
          track(c, ck_bound(m, n));
        }
      }
      if (n >= 1) {
        mpow(a, m, 39, 43);
        mpow(b, n, 4, 43);
        mpfr_div(a.v, a.v, b.v, MPFR_RNDN);
        Mp eleven(11);
        mpfr_max(c.v, a.v, eleven.v, MPFR_RNDN);
        track(c, delta_opt(m, n).value);
        for (double d : {1.0, 3.0, 11.0, 250.0}) {
          mpow(a, m / d, 39, 4);
          mpow(b, m, 8, 1);
          mpow(x, d, 7, 1);
          mpfr_div(b.v, b.v, x.v, MPFR_RNDN);
          mpfr_add(c.v, a.v, b.v, MPFR_RNDN);
          mpfr_add_d(c.v, c.v, d * n, MPFR_RNDN);
          track(c, dyadic_bound(m, n, d));
        }
      }
    }
  for (double m : sizes)
    if (m >= 1) {
      Mp lo, hi;
      mpow(lo, m, 35, 8);
      mpow(hi, m, 40, 3);
      const auto [l, h] = improvement_range(m);
      track(lo, l);
      track(hi, h);
    }

  Rng rng(81);
  mpz_t a, b;
  mpz_init(a);
  mpz_init(b);
  int adm_ok = 0, adm_true = 0;
  for (int i = 0; i < 10000;) {
    const u64 p = rng.below(u64{1} << 32) + 2;
    if (!is_prime(p)) continue;
    const double edge = std::pow(static_cast<double>(p), 15.0 / 13.0);
    const u64 m = rng.below(2) ? rng.below(static_cast<u64>(2 * edge) + 1)
                               : static_cast<u64>(edge) + rng.below(5) - 2;
    mpz_ui_pow_ui(a, m, 13);
    mpz_ui_pow_ui(b, p, 15);
    const bool exact = mpz_cmp(a, b) <= 0;
    adm_ok += admissible(m, p) == exact;
    adm_true += exact;
    ++i;
  }
  mpz_clear(a);
  mpz_clear(b);
  report("bound-evaluators", worst <= 1e-12 && adm_ok == 10000,
         std::to_string(evals) + " evaluations, worst relative error " + fmt("%.3e", worst) +
             "; admissible agrees on " + std::to_string(adm_ok) + "/10000 (" +
             std::to_string(adm_true) + " admissible)");
}

void counterexample() {
  InstanceSpec spec;
  spec.p = 53;
  spec.curves = CurveKind::kReducibleCounterexample;
  spec.allow_reducible = true;
  spec.num_points = 50;
  spec.num_curves = 50;
  spec.seed = 91;
  const Instance inst = generate_instance(spec);
  const std::uint64_t i = count_incidences(inst.points, inst.curves);
  report("reducible-counterexample",
         i == 2500 && inst.points.size() == 50 && inst.curves.size() == 50,
         "I = " + std::to_string(i) + ", |P||C| = " +
             std::to_string(inst.points.size() * inst.curves.size()));
}

void performance() {
  InstanceSpec spec;
  spec.p = 2147483647;
  spec.num_points = 20000;
  spec.num_curves = 20000;
  spec.seed = 101;
  const auto tg = Clock::now();
  const Instance inst = generate_instance(spec);
  const double gen = since(tg);
  auto t0 = Clock::now();
  const std::uint64_t one = count_incidences(inst.points, inst.curves, 1);
  const double s1 = since(t0);
  t0 = Clock::now();
  const std::uint64_t eight = count_incidences(inst.points, inst.curves, 8);
  const double s8 = since(t0);
  report("performance", one == eight && s8 <= 60,
         "8 threads " + fmt("%.2f s", s8) + ", 1 thread " + fmt("%.2f s", s1) + ", counts " +
             std::to_string(eight) + "/" + std::to_string(one) + ", hardware threads " +
             std::to_string(std::thread::hardware_concurrency()) + ", generation " +
             fmt("%.2f s", gen));
}

std::string run_pipeline_csv(unsigned threads) {
  InstanceSpec spec;
  spec.p = 127;
  spec.points = PointKind::kOnCurves;
  spec.curves = CurveKind::kThroughCommonPoints;
  spec.num_points = 150;
  spec.num_curves = 50;
  spec.seed = 111;
  const Instance inst = generate_instance(spec);
  std::ostringstream os;
  write_points_csv(os, inst.points.points());
  write_curves_csv(os, inst.curves.curves());
  write_counts_csv(os, incidence_counts_per_curve(inst.points, inst.curves, threads));
  write_certificate_csv(os, pipeline_certificate(inst.points, inst.curves, 11, 1000, 7, threads));
  write_bound_report_header(os);
  write_bound_report_row(os, bound_report(inst.points, inst.curves, threads));
  oracle::write_bezout_csv(os, oracle::bezout_campaign(PrimeModulus(11), 200, 5, threads));
  CampaignParams prm;
  prm.p = 31;
  prm.trials = 2;
  prm.points = 100;
  prm.subsets = 300;
  prm.threads = threads;
  write_campaign_csv(os, verify_campaign(Campaign::kMultiplicity, prm, 9));
  return os.str();
}

void determinism() {
  const std::string a = run_pipeline_csv(1), b = run_pipeline_csv(1), c = run_pipeline_csv(8);
  report("determinism", a == b && a == c,
         std::to_string(a.size()) + " bytes; repeat " + (a == b ? "identical" : "DIFFERENT") +
             ", 1 vs 8 threads " + (a == c ? "identical" : "DIFFERENT"));
}

}  // namespace

int main() {
  guarded("oracle-equivalence", oracle_equivalence);
  guarded("duality-equivalence", duality_equivalence);
  guarded("seven-point-flat", lemma_suite);
  guarded("independent-conditions", proposition_suite);
  guarded("multiplicity", [] {
    const auto runs = certificate_matrix();
    multiplicity_and_transfer(runs);
  });
  guarded("bezout", bezout_suite);
  guarded("bound-evaluators", bound_evaluators);
  guarded("reducible-counterexample", counterexample);
  guarded("performance", performance);
  guarded("determinism", determinism);
  std::printf("%d failed\n", failures);
  return failures == 0 ? 0 : 1;
}
