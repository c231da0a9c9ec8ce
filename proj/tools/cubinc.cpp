// Command-line front end: gen, count, certify, verify, bound-report, bench.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "cubinc/bounds.hpp"
#include "cubinc/errors.hpp"
#include "cubinc/experiments.hpp"
#include "cubinc/incidence.hpp"

using namespace cubinc;

namespace {

struct Common {
  u64 p = 0;
  std::uint64_t seed = 1;
  std::string points_file;
  std::string curves_file;
  std::string out;
  unsigned threads = 1;
  std::uint64_t subset_samples = 10000;
  std::uint64_t k = 11;
};

// Writes to --out, or stdout when it is empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw ConfigError("cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::ifstream open_input(const std::string& path, const char* flag) {
  if (path.empty()) throw ConfigError(std::string(flag) + " is required");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  return in;
}

PointSet load_points(const Common& c) {
  const PrimeModulus p(c.p);
  auto in = open_input(c.points_file, "--points-file");
  return PointSet(read_points_csv(in, p), p);
}

CurveSet load_curves(const Common& c) {
  const PrimeModulus p(c.p);
  auto in = open_input(c.curves_file, "--curves-file");
  return CurveSet(read_curves_csv(in, p), p);
}

void add_common(CLI::App* cmd, Common& c, bool files) {
  cmd->add_option("--p", c.p, "prime modulus")->required();
  cmd->add_option("--seed", c.seed, "master seed");
  cmd->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--out", c.out, "output CSV (default stdout)");
  if (files) {
    cmd->add_option("--points-file", c.points_file, "points CSV (x,y)");
    cmd->add_option("--curves-file", c.curves_file, "curves CSV (c00..c03)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"incidences between points and cubic curves over prime fields"};
  app.require_subcommand(1);
  Common c;
  int status = 0;

  auto* gen = app.add_subcommand("gen", "generate an instance");
  add_common(gen, c, true);
  std::string point_kind = "uniform-random", curve_kind = "uniform-irreducible";
  std::size_t num_points = 0, num_curves = 0, per_host = 13;
  bool allow_reducible = false;
  gen->add_option("--point-kind", point_kind, "uniform-random | grid | on-curves-adversarial");
  gen->add_option("--curve-kind", curve_kind,
                  "uniform-irreducible | translate-family | through-common-points | "
                  "reducible-counterexample");
  gen->add_option("--num-points", num_points)->required();
  gen->add_option("--num-curves", num_curves)->required();
  gen->add_option("--points-per-host", per_host);
  gen->add_flag("--allow-reducible", allow_reducible, "permit the reducible counterexample");
  gen->callback([&] {
    InstanceSpec spec;
    spec.p = c.p;
    spec.points = parse_point_kind(point_kind);
    spec.curves = parse_curve_kind(curve_kind);
    spec.num_points = num_points;
    spec.num_curves = num_curves;
    spec.seed = c.seed;
    spec.points_per_host = per_host;
    spec.allow_reducible = allow_reducible;
    const Instance inst = generate_instance(spec);
    if (c.points_file.empty() || c.curves_file.empty())
      throw ConfigError("gen needs --points-file and --curves-file");
    std::ofstream pf(c.points_file, std::ios::binary), cf(c.curves_file, std::ios::binary);
    if (!pf || !cf) throw ConfigError("cannot open output files");
    write_points_csv(pf, inst.points.points());
    write_curves_csv(cf, inst.curves.curves());
  });

  auto* count = app.add_subcommand("count", "count incidences; per-curve counts go to --out");
  add_common(count, c, true);
  count->callback([&] {
    const PointSet pts = load_points(c);
    const CurveSet cs = load_curves(c);
    const auto counts = incidence_counts_per_curve(pts, cs, c.threads);
    Output out(c.out);
    write_counts_csv(out.stream(), counts);
    if (!c.out.empty()) {
      std::uint64_t total = 0;
      for (auto v : counts) total += v;
      std::cout << total << "\n";
    }
  });

  auto* certify = app.add_subcommand("certify", "run the proof-pipeline certificate");
  add_common(certify, c, true);
  certify->add_option("--k", c.k, "richness threshold (>= 11)");
  certify->add_option("--subset-samples", c.subset_samples, "sampled 7-subsets");
  certify->callback([&] {
    const PointSet pts = load_points(c);
    const CurveSet cs = load_curves(c);
    const CertificateReport r =
        pipeline_certificate(pts, cs, c.k, c.subset_samples, c.seed, c.threads);
    Output out(c.out);
    write_certificate_csv(out.stream(), r);
    status = r.violations.empty() ? 0 : 1;
  });

  auto* verify = app.add_subcommand("verify", "run a verification campaign");
  add_common(verify, c, false);
  std::string campaign;
  CampaignParams prm;
  verify->add_option("campaign", campaign, "duality | lemma | multiplicity | bezout | proposition")
      ->required();
  verify->add_option("--trials", prm.trials);
  verify->add_option("--subset-samples", prm.subsets);
  verify->add_option("--num-points", prm.points);
  verify->add_option("--k", prm.k);
  verify->callback([&] {
    const auto which = parse_campaign(campaign);
    if (!which) throw CLI::ValidationError("campaign", "unknown campaign " + campaign);
    prm.p = c.p;
    prm.threads = c.threads;
    const CampaignSummary s = verify_campaign(*which, prm, c.seed);
    Output out(c.out);
    write_campaign_csv(out.stream(), s);
    status = s.exit_status();
  });

  auto* bounds = app.add_subcommand("bound-report", "measured incidences against the bounds");
  add_common(bounds, c, true);
  std::vector<std::size_t> sweep_p = {16, 64, 256}, sweep_c = {16, 64, 256};
  bounds->add_option("--sweep-points", sweep_p, "point counts for the grid sweep");
  bounds->add_option("--sweep-curves", sweep_c, "curve counts for the grid sweep");
  bounds->callback([&] {
    Output out(c.out);
    write_bound_report_header(out.stream());
    if (!c.points_file.empty() || !c.curves_file.empty()) {
      write_bound_report_row(out.stream(), bound_report(load_points(c), load_curves(c), c.threads));
    } else {
      for (const auto& r : bound_report_sweep(c.p, sweep_p, sweep_c, c.seed, c.threads))
        write_bound_report_row(out.stream(), r);
    }
  });

  auto* bench_cmd = app.add_subcommand("bench", "time the incidence counter");
  add_common(bench_cmd, c, false);
  std::vector<std::size_t> sizes = {1000, 5000, 20000};
  std::vector<unsigned> thread_list;
  bench_cmd->add_option("--sizes", sizes, "|P| = |C| values");
  bench_cmd->add_option("--thread-list", thread_list, "thread counts to compare (default 1 and --threads)");
  bench_cmd->callback([&] {
    if (thread_list.empty()) {
      thread_list = {1};
      if (c.threads != 1) thread_list.push_back(c.threads);
    }
    Output out(c.out);
    write_bench_csv(out.stream(), bench(sizes, c.p, thread_list, c.seed));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return status;
}
