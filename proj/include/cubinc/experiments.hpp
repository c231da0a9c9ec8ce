#ifndef CUBINC_EXPERIMENTS_HPP_
#define CUBINC_EXPERIMENTS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubinc/bounds.hpp"
#include "cubinc/curves.hpp"
#include "cubinc/incidence.hpp"

namespace cubinc {

enum class PointKind {
  kUniformRandom,
  kGrid,      // first m points of {0..s-1}^2 in (x, y) order, s = ceil(sqrt m)
  kOnCurves,  // adversarial: points sampled on a few random "host" cubics
};

enum class CurveKind {
  kUniformIrreducible,
  kTranslateFamily,      // translates f(x - a, y - b) of one random irreducible cubic
  kThroughCommonPoints,  // absolutely irreducible members of the flat through 7 points of P
  kReducibleCounterexample,  // y * conic with all points on y = 0; needs allow_reducible
};

std::string_view to_string(PointKind k);
std::string_view to_string(CurveKind k);
PointKind parse_point_kind(std::string_view s);  // InvalidInput on unknown names
CurveKind parse_curve_kind(std::string_view s);

struct InstanceSpec {
  u64 p = 0;
  PointKind points = PointKind::kUniformRandom;
  CurveKind curves = CurveKind::kUniformIrreducible;
  std::size_t num_points = 0;
  std::size_t num_curves = 0;
  std::uint64_t seed = 0;
  // kOnCurves: each host cubic receives about this many points, and the
  // hosts come first in the curve set when the curve kind allows it.
  std::size_t points_per_host = 13;
  bool allow_reducible = false;
};

struct Instance {
  PointSet points;
  CurveSet curves;
  std::vector<AffinePoint> common;  // the seven points of kThroughCommonPoints, else empty
};

// Deterministic in the spec. Infeasible sizes are InvalidInput. A curve kind
// promising absolutely irreducible cubics is re-checked after generation.
Instance generate_instance(const InstanceSpec& spec);

// f(x - a, y - b).
CurveCoeffs translate_curve(const CurveCoeffs& c, u64 a, u64 b);

struct CertificateReport {
  u64 p = 0;
  std::size_t size_p = 0;
  std::size_t size_c = 0;
  std::uint64_t k = 0;
  std::uint64_t t = 0;  // ceil((k - 7) / 2)
  std::uint64_t incidences = 0;
  std::vector<std::pair<std::uint64_t, std::size_t>> histogram;  // dyadic k' -> |C_k'|
  std::size_t rich = 0;                                          // |C_k|

  bool enumerated = false;
  std::uint64_t subsets_examined = 0;
  std::uint64_t subsets_nonempty = 0;
  std::uint64_t sum_cks = 0;  // sum over examined S of |C_{k,S}|
  std::uint64_t max_cks = 0;
  std::uint64_t double_count_rhs = 0;  // C(k,7) |C_k|, compared only when enumerated

  std::uint64_t rank7 = 0;
  std::uint64_t not_a_flat = 0;
  std::uint64_t degenerate_psi = 0;
  std::uint64_t psi_computed = 0;
  std::uint64_t max_multiplicity = 0;
  std::uint64_t transfer_checks = 0;
  std::optional<std::uint64_t> min_distinct_lines;
  std::uint64_t dual_checks = 0;
  std::uint64_t dual_mismatches = 0;
  std::uint64_t max_rich_dual_points = 0;
  std::optional<Real> max_sdz_ratio;  // t-rich dual points / sdz_rich_points_bound(|L|, t)
  std::optional<Real> max_cks_ratio;  // |C_{k,S}| / cks_bound(|P|, k)
  std::optional<Real> ck_ratio;       // |C_k| / ck_bound(|P|, k)

  BoundReport bounds;
  std::vector<std::string> violations;
};

inline constexpr std::uint64_t kEnumerationSubsetLimit = 1'000'000;

// Requires k >= 11 and a curve set of absolutely irreducible cubics. Enumerates
// all 7-subsets when there are at most 10^6 of them, otherwise samples
// subset_samples of them: even-numbered samples uniform, odd-numbered drawn
// from gamma cap P for a random gamma in C_k.
CertificateReport pipeline_certificate(const PointSet& points, const CurveSet& curves,
                                       std::uint64_t k, std::uint64_t subset_samples,
                                       std::uint64_t seed, unsigned threads = 1);

void write_certificate_csv(std::ostream& os, const CertificateReport& r);

enum class Campaign { kDuality, kLemma, kMultiplicity, kBezout, kProposition };
std::optional<Campaign> parse_campaign(std::string_view s);
std::string_view to_string(Campaign c);

struct CampaignParams {
  u64 p = 11;
  std::uint64_t trials = 500;
  std::uint64_t subsets = 10'000;  // lemma: sampled subsets at the larger size
  std::size_t points = 200;        // lemma / multiplicity instance size
  std::uint64_t k = 11;
  unsigned threads = 1;
};

struct CampaignSummary {
  Campaign campaign = Campaign::kDuality;
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  std::vector<std::pair<std::string, std::string>> stats;
  int exit_status() const { return violations == 0 ? 0 : 1; }
};

CampaignSummary verify_campaign(Campaign c, const CampaignParams& params, std::uint64_t seed);
void write_campaign_csv(std::ostream& os, const CampaignSummary& s);

BoundReport bound_report(const PointSet& points, const CurveSet& curves, unsigned threads = 1);

// Grid points against uniform irreducible curves, one row per (|P|, |C|).
std::vector<BoundReport> bound_report_sweep(u64 p, const std::vector<std::size_t>& sizes_p,
                                            const std::vector<std::size_t>& sizes_c,
                                            std::uint64_t seed, unsigned threads = 1);

struct BenchRow {
  std::size_t size_p = 0;
  std::size_t size_c = 0;
  unsigned threads = 1;
  double seconds = 0;
  double pairs_per_second = 0;
  std::uint64_t count = 0;
};

// Times count_incidences on uniform instances; throws std::logic_error if the
// count differs between thread configurations.
std::vector<BenchRow> bench(const std::vector<std::size_t>& sizes, u64 p,
                            const std::vector<unsigned>& threads, std::uint64_t seed);
void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);

}  // namespace cubinc

#endif  // CUBINC_EXPERIMENTS_HPP_
