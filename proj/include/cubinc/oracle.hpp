#ifndef CUBINC_ORACLE_HPP_
#define CUBINC_ORACLE_HPP_

// Brute-force reference implementations. Nothing in the core library calls
// into this header; tests and the CLI's verify paths compare against it.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cubinc/curves.hpp"
#include "cubinc/incidence.hpp"

namespace cubinc::oracle {

inline constexpr std::uint64_t kNaivePairGuard = 100'000'000;
inline constexpr u64 kExtensionSearchGuard = u64{1} << 10;

// Double loop, evaluating each monomial from scratch. Refuses unless
// p <= 2^16 or |P||C| <= 10^8.
std::uint64_t naive_count_incidences(const PointSet& points, const CurveSet& curves);

struct IntersectionRecord {
  CurveCoeffs first;
  CurveCoeffs second;
  std::vector<AffinePoint> common;  // sorted
  IrreducibilityClass first_class;
  IrreducibilityClass second_class;
};

// Scans all p^2 affine points. Identical curves are InvalidInput; p > 2^16 refused.
IntersectionRecord intersect_curves(const CurveCoeffs& a, const CurveCoeffs& b);

enum class SearchField { kPrime, kCubicExtension };

// Projective linear forms aX + bY + cZ, normalized as (1,b,c), (0,1,c), (0,0,1),
// scanned in that order with b, c running through the field in index order.
// Returns the first form dividing the homogenized cubic. Entries are embedded
// in GF(p^3) for both searches. Requires degree 3.
std::optional<std::array<Fp3Element, 3>> exhaustive_linear_factor_search(const CurveCoeffs& curve,
                                                                         SearchField field);

// Oracle reading of the classifier built from the two searches above.
IrreducibilityClass brute_force_classification(const CurveCoeffs& curve);

enum class PairKind { kCubicCubic, kLineCubic, kConicCubic };
std::string_view to_string(PairKind k);
std::uint64_t bezout_cap(PairKind k);

struct BezoutRow {
  std::uint64_t trial = 0;
  PairKind kind = PairKind::kCubicCubic;
  std::uint64_t intersection_size = 0;
  bool ok() const { return intersection_size <= bezout_cap(kind); }
};

struct BezoutSummary {
  std::vector<BezoutRow> rows;  // three per trial, one of each kind
  std::array<std::uint64_t, 3> max_observed{};
  std::uint64_t violations = 0;
};

// Each trial draws one pair of each kind from derive_seed(seed, trial):
// two distinct absolutely irreducible cubics, a line and such a cubic, and an
// absolutely irreducible conic and such a cubic. Needs 3 <= p <= 31.
BezoutSummary bezout_campaign(const PrimeModulus& p, std::uint64_t trials, std::uint64_t seed,
                              unsigned threads = 1);

// trial,kind,intersection_size,cap,ok
void write_bezout_csv(std::ostream& os, const BezoutSummary& s);

}  // namespace cubinc::oracle

#endif  // CUBINC_ORACLE_HPP_
