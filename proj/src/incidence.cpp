#include "cubinc/incidence.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <string>

#include "cubinc/parallel.hpp"

namespace cubinc {

namespace {

std::uint64_t count_on_curve(const Coeffs& c, const std::vector<Coeffs>& monomials, u64 p) {
  std::uint64_t n = 0;
  for (const Coeffs& m : monomials) {
    // m[0] == 1; ten products of residues < 2^62 stay below 2^128.
    u128 acc = c[0];
    for (int k = 1; k < kNumMonomials; ++k) acc += u128{c[k]} * m[k];
    n += (acc % p == 0);
  }
  return n;
}

void require_same(const PrimeModulus& a, const PrimeModulus& b) {
  if (!(a == b)) throw ConfigError("point set and curve set over different moduli");
}

}  // namespace

PointSet::PointSet(std::vector<AffinePoint> points, const PrimeModulus& p)
    : points_(std::move(points)), mod_(p) {
  for (const auto& q : points_)
    if (!(q.modulus() == p)) throw ConfigError("point over a different modulus");
  sorted_ = points_;
  std::sort(sorted_.begin(), sorted_.end());
  if (std::adjacent_find(sorted_.begin(), sorted_.end()) != sorted_.end())
    throw InvalidInput("duplicate point in point set");
  monomials_.reserve(points_.size());
  for (const auto& q : points_) monomials_.push_back(monomial_vector(q));
}

bool PointSet::contains(const AffinePoint& q) const {
  return std::binary_search(sorted_.begin(), sorted_.end(), q);
}

CurveSet::CurveSet(std::vector<CurveCoeffs> curves, const PrimeModulus& p)
    : curves_(std::move(curves)), mod_(p) {
  std::set<Coeffs> seen;
  for (const auto& c : curves_) {
    if (!(c.modulus() == p)) throw ConfigError("curve over a different modulus");
    if (!seen.insert(c.coeffs()).second) throw InvalidInput("duplicate curve in curve set");
    all_irreducible_ = all_irreducible_ && c.is_irreducible_cubic();
  }
}

std::vector<std::uint64_t> incidence_counts_per_curve(const PointSet& points,
                                                      const CurveSet& curves, unsigned threads) {
  require_same(points.modulus(), curves.modulus());
  std::vector<std::uint64_t> counts(curves.size(), 0);
  const u64 p = points.modulus().value();
  parallel_for(curves.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      counts[i] = count_on_curve(curves[i].coeffs(), points.monomials(), p);
  });
  return counts;
}

std::uint64_t count_incidences(const PointSet& points, const CurveSet& curves, unsigned threads) {
  const auto counts = incidence_counts_per_curve(points, curves, threads);
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

RichnessClass rich_curves(std::span<const std::uint64_t> counts, std::uint64_t k) {
  if (k < 1) throw InvalidInput("richness threshold k must be >= 1");
  RichnessClass rc;
  rc.k = k;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] >= k && counts[i] < 2 * k) {
      rc.members.push_back(i);
      rc.counts.push_back(counts[i]);
    }
  }
  return rc;
}

RichnessClass rich_curves(const PointSet& points, const CurveSet& curves, std::uint64_t k,
                          unsigned threads) {
  if (k < 1) throw InvalidInput("richness threshold k must be >= 1");
  return rich_curves(incidence_counts_per_curve(points, curves, threads), k);
}

std::vector<std::size_t> exactly_rich_curves(std::span<const std::uint64_t> counts,
                                             std::uint64_t k) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] == k) out.push_back(i);
  return out;
}

std::vector<std::size_t> exactly_rich_curves(const PointSet& points, const CurveSet& curves,
                                             std::uint64_t k, unsigned threads) {
  return exactly_rich_curves(incidence_counts_per_curve(points, curves, threads), k);
}

std::vector<std::size_t> rich_curves_through(const RichnessClass& rich, const CurveSet& curves,
                                             const PointSet& points,
                                             std::span<const AffinePoint> s) {
  if (s.size() != 7) throw InvalidInput("C_{k,S} needs |S| = 7");
  std::set<AffinePoint> distinct(s.begin(), s.end());
  if (distinct.size() != 7) throw InvalidInput("S has repeated points");
  for (const auto& q : s)
    if (!points.contains(q)) throw InvalidInput("S is not a subset of P");
  std::vector<std::size_t> out;
  for (std::size_t idx : rich.members) {
    const CurveCoeffs& g = curves[idx];
    if (std::all_of(s.begin(), s.end(), [&](const AffinePoint& q) { return incident(g, q); }))
      out.push_back(idx);
  }
  return out;
}

std::uint64_t rich_dual_points(std::span<const DualLine> lines, std::uint64_t t,
                               const PrimeModulus& p) {
  if (t < 2) throw InvalidInput("dual richness threshold t must be >= 2");
  std::set<std::array<u64, 3>> distinct;
  for (const auto& l : lines) distinct.insert(l.covector);
  const std::vector<std::array<u64, 3>> ls(distinct.begin(), distinct.end());
  // A point on m distinct lines is hit by m(m-1)/2 pairs.
  std::map<std::array<u64, 3>, std::uint64_t> pairs;
  for (std::size_t i = 0; i < ls.size(); ++i)
    for (std::size_t j = i + 1; j < ls.size(); ++j) {
      const auto& a = ls[i];
      const auto& b = ls[j];
      std::array<u64, 3> x{p.sub(p.mul(a[1], b[2]), p.mul(a[2], b[1])),
                           p.sub(p.mul(a[2], b[0]), p.mul(a[0], b[2])),
                           p.sub(p.mul(a[0], b[1]), p.mul(a[1], b[0]))};
      normalize_projective(x, p);  // distinct normalized lines: cross product is nonzero
      ++pairs[x];
    }
  std::uint64_t rich = 0;
  for (const auto& [pt, np] : pairs) {
    std::uint64_t m = 2;
    while (m * (m - 1) / 2 < np) ++m;
    if (m >= t) ++rich;
  }
  return rich;
}

void write_counts_csv(std::ostream& os, std::span<const std::uint64_t> counts) {
  os << "curve_index,count\n";
  for (std::size_t i = 0; i < counts.size(); ++i) os << i << "," << counts[i] << "\n";
}

}  // namespace cubinc
