#ifndef CUBINC_INCIDENCE_HPP_
#define CUBINC_INCIDENCE_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "cubinc/curves.hpp"
#include "cubinc/dual.hpp"

namespace cubinc {

/// Distinct affine points over one prime, each with its monomial vector
/// cached so that an incidence test is a single 10-term dot product.
class PointSet {
 public:
  explicit PointSet(const PrimeModulus& p) : mod_(p) {}
  // Throws InvalidInput on duplicates, ConfigError on a foreign modulus.
  PointSet(std::vector<AffinePoint> points, const PrimeModulus& p);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<AffinePoint>& points() const { return points_; }
  const AffinePoint& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Coeffs>& monomials() const { return monomials_; }
  const PrimeModulus& modulus() const { return mod_; }
  bool contains(const AffinePoint& q) const;

 private:
  std::vector<AffinePoint> points_;
  std::vector<Coeffs> monomials_;
  std::vector<AffinePoint> sorted_;
  PrimeModulus mod_;
};

/// Distinct normalized curves over one prime.
class CurveSet {
 public:
  explicit CurveSet(const PrimeModulus& p) : mod_(p) {}
  CurveSet(std::vector<CurveCoeffs> curves, const PrimeModulus& p);

  std::size_t size() const { return curves_.size(); }
  bool empty() const { return curves_.empty(); }
  const std::vector<CurveCoeffs>& curves() const { return curves_; }
  const CurveCoeffs& operator[](std::size_t i) const { return curves_[i]; }
  const PrimeModulus& modulus() const { return mod_; }
  // Every member is a degree-3 absolutely irreducible curve.
  bool all_irreducible_cubics() const { return all_irreducible_; }

 private:
  std::vector<CurveCoeffs> curves_;
  PrimeModulus mod_;
  bool all_irreducible_ = true;
};

/// Curves with k <= |gamma cap P| < 2k.
struct RichnessClass {
  std::uint64_t k = 0;
  std::vector<std::size_t> members;  // indices into the CurveSet, ascending
  std::vector<std::uint64_t> counts;  // |gamma cap P| per member
};

// Work is partitioned over curves; results do not depend on `threads`.
std::uint64_t count_incidences(const PointSet& points, const CurveSet& curves,
                               unsigned threads = 1);
std::vector<std::uint64_t> incidence_counts_per_curve(const PointSet& points,
                                                      const CurveSet& curves,
                                                      unsigned threads = 1);

RichnessClass rich_curves(std::span<const std::uint64_t> counts, std::uint64_t k);
RichnessClass rich_curves(const PointSet& points, const CurveSet& curves, std::uint64_t k,
                          unsigned threads = 1);

std::vector<std::size_t> exactly_rich_curves(std::span<const std::uint64_t> counts,
                                             std::uint64_t k);
std::vector<std::size_t> exactly_rich_curves(const PointSet& points, const CurveSet& curves,
                                             std::uint64_t k, unsigned threads = 1);

// C_{k,S}: members of the class through all seven points of S, S a subset of P.
std::vector<std::size_t> rich_curves_through(const RichnessClass& rich, const CurveSet& curves,
                                             const PointSet& points,
                                             std::span<const AffinePoint> s);

// Number of points of the parameter plane lying on at least t of the
// distinct lines (duplicate covectors count once). t >= 2.
std::uint64_t rich_dual_points(std::span<const DualLine> lines, std::uint64_t t,
                               const PrimeModulus& p);

// "curve_index,count"
void write_counts_csv(std::ostream& os, std::span<const std::uint64_t> counts);

}  // namespace cubinc

#endif  // CUBINC_INCIDENCE_HPP_
