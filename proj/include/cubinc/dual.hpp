#ifndef CUBINC_DUAL_HPP_
#define CUBINC_DUAL_HPP_

// Coefficient-space duality for cubics. A curve of degree <= 3 is a point of
// the projectivized 10-dimensional coefficient space; a point q of the plane
// is the hyperplane of curves through q; seven points in general position cut
// out a 2-flat, inside which every further point q becomes a line.

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "cubinc/curves.hpp"

namespace cubinc {

/// Reduced row echelon form over GF(p), leftmost pivot, first nonzero row
/// chosen as pivot row.
struct Echelon {
  int rank = 0;
  std::vector<std::vector<u64>> rows;  // the first `rank` rows are the RREF
  std::vector<int> pivots;
};

Echelon row_reduce(std::vector<std::vector<u64>> rows, int ncols, const PrimeModulus& p);

// Canonical (RREF) basis of {v : rows * v = 0}.
std::vector<std::vector<u64>> nullspace_basis(const std::vector<std::vector<u64>>& rows, int ncols,
                                              const PrimeModulus& p);

struct DualPoint {
  Coeffs coords;
  friend bool operator==(const DualPoint&, const DualPoint&) = default;
};

struct Hyperplane {
  Coeffs covector;
  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
};

DualPoint phi(const CurveCoeffs& curve);

// The covector of pi_q is the monomial vector of q; its constant entry is 1,
// so it is already normalized.
Hyperplane hyperplane_of_point(const AffinePoint& q);

struct HyperplaneIntersection {
  int rank = 0;
  std::vector<Coeffs> basis;  // RREF basis of the solution space
};

// 1 <= |S| <= 10, distinct points.
HyperplaneIntersection intersect_hyperplanes(std::span<const AffinePoint> s);

// |S| in {7, 8}: true iff the conditions have full rank |S|.
bool check_independent_conditions(std::span<const AffinePoint> s);

/// The solution space of seven independent point conditions: a projective
/// plane inside coefficient space, with canonical RREF basis. A vector v of
/// the flat has parameter coordinates (v[pivot0], v[pivot1], v[pivot2]).
class Flat2 {
 public:
  const std::array<Coeffs, 3>& basis() const { return basis_; }
  const std::array<int, 3>& pivots() const { return pivots_; }
  const std::vector<AffinePoint>& defining_points() const { return defining_; }
  const PrimeModulus& modulus() const { return mod_; }

  // Parameter coordinates of v, or nullopt when v is not in the span.
  std::optional<std::array<u64, 3>> params(const Coeffs& v) const;
  Coeffs point_at(const std::array<u64, 3>& t) const;
  bool defines(const AffinePoint& q) const;

  friend bool operator==(const Flat2& a, const Flat2& b) {
    return a.mod_ == b.mod_ && a.basis_ == b.basis_;
  }

 private:
  friend std::optional<Flat2> flat_of(std::span<const AffinePoint> s);
  Flat2(std::array<Coeffs, 3> basis, std::vector<AffinePoint> defining, const PrimeModulus& p);

  std::array<Coeffs, 3> basis_;
  std::array<int, 3> pivots_;
  std::vector<AffinePoint> defining_;  // sorted
  PrimeModulus mod_;
};

// nullopt (NotAFlat) when the seven conditions have rank < 7.
std::optional<Flat2> flat_of(std::span<const AffinePoint> s);

/// psi(q) = pi_q restricted to the flat, as a covector on parameter
/// coordinates, normalized.
struct DualLine {
  std::array<u64, 3> covector;
  AffinePoint source;
};

// nullopt is the degenerate outcome pi_S contained in pi_q. Throws
// InvalidInput when q is one of the defining points.
std::optional<DualLine> psi(const AffinePoint& q, const Flat2& flat);

bool dual_incidence(const DualPoint& dp, const DualLine& dl, const Flat2& flat);

// Largest number of collinear points of S (brute force over point pairs).
int max_collinear(std::span<const AffinePoint> s);

// True iff all points of S lie on one curve of degree <= 2: the 6-column
// system of conic conditions has rank < 6.
bool on_common_conic(std::span<const AffinePoint> s);

// Audit rows: one basis vector per line; a dual line as x,y,l0,l1,l2.
void write_flat_csv(std::ostream& os, const Flat2& flat);
void write_dual_line_csv(std::ostream& os, const DualLine& line);

}  // namespace cubinc

#endif  // CUBINC_DUAL_HPP_
