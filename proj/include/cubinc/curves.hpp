#ifndef CUBINC_CURVES_HPP_
#define CUBINC_CURVES_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "cubinc/field.hpp"

namespace cubinc {

// Monomials x^i y^j with i + j <= 3, in the fixed order
//   1, x, y, x^2, xy, y^2, x^3, x^2y, xy^2, y^3.
// Every coefficient vector, hyperplane covector and file row uses it.
inline constexpr int kNumMonomials = 10;
inline constexpr std::array<std::pair<int, int>, kNumMonomials> kMonomials = {
    {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}, {3, 0}, {2, 1}, {1, 2}, {0, 3}}};
inline constexpr std::array<std::string_view, kNumMonomials> kMonomialNames = {
    "c00", "c10", "c01", "c20", "c11", "c02", "c30", "c21", "c12", "c03"};

constexpr int monomial_index(int i, int j) {
  for (int k = 0; k < kNumMonomials; ++k)
    if (kMonomials[k].first == i && kMonomials[k].second == j) return k;
  return -1;
}

using Coeffs = std::array<u64, kNumMonomials>;

struct AffinePoint {
  FpElement x;
  FpElement y;

  AffinePoint(FpElement x_, FpElement y_);
  AffinePoint(u64 x_, u64 y_, const PrimeModulus& p) : x(x_, p), y(y_, p) {}

  const PrimeModulus& modulus() const { return x.modulus(); }

  friend bool operator==(const AffinePoint&, const AffinePoint&) = default;
  friend bool operator<(const AffinePoint& a, const AffinePoint& b) {
    return std::pair(a.x.value(), a.y.value()) < std::pair(b.x.value(), b.y.value());
  }
};

std::ostream& operator<<(std::ostream& os, const AffinePoint& q);

// The 10 monomial values of q in MonomialOrder.
Coeffs monomial_vector(const AffinePoint& q);

enum class IrreducibilityClass {
  kReducibleRational,     // a linear factor over GF(p), possibly at infinity
  kConjugateLines,        // three Galois-conjugate lines over GF(p^3)
  kAbsolutelyIrreducible,
  kLowDegree,             // degree <= 2
};

std::string_view to_string(IrreducibilityClass c);

// Irreducible over GF(p) itself (the weaker reading of "irreducible").
inline bool rationally_irreducible(IrreducibilityClass c) {
  return c == IrreducibilityClass::kConjugateLines ||
         c == IrreducibilityClass::kAbsolutelyIrreducible;
}

/// Affine plane curve of degree <= 3, stored as its coefficient vector
/// normalized so the first nonzero entry is 1. Classification is computed
/// once at construction; the object is immutable afterwards.
class CurveCoeffs {
 public:
  // Throws InvalidInput on the zero vector or on entries >= p.
  CurveCoeffs(const Coeffs& raw, const PrimeModulus& p);

  const Coeffs& coeffs() const { return c_; }
  u64 operator[](int k) const { return c_[k]; }
  const PrimeModulus& modulus() const { return mod_; }
  int degree() const { return degree_; }
  IrreducibilityClass classification() const { return class_; }
  bool is_irreducible_cubic() const {
    return class_ == IrreducibilityClass::kAbsolutelyIrreducible;
  }

  friend bool operator==(const CurveCoeffs& a, const CurveCoeffs& b) {
    return a.mod_ == b.mod_ && a.c_ == b.c_;
  }

 private:
  Coeffs c_;
  PrimeModulus mod_;
  int degree_;
  IrreducibilityClass class_;
};

std::ostream& operator<<(std::ostream& os, const CurveCoeffs& c);

// First-nonzero-equals-one normalization; returns false for the zero vector.
bool normalize_projective(std::span<u64> v, const PrimeModulus& p);

FpElement evaluate(const CurveCoeffs& curve, const AffinePoint& q);
bool incident(const CurveCoeffs& curve, const AffinePoint& q);

inline constexpr u64 kEnumerationGuard = u64{1} << 16;

// All affine GF(p)-points, sorted by (x, y). Refuses p > 2^16.
std::vector<AffinePoint> rational_points(const CurveCoeffs& curve);

// The y with f(x0, y) = 0, sorted. Throws InvalidInput when the vertical line
// x = x0 is a component of the curve.
std::vector<FpElement> points_above(const CurveCoeffs& curve, u64 x0);

IrreducibilityClass classify_irreducibility(const CurveCoeffs& curve);

// Linear factor aX + bY + cZ of the homogenized cubic, normalized, over GF(p)
// or GF(p^3). Requires degree 3.
std::optional<std::array<FpElement, 3>> rational_linear_factor(const CurveCoeffs& curve);
std::optional<std::array<Fp3Element, 3>> cubic_extension_linear_factor(
    const CurveCoeffs& curve, const CubicModulus& ext);

// Degree-2 curve with nonsingular symmetric matrix. Odd p only.
bool conic_is_absolutely_irreducible(const CurveCoeffs& conic);

// Rejection sampling of uniform coefficient vectors until a degree-3,
// absolutely irreducible curve appears.
CurveCoeffs random_irreducible_cubic(std::uint64_t seed, const PrimeModulus& p);

// Curve file: header c00,...,c03; point file: header x,y.
void write_curves_csv(std::ostream& os, std::span<const CurveCoeffs> curves);
std::vector<CurveCoeffs> read_curves_csv(std::istream& is, const PrimeModulus& p);
void write_points_csv(std::ostream& os, std::span<const AffinePoint> points);
std::vector<AffinePoint> read_points_csv(std::istream& is, const PrimeModulus& p);

}  // namespace cubinc

#endif  // CUBINC_CURVES_HPP_
