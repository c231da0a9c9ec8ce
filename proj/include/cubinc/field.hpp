#ifndef CUBINC_FIELD_HPP_
#define CUBINC_FIELD_HPP_

#include <array>
#include <cstdint>
#include <ostream>

#include "cubinc/errors.hpp"

namespace cubinc {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 n);

/// A prime p < 2^62. Products of two residues fit in 128 bits, and sums of
/// ten such products still do, which the counting engine relies on.
class PrimeModulus {
 public:
  static constexpr u64 kMaxModulus = (u64{1} << 62) - 1;

  explicit PrimeModulus(u64 p);

  u64 value() const { return p_; }

  u64 reduce(u64 a) const { return a % p_; }
  u64 reduce(u128 a) const { return static_cast<u64>(a % p_); }
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
  u64 mul(u64 a, u64 b) const { return static_cast<u64>(u128{a} * b % p_); }
  u64 pow(u64 base, u64 exp) const;
  // Extended Euclid. Throws DivisionByZero on a == 0.
  u64 inv(u64 a) const;

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  u64 p_;
};

/// Canonical residue in [0, p) tagged with its modulus.
class FpElement {
 public:
  FpElement(u64 value, const PrimeModulus& modulus)
      : value_(modulus.reduce(value)), mod_(modulus) {}

  u64 value() const { return value_; }
  const PrimeModulus& modulus() const { return mod_; }
  bool is_zero() const { return value_ == 0; }

  FpElement operator+(const FpElement& o) const;
  FpElement operator-(const FpElement& o) const;
  FpElement operator*(const FpElement& o) const;
  FpElement operator-() const { return {mod_.neg(value_), mod_}; }
  FpElement& operator+=(const FpElement& o) { return *this = *this + o; }
  FpElement& operator-=(const FpElement& o) { return *this = *this - o; }
  FpElement& operator*=(const FpElement& o) { return *this = *this * o; }
  FpElement inverse() const { return {mod_.inv(value_), mod_}; }
  FpElement pow(u64 e) const { return {mod_.pow(value_, e), mod_}; }

  friend bool operator==(const FpElement&, const FpElement&) = default;

 private:
  void check_same(const FpElement& o) const;

  u64 value_;
  PrimeModulus mod_;
};

std::ostream& operator<<(std::ostream& os, const FpElement& e);

enum class FpOp { kAdd, kSub, kMul, kNeg };

// kNeg ignores b except for the modulus check.
FpElement fp_arith(const FpElement& a, const FpElement& b, FpOp op);
FpElement fp_inv(const FpElement& a);

/// Monic irreducible x^3 + a2 x^2 + a1 x + a0 over GF(p).
struct CubicModulus {
  PrimeModulus p;
  std::array<u64, 3> a;  // (a2, a1, a0)

  friend bool operator==(const CubicModulus&, const CubicModulus&) = default;
};

// Lexicographically smallest (a2, a1, a0) giving an irreducible cubic.
// Irreducibility of a cubic is equivalent to having no root in GF(p); the
// root test is gcd(x^p - x, f) == 1, so the scan is cheap for large p too.
CubicModulus find_cubic_modulus(const PrimeModulus& p);

/// c0 + c1*theta + c2*theta^2 in GF(p)[theta]/(modulus).
class Fp3Element {
 public:
  Fp3Element(std::array<u64, 3> c, const CubicModulus& modulus);
  static Fp3Element embed(u64 v, const CubicModulus& modulus) {
    return Fp3Element({v, 0, 0}, modulus);
  }
  static Fp3Element theta(const CubicModulus& modulus) {
    return Fp3Element({0, 1, 0}, modulus);
  }

  const std::array<u64, 3>& coeffs() const { return c_; }
  const CubicModulus& modulus() const { return mod_; }
  bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0; }
  bool in_prime_field() const { return c_[1] == 0 && c_[2] == 0; }

  Fp3Element operator+(const Fp3Element& o) const;
  Fp3Element operator-(const Fp3Element& o) const;
  Fp3Element operator*(const Fp3Element& o) const;
  Fp3Element operator-() const;
  Fp3Element& operator+=(const Fp3Element& o) { return *this = *this + o; }
  Fp3Element& operator-=(const Fp3Element& o) { return *this = *this - o; }
  Fp3Element& operator*=(const Fp3Element& o) { return *this = *this * o; }
  Fp3Element pow(u64 e) const;
  // a^-1 = a^(p + p^2) / N(a), where N(a) = a^(1 + p + p^2) lies in GF(p).
  Fp3Element inverse() const;

  friend bool operator==(const Fp3Element&, const Fp3Element&) = default;

 private:
  void check_same(const Fp3Element& o) const;

  std::array<u64, 3> c_;
  CubicModulus mod_;
};

std::ostream& operator<<(std::ostream& os, const Fp3Element& e);

// e^p.
Fp3Element frobenius(const Fp3Element& e);

}  // namespace cubinc

#endif  // CUBINC_FIELD_HPP_
