#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <tuple>

#include "cubinc/field.hpp"
#include "cubinc/rng.hpp"

using namespace cubinc;

namespace {

// Exhaustive scan for the lexicographically first monic cubic without a root,
// evaluating at every residue. Independent of the gcd-based search.
std::array<u64, 3> brute_force_cubic_modulus(u64 p) {
  for (u64 a2 = 0; a2 < p; ++a2)
    for (u64 a1 = 0; a1 < p; ++a1)
      for (u64 a0 = 0; a0 < p; ++a0) {
        bool has_root = false;
        for (u64 x = 0; x < p && !has_root; ++x) {
          const u64 v = (x * x % p * x + a2 * x % p * x + a1 * x + a0) % p;
          has_root = v == 0;
        }
        if (!has_root) return {a2, a1, a0};
      }
  return {0, 0, 0};
}

Fp3Element random_fp3(Rng& rng, const CubicModulus& m) {
  const u64 p = m.p.value();
  return Fp3Element({rng.below(p), rng.below(p), rng.below(p)}, m);
}

}  // namespace

TEST_CASE("prime modulus construction") {
  CHECK(is_prime(2));
  CHECK(is_prime(2147483647));
  CHECK(is_prime(PrimeModulus::kMaxModulus - 56));  // 2^62 - 57
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(561));
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to 2, 3, 5, 7
  CHECK_THROWS_AS(PrimeModulus(15), InvalidInput);
  CHECK_THROWS_AS(PrimeModulus(0), InvalidInput);
  CHECK_THROWS_AS(PrimeModulus(u64{1} << 62), InvalidInput);
}

TEST_CASE("fp_arith examples") {
  const PrimeModulus p5(5), p2(2);
  CHECK(fp_arith(FpElement(2, p5), FpElement(3, p5), FpOp::kMul).value() == 1);
  CHECK(fp_arith(FpElement(4, p5), FpElement(4, p5), FpOp::kAdd).value() == 3);
  CHECK(fp_arith(FpElement(1, p2), FpElement(0, p2), FpOp::kNeg).value() == 1);
  CHECK(fp_arith(FpElement(1, p5), FpElement(3, p5), FpOp::kSub).value() == 3);
  CHECK(FpElement(12, p5).value() == 2);
}

TEST_CASE("mismatched moduli are a configuration error") {
  const PrimeModulus p5(5), p7(7);
  CHECK_THROWS_AS(FpElement(1, p5) + FpElement(1, p7), ConfigError);
  CHECK_THROWS_AS(fp_arith(FpElement(1, p5), FpElement(1, p7), FpOp::kNeg), ConfigError);
  const CubicModulus m5 = find_cubic_modulus(p5), m7 = find_cubic_modulus(p7);
  CHECK_THROWS_AS(Fp3Element::embed(1, m5) * Fp3Element::embed(1, m7), ConfigError);
}

TEST_CASE("fp_inv") {
  CHECK(fp_inv(FpElement(2, PrimeModulus(5))).value() == 3);
  CHECK(fp_inv(FpElement(1, PrimeModulus(7))).value() == 1);
  CHECK_THROWS_AS(fp_inv(FpElement(0, PrimeModulus(7))), DivisionByZero);

  const PrimeModulus big(2147483647);
  Rng rng(42);
  for (int i = 0; i < 100; ++i) {
    const FpElement a(1 + rng.below(big.value() - 1), big);
    CHECK((a * fp_inv(a)).value() == 1);
  }
  const PrimeModulus huge(PrimeModulus::kMaxModulus - 56);
  for (int i = 0; i < 100; ++i) {
    const FpElement a(1 + rng.below(huge.value() - 1), huge);
    CHECK((a * a.inverse()).value() == 1);
  }
}

TEST_CASE("GF(p) field axioms on random triples") {
  for (u64 pv : {2ULL, 3ULL, 13ULL, 2147483647ULL, 4611686018427387847ULL}) {
    const PrimeModulus p(pv);
    Rng rng(pv);
    for (int i = 0; i < 200; ++i) {
      const FpElement a(rng.next(), p), b(rng.next(), p), c(rng.next(), p);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a + (-a)).is_zero());
      CHECK(a - b == a + (-b));
      if (!a.is_zero()) CHECK((a * a.inverse()).value() == 1);
    }
  }
}

TEST_CASE("find_cubic_modulus matches exhaustive root scan") {
  CHECK(find_cubic_modulus(PrimeModulus(2)).a == std::array<u64, 3>{0, 1, 1});
  CHECK(find_cubic_modulus(PrimeModulus(3)).a == std::array<u64, 3>{0, 2, 1});
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 31ULL, 101ULL}) {
    CAPTURE(p);
    CHECK(find_cubic_modulus(PrimeModulus(p)).a == brute_force_cubic_modulus(p));
  }
}

TEST_CASE("find_cubic_modulus result has no root for large p") {
  const PrimeModulus p(2147483647);
  const CubicModulus m = find_cubic_modulus(p);
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const u64 x = rng.below(p.value());
    const u64 v = p.add(p.add(p.mul(p.mul(x, x), x), p.mul(m.a[0], p.mul(x, x))),
                        p.add(p.mul(m.a[1], x), m.a[2]));
    CHECK(v != 0);
  }
}

TEST_CASE("frobenius") {
  SUBCASE("p = 2: theta -> theta^2") {
    const CubicModulus m = find_cubic_modulus(PrimeModulus(2));
    const Fp3Element th = Fp3Element::theta(m);
    CHECK(frobenius(th) == Fp3Element({0, 0, 1}, m));
    // theta^3 = theta + 1 in characteristic 2
    CHECK(th * th * th == Fp3Element({1, 1, 0}, m));
  }
  for (u64 pv : {2ULL, 3ULL, 7ULL, 13ULL, 2147483647ULL}) {
    CAPTURE(pv);
    const CubicModulus m = find_cubic_modulus(PrimeModulus(pv));
    Rng rng(pv + 1);
    for (int i = 0; i < 100; ++i) {
      const Fp3Element a = random_fp3(rng, m), b = random_fp3(rng, m);
      const Fp3Element e = Fp3Element::embed(rng.next(), m);
      CHECK(frobenius(e) == e);
      CHECK(frobenius(frobenius(frobenius(a))) == a);
      CHECK(frobenius(a + b) == frobenius(a) + frobenius(b));
      CHECK(frobenius(a * b) == frobenius(a) * frobenius(b));
    }
  }
}

TEST_CASE("frobenius fixes exactly the prime field") {
  for (u64 pv : {2ULL, 3ULL, 5ULL, 7ULL}) {
    const CubicModulus m = find_cubic_modulus(PrimeModulus(pv));
    for (u64 c0 = 0; c0 < pv; ++c0)
      for (u64 c1 = 0; c1 < pv; ++c1)
        for (u64 c2 = 0; c2 < pv; ++c2) {
          const Fp3Element e({c0, c1, c2}, m);
          CHECK((frobenius(e) == e) == e.in_prime_field());
        }
  }
}

TEST_CASE("GF(p^3) field axioms on random triples") {
  for (u64 pv : {2ULL, 5ULL, 11ULL, 4611686018427387847ULL}) {
    const CubicModulus m = find_cubic_modulus(PrimeModulus(pv));
    Rng rng(pv * 3);
    for (int i = 0; i < 100; ++i) {
      const Fp3Element a = random_fp3(rng, m), b = random_fp3(rng, m),
                       c = random_fp3(rng, m);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * b == b * a);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a - a).is_zero());
      if (!a.is_zero()) CHECK(a * a.inverse() == Fp3Element::embed(1, m));
    }
  }
  const CubicModulus m = find_cubic_modulus(PrimeModulus(5));
  CHECK_THROWS_AS(Fp3Element::embed(0, m).inverse(), DivisionByZero);
}
