#include "cubinc/field.hpp"

#include <string>

#include "cubinc/poly.hpp"

namespace cubinc {

namespace {

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128{a} * b % m); }

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 sp : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % sp == 0) return n == sp;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeModulus::PrimeModulus(u64 p) : p_(p) {
  if (p > kMaxModulus)
    throw InvalidInput("modulus " + std::to_string(p) + " exceeds 62 bits");
  if (!is_prime(p))
    throw InvalidInput("modulus " + std::to_string(p) + " is not prime");
}

u64 PrimeModulus::pow(u64 base, u64 exp) const { return powmod(base, exp, p_); }

u64 PrimeModulus::inv(u64 a) const {
  a %= p_;
  if (a == 0) throw DivisionByZero("inverse of zero modulo " + std::to_string(p_));
  // Invariant: r0 = s0 * a (mod p), r1 = s1 * a (mod p).
  std::int64_t s0 = 1, s1 = 0;
  u64 r0 = a, r1 = p_;
  while (r1 != 0) {
    const u64 q = r0 / r1;
    u64 r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t s2 = s0 - static_cast<std::int64_t>(q) * s1;
    s0 = s1;
    s1 = s2;
  }
  // |s0| <= p / 2 < 2^61, so the arithmetic above never overflows.
  return s0 < 0 ? p_ - static_cast<u64>(-s0) : static_cast<u64>(s0);
}

void FpElement::check_same(const FpElement& o) const {
  if (!(mod_ == o.mod_))
    throw ConfigError("GF(p) operands over different moduli: " +
                      std::to_string(mod_.value()) + " vs " +
                      std::to_string(o.mod_.value()));
}

FpElement FpElement::operator+(const FpElement& o) const {
  check_same(o);
  return {mod_.add(value_, o.value_), mod_};
}

FpElement FpElement::operator-(const FpElement& o) const {
  check_same(o);
  return {mod_.sub(value_, o.value_), mod_};
}

FpElement FpElement::operator*(const FpElement& o) const {
  check_same(o);
  return {mod_.mul(value_, o.value_), mod_};
}

std::ostream& operator<<(std::ostream& os, const FpElement& e) {
  return os << e.value();
}

FpElement fp_arith(const FpElement& a, const FpElement& b, FpOp op) {
  switch (op) {
    case FpOp::kAdd:
      return a + b;
    case FpOp::kSub:
      return a - b;
    case FpOp::kMul:
      return a * b;
    case FpOp::kNeg:
      if (!(a.modulus() == b.modulus()))
        throw ConfigError("GF(p) operands over different moduli");
      return -a;
  }
  throw InvalidInput("unknown GF(p) operation");
}

FpElement fp_inv(const FpElement& a) { return a.inverse(); }

CubicModulus find_cubic_modulus(const PrimeModulus& p) {
  const PrimeFieldCtx ctx{p};
  const u64 q = p.value();
  const Poly<PrimeFieldCtx> x = Poly<PrimeFieldCtx>::x(ctx);
  for (u64 a2 = 0; a2 < q; ++a2) {
    for (u64 a1 = 0; a1 < q; ++a1) {
      for (u64 a0 = 1; a0 < q; ++a0) {  // a0 = 0 has the root 0
        Poly<PrimeFieldCtx> f(ctx, {ctx.embed(a0), ctx.embed(a1), ctx.embed(a2),
                                    ctx.one()});
        Poly<PrimeFieldCtx> xp = poly_powmod(x, q, f);
        if (poly_gcd(f, xp - x).degree() == 0) return CubicModulus{p, {a2, a1, a0}};
      }
    }
  }
  throw std::logic_error("no irreducible cubic found");
}

Fp3Element::Fp3Element(std::array<u64, 3> c, const CubicModulus& modulus)
    : c_{modulus.p.reduce(c[0]), modulus.p.reduce(c[1]), modulus.p.reduce(c[2])},
      mod_(modulus) {}

void Fp3Element::check_same(const Fp3Element& o) const {
  if (!(mod_ == o.mod_)) throw ConfigError("GF(p^3) operands over different moduli");
}

Fp3Element Fp3Element::operator+(const Fp3Element& o) const {
  check_same(o);
  const PrimeModulus& p = mod_.p;
  return Fp3Element({p.add(c_[0], o.c_[0]), p.add(c_[1], o.c_[1]), p.add(c_[2], o.c_[2])},
                    mod_);
}

Fp3Element Fp3Element::operator-(const Fp3Element& o) const {
  check_same(o);
  const PrimeModulus& p = mod_.p;
  return Fp3Element({p.sub(c_[0], o.c_[0]), p.sub(c_[1], o.c_[1]), p.sub(c_[2], o.c_[2])},
                    mod_);
}

Fp3Element Fp3Element::operator-() const {
  const PrimeModulus& p = mod_.p;
  return Fp3Element({p.neg(c_[0]), p.neg(c_[1]), p.neg(c_[2])}, mod_);
}

Fp3Element Fp3Element::operator*(const Fp3Element& o) const {
  check_same(o);
  const PrimeModulus& p = mod_.p;
  // Schoolbook product, degree <= 4, then theta^3 = -(a2 theta^2 + a1 theta + a0).
  std::array<u64, 5> t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i + j] = p.add(t[i + j], p.mul(c_[i], o.c_[j]));
  const u64 a2 = mod_.a[0], a1 = mod_.a[1], a0 = mod_.a[2];
  for (int d = 4; d >= 3; --d) {
    const u64 h = t[d];
    t[d] = 0;
    t[d - 1] = p.sub(t[d - 1], p.mul(h, a2));
    t[d - 2] = p.sub(t[d - 2], p.mul(h, a1));
    t[d - 3] = p.sub(t[d - 3], p.mul(h, a0));
  }
  return Fp3Element({t[0], t[1], t[2]}, mod_);
}

Fp3Element Fp3Element::pow(u64 e) const {
  Fp3Element r = embed(1, mod_);
  Fp3Element b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Fp3Element Fp3Element::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in GF(p^3)");
  const Fp3Element a1 = frobenius(*this);
  const Fp3Element a2 = frobenius(a1);
  const Fp3Element conj = a1 * a2;
  const Fp3Element norm = *this * conj;  // lies in GF(p)
  const u64 n_inv = mod_.p.inv(norm.c_[0]);
  return conj * embed(n_inv, mod_);
}

std::ostream& operator<<(std::ostream& os, const Fp3Element& e) {
  const auto& c = e.coeffs();
  return os << "(" << c[0] << "," << c[1] << "," << c[2] << ")";
}

Fp3Element frobenius(const Fp3Element& e) { return e.pow(e.modulus().p.value()); }

}  // namespace cubinc
