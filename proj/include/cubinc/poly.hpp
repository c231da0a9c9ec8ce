#ifndef CUBINC_POLY_HPP_
#define CUBINC_POLY_HPP_

// Dense univariate polynomials over GF(p) or GF(p^3), just enough to find the
// roots of polynomials of degree <= 3 (irreducibility of the cubic modulus,
// linear-factor search, points on a curve over a vertical line).

#include <algorithm>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "cubinc/field.hpp"

namespace cubinc {

struct PrimeFieldCtx {
  using Elem = FpElement;
  PrimeModulus mod;

  Elem embed(u64 v) const { return Elem(v, mod); }
  Elem zero() const { return embed(0); }
  Elem one() const { return embed(1); }
  u64 characteristic() const { return mod.value(); }
  int extension_degree() const { return 1; }
  // Shift sequence for equal-degree splitting.
  Elem shift(u64 n) const { return embed(n); }
  // Element with index i, for enumerating small fields: i < p.
  Elem element(u64 i) const { return embed(i); }
  u64 order_if_small() const { return mod.value(); }
};

struct CubicFieldCtx {
  using Elem = Fp3Element;
  CubicModulus mod;

  Elem embed(u64 v) const { return Elem::embed(v, mod); }
  Elem zero() const { return embed(0); }
  Elem one() const { return embed(1); }
  u64 characteristic() const { return mod.p.value(); }
  int extension_degree() const { return 3; }
  // Shifts from the prime field cannot separate Galois-conjugate roots, so
  // the theta-coordinates must vary too.
  Elem shift(u64 n) const {
    return Elem({n % 5, (n / 5) % 5 + 1, n / 25}, mod);
  }
  // i < p^3, base-p digits.
  Elem element(u64 i) const {
    const u64 p = mod.p.value();
    return Elem({i % p, (i / p) % p, i / p / p}, mod);
  }
  u64 order_if_small() const {
    const u64 p = mod.p.value();
    return p * p * p;
  }
};

template <class Ctx>
class Poly {
 public:
  using Elem = typename Ctx::Elem;

  explicit Poly(const Ctx& ctx) : ctx_(&ctx) {}
  Poly(const Ctx& ctx, std::vector<Elem> c) : ctx_(&ctx), c_(std::move(c)) {
    trim();
  }

  static Poly x(const Ctx& ctx) { return Poly(ctx, {ctx.zero(), ctx.one()}); }
  static Poly constant(const Ctx& ctx, const Elem& e) { return Poly(ctx, {e}); }

  const Ctx& ctx() const { return *ctx_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Elem>& coeffs() const { return c_; }
  Elem coeff(int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : ctx_->zero();
  }
  const Elem& lead() const { return c_.back(); }

  Elem eval(const Elem& t) const {
    Elem acc = ctx_->zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  Poly operator+(const Poly& o) const {
    std::vector<Elem> r(std::max(c_.size(), o.c_.size()), ctx_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Poly(*ctx_, std::move(r));
  }
  Poly operator-(const Poly& o) const {
    std::vector<Elem> r(std::max(c_.size(), o.c_.size()), ctx_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return Poly(*ctx_, std::move(r));
  }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(*ctx_);
    std::vector<Elem> r(c_.size() + o.c_.size() - 1, ctx_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Poly(*ctx_, std::move(r));
  }
  Poly scaled(const Elem& s) const {
    std::vector<Elem> r = c_;
    for (auto& e : r) e *= s;
    return Poly(*ctx_, std::move(r));
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return scaled(lead().inverse());
  }

  // Returns (quotient, remainder).
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
    std::vector<Elem> rem = c_;
    const int dd = d.degree();
    if (degree() < dd) return {Poly(*ctx_), *this};
    std::vector<Elem> quo(degree() - dd + 1, ctx_->zero());
    const Elem inv_lead = d.lead().inverse();
    for (int i = degree(); i >= dd; --i) {
      if (rem[i].is_zero()) continue;
      const Elem f = rem[i] * inv_lead;
      quo[i - dd] = f;
      for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= f * d.c_[j];
    }
    rem.erase(rem.begin() + dd, rem.end());
    return {Poly(*ctx_, std::move(quo)), Poly(*ctx_, std::move(rem))};
  }
  Poly operator%(const Poly& d) const { return divmod(d).second; }
  Poly operator/(const Poly& d) const { return divmod(d).first; }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  const Ctx* ctx_;
  std::vector<Elem> c_;
};

// Monic gcd; gcd(0, 0) = 0.
template <class Ctx>
Poly<Ctx> poly_gcd(Poly<Ctx> a, Poly<Ctx> b) {
  while (!b.is_zero()) {
    Poly<Ctx> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

template <class Ctx>
Poly<Ctx> poly_powmod(Poly<Ctx> base, u64 e, const Poly<Ctx>& m) {
  Poly<Ctx> result = Poly<Ctx>::constant(base.ctx(), base.ctx().one()) % m;
  base = base % m;
  while (e > 0) {
    if (e & 1) result = (result * base) % m;
    e >>= 1;
    if (e > 0) base = (base * base) % m;
  }
  return result;
}

namespace detail {

template <class Ctx>
void split_roots(const Poly<Ctx>& r, std::vector<typename Ctx::Elem>& out) {
  const Ctx& ctx = r.ctx();
  if (r.degree() <= 0) return;
  if (r.degree() == 1) {
    out.push_back(-(r.coeff(0) * r.lead().inverse()));
    return;
  }
  const u64 p = ctx.characteristic();
  if (p == 2) {
    // GF(2) or GF(8): enumerate.
    for (u64 i = 0; i < ctx.order_if_small(); ++i) {
      auto e = ctx.element(i);
      if (r.eval(e).is_zero()) out.push_back(e);
    }
    return;
  }
  // Cantor-Zassenhaus: gcd(r, (x + d)^((q-1)/2) - 1) for q = p^deg, with
  // (p^3 - 1)/2 = ((p - 1)/2) * (p^2 + p + 1).
  const Poly<Ctx> one = Poly<Ctx>::constant(ctx, ctx.one());
  for (u64 n = 0; n < 4096; ++n) {
    Poly<Ctx> u = Poly<Ctx>::x(ctx) + Poly<Ctx>::constant(ctx, ctx.shift(n));
    Poly<Ctx> w = poly_powmod(u, (p - 1) / 2, r);
    if (ctx.extension_degree() == 3) {
      Poly<Ctx> wp = poly_powmod(w, p, r);
      Poly<Ctx> wpp = poly_powmod(wp, p, r);
      w = (((w * wp) % r) * wpp) % r;
    }
    Poly<Ctx> s = poly_gcd(r, w - one);
    if (s.degree() > 0 && s.degree() < r.degree()) {
      split_roots(s, out);
      split_roots(r / s, out);
      return;
    }
  }
  throw std::logic_error("root splitting did not converge");
}

}  // namespace detail

// Distinct roots of g in the field of Ctx, sorted by coefficients. g must be
// nonzero.
template <class Ctx>
std::vector<typename Ctx::Elem> poly_roots(const Poly<Ctx>& g) {
  using Elem = typename Ctx::Elem;
  if (g.is_zero()) throw InvalidInput("roots of the zero polynomial");
  std::vector<Elem> out;
  if (g.degree() == 0) return out;
  const Ctx& ctx = g.ctx();
  const Poly<Ctx> m = g.monic();
  const Poly<Ctx> x = Poly<Ctx>::x(ctx);
  Poly<Ctx> xq = x % m;
  for (int i = 0; i < ctx.extension_degree(); ++i)
    xq = poly_powmod(xq, ctx.characteristic(), m);
  detail::split_roots(poly_gcd(m, xq - x), out);
  std::sort(out.begin(), out.end(), [](const Elem& a, const Elem& b) {
    if constexpr (std::is_same_v<Elem, FpElement>) {
      return a.value() < b.value();
    } else {
      return a.coeffs() < b.coeffs();
    }
  });
  return out;
}

}  // namespace cubinc

#endif  // CUBINC_POLY_HPP_
