#include "cubinc/curves.hpp"

#include <map>
#include <mutex>
#include <ostream>
#include <string>

#include "cubinc/csv.hpp"
#include "cubinc/poly.hpp"
#include "cubinc/rng.hpp"

namespace cubinc {

namespace {

constexpr int idx(int i, int j) { return monomial_index(i, j); }

// The canonical GF(p^3) modulus, found once per prime.
const CubicModulus& cached_cubic_modulus(const PrimeModulus& p) {
  static std::mutex mu;
  static std::map<u64, CubicModulus> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(p.value());
  if (it == cache.end()) it = cache.emplace(p.value(), find_cubic_modulus(p)).first;
  return it->second;
}

template <class Elem>
bool normalize_triple(std::array<Elem, 3>& v) {
  for (int k = 0; k < 3; ++k) {
    if (!v[k].is_zero()) {
      const Elem inv = v[k].inverse();
      for (auto& e : v) e *= inv;
      return true;
    }
  }
  return false;
}

template <class Elem>
bool triple_less(const std::array<Elem, 3>& a, const std::array<Elem, 3>& b) {
  auto key = [](const Elem& e) {
    if constexpr (std::is_same_v<Elem, FpElement>) {
      return std::array<u64, 3>{e.value(), 0, 0};
    } else {
      return e.coeffs();
    }
  };
  for (int k = 0; k < 3; ++k)
    if (key(a[k]) != key(b[k])) return key(a[k]) < key(b[k]);
  return false;
}

// Searches the homogenization F(X, Y, Z) of a degree-3 curve for a linear
// factor over the field of Ctx. Z itself never divides F at degree 3, so every
// factor is either X - beta Z (vertical) or Y - alpha X - beta Z.
template <class Ctx>
std::optional<std::array<typename Ctx::Elem, 3>> find_linear_factor(const Coeffs& c,
                                                                    const Ctx& ctx) {
  using Elem = typename Ctx::Elem;
  using P = Poly<Ctx>;
  auto C = [&](int i, int j) { return ctx.embed(c[idx(i, j)]); };
  std::vector<std::array<Elem, 3>> found;

  // x = beta is a component iff beta is a common root of the coefficients of
  // y^0, y^1, y^2 of f(beta, y), with no y^3 term.
  if (c[idx(0, 3)] == 0) {
    P g0(ctx, {C(0, 0), C(1, 0), C(2, 0), C(3, 0)});
    P g1(ctx, {C(0, 1), C(1, 1), C(2, 1)});
    P g2(ctx, {C(0, 2), C(1, 2)});
    P g = poly_gcd(poly_gcd(g0, g1), g2);
    if (g.is_zero()) throw std::logic_error("zero curve reached factor search");
    for (const Elem& beta : poly_roots(g)) found.push_back({ctx.one(), ctx.zero(), -beta});
  }

  // y = alpha x + beta: the x^3 coefficient of f(x, alpha x + beta) is the
  // cubic part h(alpha) = f3(1, alpha); the x^2, x^1, x^0 coefficients are
  // polynomials in beta that must vanish together.
  P h(ctx, {C(3, 0), C(2, 1), C(1, 2), C(0, 3)});
  const u64 binom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  for (const Elem& alpha : poly_roots(h)) {
    std::array<Elem, 4> alpha_pow{ctx.one(), alpha, alpha * alpha, alpha * alpha * alpha};
    std::array<std::vector<Elem>, 3> e;
    for (auto& v : e) v.assign(4, ctx.zero());
    for (const auto& [i, j] : kMonomials) {
      const Elem cij = C(i, j);
      if (cij.is_zero()) continue;
      // c_ij x^i (alpha x + beta)^j = sum_l C(j,l) alpha^l beta^(j-l) x^(i+l)
      for (int l = 0; l <= j; ++l) {
        const int xe = i + l;
        if (xe > 2) continue;
        e[xe][j - l] += cij * ctx.embed(binom[j][l]) * alpha_pow[l];
      }
    }
    P g = poly_gcd(poly_gcd(P(ctx, e[0]), P(ctx, e[1])), P(ctx, e[2]));
    if (g.is_zero()) throw std::logic_error("zero curve reached factor search");
    for (const Elem& beta : poly_roots(g)) {
      std::array<Elem, 3> form{-alpha, ctx.one(), -beta};
      normalize_triple(form);
      found.push_back(form);
    }
  }
  if (found.empty()) return std::nullopt;
  auto best = found.front();
  for (const auto& f : found)
    if (triple_less(f, best)) best = f;
  return best;
}

int degree_of(const Coeffs& c) {
  int d = -1;
  for (int k = 0; k < kNumMonomials; ++k)
    if (c[k] != 0) d = std::max(d, kMonomials[k].first + kMonomials[k].second);
  return d;
}

// Two distinct affine rational points rule out three conjugate lines: a
// GF(p)-point on one conjugate line lies on all three, and three distinct
// lines share at most one point.
bool has_two_rational_points(const CurveCoeffs& curve) {
  const u64 p = curve.modulus().value();
  std::size_t seen = 0;
  const u64 tries = std::min<u64>(p, 32);
  for (u64 x0 = 0; x0 < tries; ++x0) {
    seen += points_above(curve, x0).size();
    if (seen >= 2) return true;
  }
  return false;
}

IrreducibilityClass classify(const CurveCoeffs& curve) {
  if (curve.degree() <= 2) return IrreducibilityClass::kLowDegree;
  if (rational_linear_factor(curve)) return IrreducibilityClass::kReducibleRational;
  if (has_two_rational_points(curve)) return IrreducibilityClass::kAbsolutelyIrreducible;
  if (cubic_extension_linear_factor(curve, cached_cubic_modulus(curve.modulus())))
    return IrreducibilityClass::kConjugateLines;
  return IrreducibilityClass::kAbsolutelyIrreducible;
}

}  // namespace

AffinePoint::AffinePoint(FpElement x_, FpElement y_) : x(x_), y(y_) {
  if (!(x.modulus() == y.modulus())) throw ConfigError("point coordinates over different moduli");
}

std::ostream& operator<<(std::ostream& os, const AffinePoint& q) {
  return os << "(" << q.x.value() << "," << q.y.value() << ")";
}

Coeffs monomial_vector(const AffinePoint& q) {
  const PrimeModulus& p = q.modulus();
  const u64 x = q.x.value(), y = q.y.value();
  const u64 x2 = p.mul(x, x), y2 = p.mul(y, y), xy = p.mul(x, y);
  return {1 % p.value(), x, y, x2, xy, y2, p.mul(x2, x), p.mul(x2, y), p.mul(x, y2),
          p.mul(y2, y)};
}

std::string_view to_string(IrreducibilityClass c) {
  switch (c) {
    case IrreducibilityClass::kReducibleRational:
      return "ReducibleRational";
    case IrreducibilityClass::kConjugateLines:
      return "ConjugateLines";
    case IrreducibilityClass::kAbsolutelyIrreducible:
      return "AbsolutelyIrreducible";
    case IrreducibilityClass::kLowDegree:
      return "LowDegree";
  }
  return "?";
}

bool normalize_projective(std::span<u64> v, const PrimeModulus& p) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] != 0) {
      const u64 inv = p.inv(v[k]);
      for (auto& e : v) e = p.mul(e, inv);
      return true;
    }
  }
  return false;
}

CurveCoeffs::CurveCoeffs(const Coeffs& raw, const PrimeModulus& p) : c_(raw), mod_(p) {
  for (u64 e : c_)
    if (e >= p.value()) throw InvalidInput("curve coefficient not reduced modulo p");
  if (!normalize_projective(c_, p)) throw InvalidInput("zero coefficient vector is not a curve");
  degree_ = degree_of(c_);
  class_ = classify(*this);
}

std::ostream& operator<<(std::ostream& os, const CurveCoeffs& c) {
  os << "[";
  for (int k = 0; k < kNumMonomials; ++k) os << (k ? "," : "") << c[k];
  return os << "]";
}

FpElement evaluate(const CurveCoeffs& curve, const AffinePoint& q) {
  if (!(curve.modulus() == q.modulus())) throw ConfigError("curve and point over different moduli");
  const PrimeModulus& p = curve.modulus();
  const Coeffs m = monomial_vector(q);
  u128 acc = 0;
  for (int k = 0; k < kNumMonomials; ++k) acc += u128{curve[k]} * m[k];
  return FpElement(p.reduce(acc), p);
}

bool incident(const CurveCoeffs& curve, const AffinePoint& q) {
  return evaluate(curve, q).is_zero();
}

std::vector<AffinePoint> rational_points(const CurveCoeffs& curve) {
  const PrimeModulus& p = curve.modulus();
  if (p.value() > kEnumerationGuard)
    throw GuardExceeded("rational_points enumerates p^2 points; refusing p = " +
                        std::to_string(p.value()) + " > 2^16");
  std::vector<AffinePoint> out;
  for (u64 x = 0; x < p.value(); ++x)
    for (u64 y = 0; y < p.value(); ++y) {
      AffinePoint q(x, y, p);
      if (incident(curve, q)) out.push_back(q);
    }
  return out;
}

std::vector<FpElement> points_above(const CurveCoeffs& curve, u64 x0) {
  const PrimeModulus& p = curve.modulus();
  const PrimeFieldCtx ctx{p};
  std::vector<FpElement> coef(4, ctx.zero());
  const u64 x = p.reduce(x0);
  for (int k = 0; k < kNumMonomials; ++k) {
    const auto [i, j] = kMonomials[k];
    coef[j] += ctx.embed(p.mul(curve[k], p.pow(x, i)));
  }
  Poly<PrimeFieldCtx> g(ctx, std::move(coef));
  if (g.is_zero())
    throw InvalidInput("vertical line x = " + std::to_string(x) + " is a component");
  return poly_roots(g);
}

std::optional<std::array<FpElement, 3>> rational_linear_factor(const CurveCoeffs& curve) {
  if (curve.degree() != 3) throw InvalidInput("linear factor search needs a degree-3 curve");
  const PrimeFieldCtx ctx{curve.modulus()};
  return find_linear_factor(curve.coeffs(), ctx);
}

std::optional<std::array<Fp3Element, 3>> cubic_extension_linear_factor(
    const CurveCoeffs& curve, const CubicModulus& ext) {
  if (curve.degree() != 3) throw InvalidInput("linear factor search needs a degree-3 curve");
  if (!(ext.p == curve.modulus())) throw ConfigError("extension over a different prime");
  const CubicFieldCtx ctx{ext};
  return find_linear_factor(curve.coeffs(), ctx);
}

IrreducibilityClass classify_irreducibility(const CurveCoeffs& curve) {
  return curve.classification();
}

bool conic_is_absolutely_irreducible(const CurveCoeffs& conic) {
  if (conic.degree() != 2) throw InvalidInput("conic test needs a degree-2 curve");
  const PrimeModulus& p = conic.modulus();
  if (p.value() == 2) throw InvalidInput("conic determinant test needs odd p");
  const u64 a = conic[idx(2, 0)], b = conic[idx(1, 1)], c = conic[idx(0, 2)];
  const u64 d = conic[idx(1, 0)], e = conic[idx(0, 1)], g = conic[idx(0, 0)];
  // det [[2a, b, d], [b, 2c, e], [d, e, 2g]]
  const u64 a2 = p.add(a, a), c2 = p.add(c, c), g2 = p.add(g, g);
  u64 det = p.mul(a2, p.sub(p.mul(c2, g2), p.mul(e, e)));
  det = p.sub(det, p.mul(b, p.sub(p.mul(b, g2), p.mul(e, d))));
  det = p.add(det, p.mul(d, p.sub(p.mul(b, e), p.mul(c2, d))));
  return det != 0;
}

CurveCoeffs random_irreducible_cubic(std::uint64_t seed, const PrimeModulus& p) {
  Rng rng(seed);
  while (true) {
    Coeffs c;
    for (auto& e : c) e = rng.below(p.value());
    if (degree_of(c) != 3) continue;
    CurveCoeffs curve(c, p);
    if (curve.is_irreducible_cubic()) return curve;
  }
}

void write_curves_csv(std::ostream& os, std::span<const CurveCoeffs> curves) {
  for (int k = 0; k < kNumMonomials; ++k) os << (k ? "," : "") << kMonomialNames[k];
  os << "\n";
  for (const auto& c : curves) {
    for (int k = 0; k < kNumMonomials; ++k) os << (k ? "," : "") << c[k];
    os << "\n";
  }
}

std::vector<CurveCoeffs> read_curves_csv(std::istream& is, const PrimeModulus& p) {
  csv::expect_header(is, "c00,c10,c01,c20,c11,c02,c30,c21,c12,c03");
  std::vector<CurveCoeffs> out;
  std::string line;
  while (csv::next_line(is, line)) {
    if (line.empty()) continue;
    const auto fields = csv::split(line);
    if (fields.size() != kNumMonomials)
      throw InvalidInput("curve row must have 10 fields: '" + line + "'");
    Coeffs c;
    for (int k = 0; k < kNumMonomials; ++k) c[k] = csv::parse_u64(fields[k]);
    out.emplace_back(c, p);
  }
  return out;
}

void write_points_csv(std::ostream& os, std::span<const AffinePoint> points) {
  os << "x,y\n";
  for (const auto& q : points) os << q.x.value() << "," << q.y.value() << "\n";
}

std::vector<AffinePoint> read_points_csv(std::istream& is, const PrimeModulus& p) {
  csv::expect_header(is, "x,y");
  std::vector<AffinePoint> out;
  std::string line;
  while (csv::next_line(is, line)) {
    if (line.empty()) continue;
    const auto fields = csv::split(line);
    if (fields.size() != 2) throw InvalidInput("point row must have 2 fields: '" + line + "'");
    const u64 x = csv::parse_u64(fields[0]), y = csv::parse_u64(fields[1]);
    if (x >= p.value() || y >= p.value())
      throw InvalidInput("point coordinate not reduced modulo p: '" + line + "'");
    out.emplace_back(x, y, p);
  }
  return out;
}

}  // namespace cubinc
