#include "cubinc/oracle.hpp"

#include <algorithm>
#include <ostream>

#include "cubinc/errors.hpp"
#include "cubinc/parallel.hpp"
#include "cubinc/rng.hpp"

namespace cubinc::oracle {

namespace {

FpElement naive_eval(const Coeffs& c, const AffinePoint& q) {
  const PrimeModulus& p = q.modulus();
  FpElement acc(0, p);
  for (int k = 0; k < kNumMonomials; ++k) {
    const auto [i, j] = kMonomials[k];
    acc += FpElement(c[k], p) * q.x.pow(i) * q.y.pow(j);
  }
  return acc;
}

// A variable written as alpha*s + beta*t.
using Lin = std::array<Fp3Element, 2>;

// Coefficients of the binary cubic F(X(s,t), Y(s,t), Z(s,t)); index = power of s.
std::array<Fp3Element, 4> restrict_form(const Coeffs& c, const std::array<Lin, 3>& xyz,
                                        const CubicModulus& ext) {
  const Fp3Element zero = Fp3Element::embed(0, ext);
  std::array<Fp3Element, 4> out{zero, zero, zero, zero};
  for (int k = 0; k < kNumMonomials; ++k) {
    if (c[k] == 0) continue;
    const auto [i, j] = kMonomials[k];
    const int e[3] = {i, j, 3 - i - j};
    std::vector<Fp3Element> prod = {Fp3Element::embed(c[k], ext)};
    for (int v = 0; v < 3; ++v)
      for (int r = 0; r < e[v]; ++r) {
        std::vector<Fp3Element> next(prod.size() + 1, zero);
        for (std::size_t d = 0; d < prod.size(); ++d) {
          next[d + 1] += prod[d] * xyz[v][0];
          next[d] += prod[d] * xyz[v][1];
        }
        prod = std::move(next);
      }
    for (int d = 0; d < 4; ++d) out[d] += prod[d];
  }
  return out;
}

bool all_zero(const std::array<Fp3Element, 4>& f) {
  return std::all_of(f.begin(), f.end(), [](const Fp3Element& e) { return e.is_zero(); });
}

constexpr std::array<std::uint64_t, 3> kCaps = {9, 3, 6};

CurveCoeffs random_line(Rng& rng, const PrimeModulus& p) {
  while (true) {
    Coeffs c{};
    for (int k = 0; k < 3; ++k) c[k] = rng.below(p.value());
    if (c[1] != 0 || c[2] != 0) return CurveCoeffs(c, p);
  }
}

CurveCoeffs random_conic(Rng& rng, const PrimeModulus& p) {
  while (true) {
    Coeffs c{};
    for (int k = 0; k < 6; ++k) c[k] = rng.below(p.value());
    if (c[3] == 0 && c[4] == 0 && c[5] == 0) continue;
    CurveCoeffs conic(c, p);
    if (conic_is_absolutely_irreducible(conic)) return conic;
  }
}

}  // namespace

std::uint64_t naive_count_incidences(const PointSet& points, const CurveSet& curves) {
  if (!(points.modulus() == curves.modulus()))
    throw ConfigError("point set and curve set over different moduli");
  const u64 pairs = static_cast<u64>(points.size()) * curves.size();
  if (points.modulus().value() > kEnumerationGuard && pairs > kNaivePairGuard)
    throw GuardExceeded("naive count refused: p > 2^16 and |P||C| > 10^8");
  std::uint64_t n = 0;
  for (const auto& c : curves.curves())
    for (const auto& q : points.points()) n += naive_eval(c.coeffs(), q).is_zero();
  return n;
}

IntersectionRecord intersect_curves(const CurveCoeffs& a, const CurveCoeffs& b) {
  if (!(a.modulus() == b.modulus())) throw ConfigError("curves over different moduli");
  if (a == b) throw InvalidInput("intersect_curves needs distinct curves");
  const PrimeModulus& p = a.modulus();
  if (p.value() > kEnumerationGuard) throw GuardExceeded("intersection refused: p > 2^16");
  IntersectionRecord r{a, b, {}, a.classification(), b.classification()};
  for (u64 x = 0; x < p.value(); ++x)
    for (u64 y = 0; y < p.value(); ++y) {
      const AffinePoint q(x, y, p);
      if (naive_eval(a.coeffs(), q).is_zero() && naive_eval(b.coeffs(), q).is_zero())
        r.common.push_back(q);
    }
  return r;
}

std::optional<std::array<Fp3Element, 3>> exhaustive_linear_factor_search(const CurveCoeffs& curve,
                                                                         SearchField field) {
  if (curve.degree() != 3) throw InvalidInput("linear factor search needs a cubic");
  const PrimeModulus& p = curve.modulus();
  const u64 pv = p.value();
  if (field == SearchField::kCubicExtension && pv > kExtensionSearchGuard)
    throw GuardExceeded("GF(p^3) factor search refused: p > 2^10");
  if (field == SearchField::kPrime && pv > kEnumerationGuard)
    throw GuardExceeded("GF(p) factor search refused: p > 2^16");
  const CubicModulus ext = find_cubic_modulus(p);
  const u64 size = field == SearchField::kPrime ? pv : pv * pv * pv;
  auto element = [&](u64 i) { return Fp3Element({i % pv, i / pv % pv, i / pv / pv}, ext); };
  const Fp3Element zero = Fp3Element::embed(0, ext), one = Fp3Element::embed(1, ext);
  const Coeffs& c = curve.coeffs();

  // X + bY + cZ: substitute X = -bs - ct, Y = s, Z = t. The s^3 coefficient
  // F(-b, 1, 0) does not involve c, so b is filtered on it first.
  for (u64 ib = 0; ib < size; ++ib) {
    const Fp3Element b = element(ib);
    if (!restrict_form(c, {Lin{-b, zero}, Lin{one, zero}, Lin{zero, one}}, ext)[3].is_zero())
      continue;
    for (u64 ic = 0; ic < size; ++ic) {
      const Fp3Element cc = element(ic);
      if (all_zero(restrict_form(c, {Lin{-b, -cc}, Lin{one, zero}, Lin{zero, one}}, ext)))
        return std::array<Fp3Element, 3>{one, b, cc};
    }
  }
  // Y + cZ: X = s, Y = -ct, Z = t.
  for (u64 ic = 0; ic < size; ++ic) {
    const Fp3Element cc = element(ic);
    if (all_zero(restrict_form(c, {Lin{one, zero}, Lin{zero, -cc}, Lin{zero, one}}, ext)))
      return std::array<Fp3Element, 3>{zero, one, cc};
  }
  // Z: X = s, Y = t, Z = 0.
  if (all_zero(restrict_form(c, {Lin{one, zero}, Lin{zero, one}, Lin{zero, zero}}, ext)))
    return std::array<Fp3Element, 3>{zero, zero, one};
  return std::nullopt;
}

IrreducibilityClass brute_force_classification(const CurveCoeffs& curve) {
  if (curve.degree() < 3) return IrreducibilityClass::kLowDegree;
  if (exhaustive_linear_factor_search(curve, SearchField::kPrime))
    return IrreducibilityClass::kReducibleRational;
  if (exhaustive_linear_factor_search(curve, SearchField::kCubicExtension))
    return IrreducibilityClass::kConjugateLines;
  return IrreducibilityClass::kAbsolutelyIrreducible;
}

std::string_view to_string(PairKind k) {
  switch (k) {
    case PairKind::kCubicCubic: return "cubic-cubic";
    case PairKind::kLineCubic: return "line-cubic";
    case PairKind::kConicCubic: return "conic-cubic";
  }
  return "?";
}

std::uint64_t bezout_cap(PairKind k) { return kCaps[static_cast<int>(k)]; }

BezoutSummary bezout_campaign(const PrimeModulus& p, std::uint64_t trials, std::uint64_t seed,
                              unsigned threads) {
  if (p.value() > 31) throw InvalidInput("bezout campaign needs p <= 31");
  if (p.value() == 2) throw InvalidInput("bezout campaign needs odd p (conic test)");
  BezoutSummary s;
  s.rows.resize(3 * trials);
  parallel_for(trials, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      Rng rng(derive_seed(seed, t));
      const CurveCoeffs g = random_irreducible_cubic(rng.next(), p);
      CurveCoeffs h = random_irreducible_cubic(rng.next(), p);
      while (h == g) h = random_irreducible_cubic(rng.next(), p);
      const CurveCoeffs line = random_line(rng, p);
      const CurveCoeffs conic = random_conic(rng, p);
      s.rows[3 * t] = {t, PairKind::kCubicCubic, intersect_curves(g, h).common.size()};
      s.rows[3 * t + 1] = {t, PairKind::kLineCubic, intersect_curves(line, g).common.size()};
      s.rows[3 * t + 2] = {t, PairKind::kConicCubic, intersect_curves(conic, g).common.size()};
    }
  });
  for (const auto& r : s.rows) {
    auto& mx = s.max_observed[static_cast<int>(r.kind)];
    mx = std::max(mx, r.intersection_size);
    s.violations += !r.ok();
  }
  return s;
}

void write_bezout_csv(std::ostream& os, const BezoutSummary& s) {
  os << "trial,kind,intersection_size,cap,ok\n";
  for (const auto& r : s.rows)
    os << r.trial << ',' << to_string(r.kind) << ',' << r.intersection_size << ','
       << bezout_cap(r.kind) << ',' << (r.ok() ? 1 : 0) << '\n';
}

}  // namespace cubinc::oracle
