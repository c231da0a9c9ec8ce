#include "cubinc/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

#include "cubinc/dual.hpp"
#include "cubinc/errors.hpp"
#include "cubinc/oracle.hpp"
#include "cubinc/parallel.hpp"
#include "cubinc/rng.hpp"

namespace cubinc {

namespace {

constexpr std::uint64_t kU64Max = ~std::uint64_t{0};

// C(n, k), saturating at 2^64 - 1.
std::uint64_t binom_sat(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > kU64Max) return kU64Max;
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
  const u128 r = u128{a} * b;
  return r > kU64Max ? kU64Max : static_cast<std::uint64_t>(r);
}

u128 plane_size(u64 p) { return u128{p} * p; }

// Visits x values 0..p-1 in random order for small p, random draws otherwise.
class XSource {
 public:
  XSource(Rng& rng, u64 p) : rng_(rng), p_(p) {
    if (p <= 4096) {
      order_.resize(p);
      std::iota(order_.begin(), order_.end(), u64{0});
      for (u64 i = p; i > 1; --i) std::swap(order_[i - 1], order_[rng.below(i)]);
    }
  }
  std::optional<u64> next() {
    if (order_.empty()) return rng_.below(p_);
    if (pos_ == order_.size()) return std::nullopt;
    return order_[pos_++];
  }

 private:
  Rng& rng_;
  u64 p_;
  std::vector<u64> order_;
  std::size_t pos_ = 0;
};

struct Generated {
  std::vector<AffinePoint> points;
  std::vector<CurveCoeffs> hosts;
};

Generated generate_points(const InstanceSpec& spec, const PrimeModulus& p, Rng& rng) {
  Generated g;
  const std::size_t m = spec.num_points;
  std::set<AffinePoint> seen;
  auto add = [&](const AffinePoint& q) {
    if (seen.insert(q).second) g.points.push_back(q);
  };

  if (spec.curves == CurveKind::kReducibleCounterexample) {
    if (m > p.value()) throw InvalidInput("more points than fit on one line");
    XSource xs(rng, p.value());
    while (g.points.size() < m) add(AffinePoint(*xs.next(), 0, p));
    return g;
  }

  switch (spec.points) {
    case PointKind::kUniformRandom:
      if (u128{m} > plane_size(p.value())) throw InvalidInput("more points than p^2");
      while (g.points.size() < m) add(AffinePoint(rng.below(p.value()), rng.below(p.value()), p));
      break;
    case PointKind::kGrid: {
      u64 s = 0;
      while (u128{s} * s < m) ++s;
      if (s > p.value()) throw InvalidInput("grid side exceeds p");
      for (u64 x = 0; x < s && g.points.size() < m; ++x)
        for (u64 y = 0; y < s && g.points.size() < m; ++y) add(AffinePoint(x, y, p));
      break;
    }
    case PointKind::kOnCurves: {
      if (u128{m} > plane_size(p.value())) throw InvalidInput("more points than p^2");
      const std::size_t per = std::max<std::size_t>(1, spec.points_per_host);
      const std::size_t planned = (m + per - 1) / per;
      while (g.points.size() < m) {
        if (g.hosts.size() > 4 * planned + 100) throw InvalidInput("cannot place points on hosts");
        const CurveCoeffs host = random_irreducible_cubic(rng.next(), p);
        g.hosts.push_back(host);
        const std::size_t quota = std::min(per, m - g.points.size());
        std::size_t got = 0;
        XSource xs(rng, p.value());
        for (std::size_t draws = 0; got < quota && draws < 50 * quota + 64; ++draws) {
          const auto x0 = xs.next();
          if (!x0) break;
          for (const FpElement& y : points_above(host, *x0)) {
            if (got == quota) break;
            const AffinePoint q(FpElement(*x0, p), y);
            if (seen.insert(q).second) {
              g.points.push_back(q);
              ++got;
            }
          }
        }
      }
      break;
    }
  }
  return g;
}

template <class Make>
std::vector<CurveCoeffs> collect_distinct(std::size_t n, std::vector<CurveCoeffs> seed_curves,
                                          Make make) {
  std::set<Coeffs> seen;
  std::vector<CurveCoeffs> out;
  for (auto& c : seed_curves) {
    if (out.size() == n) break;
    if (seen.insert(c.coeffs()).second) out.push_back(c);
  }
  const std::size_t cap = 200 * n + 10'000;
  for (std::size_t tries = 0; out.size() < n; ++tries) {
    if (tries > cap) throw InvalidInput("could not generate enough distinct curves");
    std::optional<CurveCoeffs> c = make();
    if (c && seen.insert(c->coeffs()).second) out.push_back(*c);
  }
  return out;
}

std::optional<Flat2> common_flat(const std::vector<AffinePoint>& pts, const PrimeModulus& p,
                                 Rng& rng, std::vector<AffinePoint>& chosen) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<AffinePoint> s;
    if (pts.size() >= 7 && attempt == 0) {
      s.assign(pts.begin(), pts.begin() + 7);
    } else if (pts.size() >= 7) {
      std::set<std::size_t> idx;
      while (idx.size() < 7) idx.insert(rng.below(pts.size()));
      for (std::size_t i : idx) s.push_back(pts[i]);
    } else {
      std::set<AffinePoint> u;
      while (u.size() < 7 && u.size() < plane_size(p.value()))
        u.insert(AffinePoint(rng.below(p.value()), rng.below(p.value()), p));
      s.assign(u.begin(), u.end());
      if (s.size() < 7) break;
    }
    // four collinear, or all seven on a conic, leaves only reducible members
    if (max_collinear(s) >= 4 || on_common_conic(s)) continue;
    if (auto f = flat_of(s)) {
      chosen = s;
      return f;
    }
  }
  return std::nullopt;
}

std::vector<CurveCoeffs> generate_curves(const InstanceSpec& spec, const PrimeModulus& p,
                                         Rng& rng, const Generated& g,
                                         std::vector<AffinePoint>& common) {
  const std::size_t n = spec.num_curves;
  const bool hosted = spec.points == PointKind::kOnCurves;
  switch (spec.curves) {
    case CurveKind::kUniformIrreducible:
      return collect_distinct(n, hosted ? g.hosts : std::vector<CurveCoeffs>{},
                              [&]() -> std::optional<CurveCoeffs> {
                                return random_irreducible_cubic(rng.next(), p);
                              });
    case CurveKind::kTranslateFamily: {
      if (u128{n} > plane_size(p.value())) throw InvalidInput("more translates than p^2");
      const CurveCoeffs base =
          hosted && !g.hosts.empty() ? g.hosts.front() : random_irreducible_cubic(rng.next(), p);
      return collect_distinct(n, {base}, [&]() -> std::optional<CurveCoeffs> {
        return translate_curve(base, rng.below(p.value()), rng.below(p.value()));
      });
    }
    case CurveKind::kThroughCommonPoints: {
      if (u128{n} > plane_size(p.value()) + p.value() + 1)
        throw InvalidInput("more curves than members of a 2-flat");
      if (n == 0) return {};
      const auto flat = common_flat(g.points, p, rng, common);
      if (!flat) throw InvalidInput("no seven points imposing independent conditions");
      std::vector<CurveCoeffs> first;
      if (hosted && !g.hosts.empty() && flat->params(g.hosts.front().coeffs()))
        first.push_back(g.hosts.front());
      return collect_distinct(n, first, [&]() -> std::optional<CurveCoeffs> {
        std::array<u64, 3> t{rng.below(p.value()), rng.below(p.value()), rng.below(p.value())};
        if (t[0] == 0 && t[1] == 0 && t[2] == 0) return std::nullopt;
        const Coeffs v = flat->point_at(t);
        if (v[6] == 0 && v[7] == 0 && v[8] == 0 && v[9] == 0) return std::nullopt;
        CurveCoeffs c(v, p);
        if (!c.is_irreducible_cubic()) return std::nullopt;
        return c;
      });
    }
    case CurveKind::kReducibleCounterexample: {
      if (!spec.allow_reducible)
        throw InvalidInput("the reducible counterexample must be requested explicitly");
      return collect_distinct(n, {}, [&]() -> std::optional<CurveCoeffs> {
        Coeffs q{};
        for (int k = 0; k < 6; ++k) q[k] = rng.below(p.value());
        if (q[3] == 0 && q[4] == 0 && q[5] == 0) return std::nullopt;
        Coeffs c{};
        for (int k = 0; k < 6; ++k) {
          const auto [i, j] = kMonomials[k];
          c[monomial_index(i, j + 1)] = q[k];
        }
        return CurveCoeffs(c, p);
      });
    }
  }
  return {};
}

std::string subset_label(const std::array<std::uint32_t, 7>& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i]);
  return out;
}

struct SubsetWork {
  std::array<std::uint32_t, 7> s;
  std::vector<std::size_t> members;  // positions in the rich class
};

struct SubsetResult {
  bool flat = false;
  std::uint64_t degenerate = 0;
  std::uint64_t psi_computed = 0;
  std::uint64_t max_multiplicity = 0;
  std::uint64_t transfer_checks = 0;
  std::optional<std::uint64_t> min_distinct;
  std::uint64_t dual_checks = 0;
  std::uint64_t dual_mismatches = 0;
  std::uint64_t rich_points = 0;
  std::optional<Real> sdz_ratio;
  std::optional<Real> cks_ratio;
  std::vector<std::string> violations;
};

struct Incidences {
  const PointSet& points;
  const CurveSet& curves;
  const RichnessClass& rich;
  std::vector<std::vector<std::uint32_t>> on;  // per rich member: indices of P on it
};

SubsetResult verify_subset(const Incidences& inc, const SubsetWork& w, std::uint64_t k,
                           std::uint64_t t) {
  SubsetResult r;
  const PrimeModulus& p = inc.points.modulus();
  const std::string label = subset_label(w.s);
  std::vector<AffinePoint> sp;
  for (std::uint32_t i : w.s) sp.push_back(inc.points[i]);
  const auto flat = flat_of(sp);
  if (!flat) {
    r.violations.push_back("lemma: rank < 7 with nonempty C_{k,S}, S = " + label);
    return r;
  }
  r.flat = true;

  std::vector<std::uint32_t> relevant;
  for (std::size_t m : w.members)
    relevant.insert(relevant.end(), inc.on[m].begin(), inc.on[m].end());
  std::sort(relevant.begin(), relevant.end());
  relevant.erase(std::unique(relevant.begin(), relevant.end()), relevant.end());
  std::vector<std::uint32_t> rest;
  std::set_difference(relevant.begin(), relevant.end(), w.s.begin(), w.s.end(),
                      std::back_inserter(rest));

  std::map<std::uint32_t, DualLine> lines;
  std::map<std::array<u64, 3>, std::uint64_t> mult;
  for (std::uint32_t q : rest) {
    ++r.psi_computed;
    auto dl = psi(inc.points[q], *flat);
    if (!dl) {
      ++r.degenerate;
      r.violations.push_back("degenerate psi at point " + std::to_string(q) + ", S = " + label);
      continue;
    }
    r.max_multiplicity = std::max(r.max_multiplicity, ++mult[dl->covector]);
    lines.emplace(q, *dl);
  }
  if (r.max_multiplicity > 2)
    r.violations.push_back("dual line multiplicity " + std::to_string(r.max_multiplicity) +
                           " > 2, S = " + label);

  for (std::size_t m : w.members) {
    const CurveCoeffs& g = inc.curves[inc.rich.members[m]];
    const DualPoint dp = phi(g);
    std::set<std::array<u64, 3>> through;
    for (const auto& [q, dl] : lines) {
      const bool on_curve = incident(g, inc.points[q]);
      const bool on_line = dual_incidence(dp, dl, *flat);
      ++r.dual_checks;
      if (on_curve != on_line) {
        ++r.dual_mismatches;
        r.violations.push_back("duality mismatch at point " + std::to_string(q) + ", S = " + label);
      }
      if (on_curve) through.insert(dl.covector);
    }
    ++r.transfer_checks;
    r.min_distinct = std::min<std::uint64_t>(r.min_distinct.value_or(kU64Max), through.size());
    if (through.size() < t)
      r.violations.push_back("curve " + std::to_string(inc.rich.members[m]) + " meets only " +
                             std::to_string(through.size()) + " distinct dual lines, S = " + label);
  }

  std::vector<DualLine> all;
  for (const auto& [q, dl] : lines) all.push_back(dl);
  r.rich_points = rich_dual_points(all, t, p);
  if (w.members.size() > r.rich_points)
    r.violations.push_back("fewer " + std::to_string(t) + "-rich dual points than curves, S = " +
                           label);
  std::set<std::array<u64, 3>> distinct;
  for (const auto& dl : all) distinct.insert(dl.covector);
  const Real sdz = sdz_rich_points_bound(Real(distinct.size()), Real(t));
  if (sdz > 0) r.sdz_ratio = Real(r.rich_points) / sdz;
  const Real cks = cks_bound(Real(inc.points.size()), Real(k));
  if (cks > 0) r.cks_ratio = Real(w.members.size()) / cks;
  return r;
}

void max_opt(std::optional<Real>& acc, const std::optional<Real>& v) {
  if (v && (!acc || *v > *acc)) acc = v;
}

}  // namespace

std::string_view to_string(PointKind k) {
  switch (k) {
    case PointKind::kUniformRandom: return "uniform-random";
    case PointKind::kGrid: return "grid";
    case PointKind::kOnCurves: return "on-curves-adversarial";
  }
  return "?";
}

std::string_view to_string(CurveKind k) {
  switch (k) {
    case CurveKind::kUniformIrreducible: return "uniform-irreducible";
    case CurveKind::kTranslateFamily: return "translate-family";
    case CurveKind::kThroughCommonPoints: return "through-common-points";
    case CurveKind::kReducibleCounterexample: return "reducible-counterexample";
  }
  return "?";
}

PointKind parse_point_kind(std::string_view s) {
  for (auto k : {PointKind::kUniformRandom, PointKind::kGrid, PointKind::kOnCurves})
    if (to_string(k) == s) return k;
  throw InvalidInput("unknown point kind: " + std::string(s));
}

CurveKind parse_curve_kind(std::string_view s) {
  for (auto k : {CurveKind::kUniformIrreducible, CurveKind::kTranslateFamily,
                 CurveKind::kThroughCommonPoints, CurveKind::kReducibleCounterexample})
    if (to_string(k) == s) return k;
  throw InvalidInput("unknown curve kind: " + std::string(s));
}

CurveCoeffs translate_curve(const CurveCoeffs& c, u64 a, u64 b) {
  const PrimeModulus& p = c.modulus();
  const u64 na = p.neg(p.reduce(a)), nb = p.neg(p.reduce(b));
  static constexpr u64 kBinom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  Coeffs out{};
  for (int k = 0; k < kNumMonomials; ++k) {
    if (c[k] == 0) continue;
    const auto [i, j] = kMonomials[k];
    for (int u = 0; u <= i; ++u)
      for (int v = 0; v <= j; ++v) {
        u64 term = p.mul(c[k], p.mul(p.reduce(kBinom[i][u]), p.reduce(kBinom[j][v])));
        term = p.mul(term, p.mul(p.pow(na, i - u), p.pow(nb, j - v)));
        const int idx = monomial_index(u, v);
        out[idx] = p.add(out[idx], term);
      }
  }
  return CurveCoeffs(out, p);
}

Instance generate_instance(const InstanceSpec& spec) {
  const PrimeModulus p(spec.p);
  Rng rng(spec.seed);
  Generated g = generate_points(spec, p, rng);
  std::vector<AffinePoint> common;
  std::vector<CurveCoeffs> curves = generate_curves(spec, p, rng, g, common);
  Instance inst{PointSet(std::move(g.points), p), CurveSet(std::move(curves), p), common};
  if (spec.curves != CurveKind::kReducibleCounterexample && !inst.curves.all_irreducible_cubics())
    throw std::logic_error("generator emitted a curve outside its promised class");
  return inst;
}

CertificateReport pipeline_certificate(const PointSet& points, const CurveSet& curves,
                                       std::uint64_t k, std::uint64_t subset_samples,
                                       std::uint64_t seed, unsigned threads) {
  if (k < 11) throw InvalidInput("pipeline certificate needs k >= 11");
  if (!curves.all_irreducible_cubics())
    throw InvalidInput("pipeline certificate needs absolutely irreducible cubics");
  if (!(points.modulus() == curves.modulus()))
    throw ConfigError("point set and curve set over different moduli");
  const PrimeModulus& p = points.modulus();

  CertificateReport r;
  r.p = p.value();
  r.size_p = points.size();
  r.size_c = curves.size();
  r.k = k;
  r.t = (k - 7 + 1) / 2;
  const auto counts = incidence_counts_per_curve(points, curves, threads);
  r.incidences = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  const std::uint64_t top = counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
  for (std::uint64_t kk = 1; kk <= top; kk *= 2)
    r.histogram.emplace_back(kk, rich_curves(counts, kk).members.size());
  const RichnessClass rich = rich_curves(counts, k);
  r.rich = rich.members.size();
  r.bounds = make_bound_report(p.value(), points.size(), curves.size(), r.incidences);
  const Real ck = ck_bound(Real(points.size()), Real(k));
  if (ck > 0) r.ck_ratio = Real(r.rich) / ck;
  r.double_count_rhs = mul_sat(binom_sat(k, 7), r.rich);
  if (rich.members.empty()) return r;

  Incidences inc{points, curves, rich, {}};
  for (std::size_t idx : rich.members) {
    std::vector<std::uint32_t> on;
    for (std::size_t i = 0; i < points.size(); ++i)
      if (incident(curves[idx], points[i])) on.push_back(static_cast<std::uint32_t>(i));
    inc.on.push_back(std::move(on));
  }

  std::vector<SubsetWork> work;
  const std::uint64_t total = binom_sat(points.size(), 7);
  if (total <= kEnumerationSubsetLimit) {
    // Nonempty C_{k,S} arise only from 7-subsets of some gamma cap P.
    r.enumerated = true;
    r.subsets_examined = total;
    std::map<std::array<std::uint32_t, 7>, std::vector<std::size_t>> by_subset;
    for (std::size_t m = 0; m < inc.on.size(); ++m) {
      const auto& on = inc.on[m];
      const int n = static_cast<int>(on.size());
      std::array<int, 7> idx{0, 1, 2, 3, 4, 5, 6};
      while (true) {
        std::array<std::uint32_t, 7> s;
        for (int i = 0; i < 7; ++i) s[i] = on[idx[i]];
        by_subset[s].push_back(m);
        int i = 6;
        while (i >= 0 && idx[i] == n - 7 + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < 7; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
    for (auto& [s, members] : by_subset) work.push_back({s, std::move(members)});
  } else {
    r.subsets_examined = subset_samples;
    for (std::uint64_t i = 0; i < subset_samples; ++i) {
      Rng rng(derive_seed(seed, i));
      std::set<std::uint32_t> chosen;
      if (i % 2 == 0) {
        while (chosen.size() < 7) chosen.insert(static_cast<std::uint32_t>(rng.below(points.size())));
      } else {
        const auto& on = inc.on[rng.below(inc.on.size())];
        while (chosen.size() < 7) chosen.insert(on[rng.below(on.size())]);
      }
      SubsetWork w;
      std::copy(chosen.begin(), chosen.end(), w.s.begin());
      for (std::size_t m = 0; m < inc.on.size(); ++m)
        if (std::all_of(w.s.begin(), w.s.end(), [&](std::uint32_t q) {
              return std::binary_search(inc.on[m].begin(), inc.on[m].end(), q);
            }))
          w.members.push_back(m);
      if (!w.members.empty()) work.push_back(std::move(w));
    }
  }

  std::vector<SubsetResult> results(work.size());
  parallel_for(work.size(), threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) results[i] = verify_subset(inc, work[i], k, r.t);
  });

  r.subsets_nonempty = work.size();
  for (std::size_t i = 0; i < work.size(); ++i) {
    const SubsetResult& s = results[i];
    r.sum_cks += work[i].members.size();
    r.max_cks = std::max<std::uint64_t>(r.max_cks, work[i].members.size());
    (s.flat ? r.rank7 : r.not_a_flat) += 1;
    r.degenerate_psi += s.degenerate;
    r.psi_computed += s.psi_computed;
    r.max_multiplicity = std::max(r.max_multiplicity, s.max_multiplicity);
    r.transfer_checks += s.transfer_checks;
    if (s.min_distinct)
      r.min_distinct_lines = std::min(r.min_distinct_lines.value_or(kU64Max), *s.min_distinct);
    r.dual_checks += s.dual_checks;
    r.dual_mismatches += s.dual_mismatches;
    r.max_rich_dual_points = std::max(r.max_rich_dual_points, s.rich_points);
    max_opt(r.max_sdz_ratio, s.sdz_ratio);
    max_opt(r.max_cks_ratio, s.cks_ratio);
    r.violations.insert(r.violations.end(), s.violations.begin(), s.violations.end());
  }
  if (r.enumerated && r.sum_cks < r.double_count_rhs)
    r.violations.push_back("seven-subset count " + std::to_string(r.sum_cks) + " < C(k,7)|C_k| = " +
                           std::to_string(r.double_count_rhs));
  return r;
}

void write_certificate_csv(std::ostream& os, const CertificateReport& r) {
  auto opt = [](const std::optional<Real>& v) { return v ? format_real(*v) : std::string("NA"); };
  os << "key,value\n";
  os << "p," << r.p << "\nsizeP," << r.size_p << "\nsizeC," << r.size_c << "\nk," << r.k
     << "\nt," << r.t << "\nmeasured_I," << r.incidences << "\n";
  for (const auto& [kk, n] : r.histogram) os << "rich_class_" << kk << "," << n << "\n";
  os << "C_k," << r.rich << "\n";
  os << "subset_mode," << (r.enumerated ? "enumerated" : "sampled") << "\n";
  os << "subsets_examined," << r.subsets_examined << "\nsubsets_nonempty," << r.subsets_nonempty
     << "\nsum_C_kS," << r.sum_cks << "\nmax_C_kS," << r.max_cks << "\n";
  os << "binom_k_7_times_C_k," << r.double_count_rhs << "\n";
  os << "rank7," << r.rank7 << "\nnot_a_flat," << r.not_a_flat << "\n";
  os << "psi_computed," << r.psi_computed << "\ndegenerate_psi," << r.degenerate_psi << "\n";
  os << "max_multiplicity," << r.max_multiplicity << "\n";
  os << "transfer_checks," << r.transfer_checks << "\nmin_distinct_lines,"
     << (r.min_distinct_lines ? std::to_string(*r.min_distinct_lines) : "NA") << "\n";
  os << "dual_checks," << r.dual_checks << "\ndual_mismatches," << r.dual_mismatches << "\n";
  os << "max_rich_dual_points," << r.max_rich_dual_points << "\n";
  os << "max_ratio_rich_points_over_sdz," << opt(r.max_sdz_ratio) << "\n";
  os << "max_ratio_C_kS_over_cks," << opt(r.max_cks_ratio) << "\n";
  os << "ratio_C_k_over_ck," << opt(r.ck_ratio) << "\n";
  const BoundReport& b = r.bounds;
  os << "kst," << format_real(b.kst.value) << "\nthm1," << format_real(b.thm1.value) << "\nthm2,"
     << format_real(b.thm2) << "\n";
  os << "ratio_I_over_kst," << opt(b.kst_ratio) << "\nratio_I_over_thm1," << opt(b.thm1_ratio)
     << "\nratio_I_over_thm2," << opt(b.thm2_ratio) << "\nratio_I_over_dyadic,"
     << opt(b.dyadic_ratio) << "\n";
  os << "admissible," << (b.admissible ? 1 : 0) << "\nactive_branch," << b.active_branch() << "\n";
  os << "violations," << r.violations.size() << "\n";
  for (std::size_t i = 0; i < r.violations.size(); ++i)
    os << "violation_" << i << "," << r.violations[i] << "\n";
}

std::optional<Campaign> parse_campaign(std::string_view s) {
  for (auto c : {Campaign::kDuality, Campaign::kLemma, Campaign::kMultiplicity, Campaign::kBezout,
                 Campaign::kProposition})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

std::string_view to_string(Campaign c) {
  switch (c) {
    case Campaign::kDuality: return "duality";
    case Campaign::kLemma: return "lemma";
    case Campaign::kMultiplicity: return "multiplicity";
    case Campaign::kBezout: return "bezout";
    case Campaign::kProposition: return "proposition";
  }
  return "?";
}

namespace {

std::vector<AffinePoint> random_distinct(Rng& rng, const PrimeModulus& p, std::size_t n,
                                         std::set<AffinePoint> seen = {}) {
  std::vector<AffinePoint> out;
  while (out.size() < n) {
    AffinePoint q(rng.below(p.value()), rng.below(p.value()), p);
    if (seen.insert(q).second) out.push_back(q);
  }
  return out;
}

CampaignSummary duality_campaign(const CampaignParams& prm, std::uint64_t seed) {
  const PrimeModulus p(prm.p);
  CampaignSummary s;
  s.campaign = Campaign::kDuality;
  std::uint64_t positive = 0, rejected = 0;
  for (std::uint64_t i = 0; i < prm.trials; ++i) {
    Rng rng(derive_seed(seed, i));
    std::vector<AffinePoint> sp;
    std::optional<Flat2> flat;
    while (!flat) {
      sp = random_distinct(rng, p, 7);
      flat = flat_of(sp);
      rejected += !flat;
    }
    std::optional<DualLine> dl;
    AffinePoint q = sp.front();
    while (!dl) {
      q = random_distinct(rng, p, 1, std::set<AffinePoint>(sp.begin(), sp.end())).front();
      dl = psi(q, *flat);
      rejected += !dl;
    }
    std::array<u64, 3> t{};
    if (i % 2 == 1) {
      // a member through q: parameters on the dual line
      const auto& l = dl->covector;
      const int piv = l[0] ? 0 : (l[1] ? 1 : 2);
      while (std::all_of(t.begin(), t.end(), [](u64 v) { return v == 0; })) {
        u64 acc = 0;
        for (int j = 0; j < 3; ++j)
          if (j != piv) {
            t[j] = rng.below(p.value());
            acc = p.add(acc, p.mul(l[j], t[j]));
          }
        t[piv] = p.mul(p.neg(acc), p.inv(l[piv]));
      }
    } else {
      while (std::all_of(t.begin(), t.end(), [](u64 v) { return v == 0; }))
        for (auto& v : t) v = rng.below(p.value());
    }
    const CurveCoeffs g(flat->point_at(t), p);
    const bool a = dual_incidence(phi(g), *dl, *flat), b = incident(g, q);
    ++s.checks;
    positive += b;
    s.violations += a != b;
  }
  s.stats = {{"p", std::to_string(prm.p)},
             {"configurations", std::to_string(prm.trials)},
             {"incident_configurations", std::to_string(positive)},
             {"rejected_draws", std::to_string(rejected)}};
  return s;
}

// Twelve points: eight on a host cubic and the rest on the line through two
// of them, so that some 7-subsets have five or more collinear points.
std::pair<PointSet, CurveSet> lemma_small_instance(const PrimeModulus& p, Rng& rng) {
  while (true) {
    const CurveCoeffs host = random_irreducible_cubic(rng.next(), p);
    std::vector<AffinePoint> on = rational_points(host);
    if (on.size() < 9) continue;
    for (std::size_t i = on.size(); i > 1; --i) std::swap(on[i - 1], on[rng.below(i)]);
    on.erase(on.begin() + 8, on.end());
    std::set<AffinePoint> seen(on.begin(), on.end());
    std::vector<AffinePoint> pts = on;
    const AffinePoint a = on[0], b = on[1];
    const FpElement dx = b.x - a.x, dy = b.y - a.y;
    for (u64 s = 2; pts.size() < 12 && s < p.value(); ++s) {
      const FpElement fs(s, p);
      const AffinePoint q(a.x + fs * dx, a.y + fs * dy);
      if (seen.insert(q).second) pts.push_back(q);
    }
    for (const auto& q : random_distinct(rng, p, 12 - pts.size(), seen)) pts.push_back(q);

    std::vector<CurveCoeffs> cs = {host};
    std::set<Coeffs> have = {host.coeffs()};
    if (const auto flat = flat_of(std::span(on).first(7))) {
      for (int tries = 0; tries < 2000 && cs.size() < 12; ++tries) {
        std::array<u64, 3> t{rng.below(p.value()), rng.below(p.value()), rng.below(p.value())};
        const Coeffs v = flat->point_at(t);
        if (std::all_of(v.begin() + 6, v.end(), [](u64 x) { return x == 0; })) continue;
        CurveCoeffs c(v, p);
        if (c.is_irreducible_cubic() && have.insert(c.coeffs()).second) cs.push_back(c);
      }
    }
    return {PointSet(pts, p), CurveSet(cs, p)};
  }
}

CampaignSummary lemma_campaign(const CampaignParams& prm, std::uint64_t seed) {
  const PrimeModulus p(prm.p);
  CampaignSummary s;
  s.campaign = Campaign::kLemma;
  std::uint64_t small_subsets = 0, small_nonempty = 0, low_rank = 0;
  const std::uint64_t small_k = 7;
  for (std::uint64_t i = 0; i < prm.trials; ++i) {
    Rng rng(derive_seed(seed, i));
    const auto [pts, cs] = lemma_small_instance(p, rng);
    const RichnessClass rich = rich_curves(pts, cs, small_k);
    std::array<int, 7> idx{0, 1, 2, 3, 4, 5, 6};
    const int n = static_cast<int>(pts.size());
    while (true) {
      std::vector<AffinePoint> sp;
      for (int j : idx) sp.push_back(pts[j]);
      ++small_subsets;
      const bool flat = flat_of(sp).has_value();
      low_rank += !flat;
      if (!rich_curves_through(rich, cs, pts, sp).empty()) {
        ++small_nonempty;
        ++s.checks;
        s.violations += !flat;
      }
      int j = 6;
      while (j >= 0 && idx[j] == n - 7 + j) --j;
      if (j < 0) break;
      ++idx[j];
      for (int l = j + 1; l < 7; ++l) idx[l] = idx[l - 1] + 1;
    }
  }

  InstanceSpec spec;
  spec.p = prm.p;
  spec.points = PointKind::kOnCurves;
  spec.curves = CurveKind::kUniformIrreducible;
  spec.num_points = prm.points;
  spec.num_curves = prm.points / 2;
  spec.seed = derive_seed(seed, prm.trials);
  const Instance inst = generate_instance(spec);
  const CertificateReport r =
      pipeline_certificate(inst.points, inst.curves, prm.k, prm.subsets, spec.seed, prm.threads);
  s.checks += r.subsets_nonempty;
  s.violations += r.not_a_flat;
  s.stats = {{"p", std::to_string(prm.p)},
             {"exhaustive_instances", std::to_string(prm.trials)},
             {"exhaustive_subsets", std::to_string(small_subsets)},
             {"exhaustive_nonempty", std::to_string(small_nonempty)},
             {"exhaustive_rank_below_7", std::to_string(low_rank)},
             {"sampled_size_P", std::to_string(prm.points)},
             {"sampled_k", std::to_string(prm.k)},
             {"sampled_subsets", std::to_string(r.subsets_examined)},
             {"sampled_nonempty", std::to_string(r.subsets_nonempty)},
             {"sampled_not_a_flat", std::to_string(r.not_a_flat)}};
  return s;
}

CampaignSummary multiplicity_campaign(const CampaignParams& prm, std::uint64_t seed) {
  CampaignSummary s;
  s.campaign = Campaign::kMultiplicity;
  std::uint64_t max_mult = 0, degenerate = 0, nonempty = 0, psi_n = 0, transfer = 0, other = 0;
  std::optional<std::uint64_t> min_lines;
  const CurveKind kinds[] = {CurveKind::kUniformIrreducible, CurveKind::kThroughCommonPoints,
                             CurveKind::kTranslateFamily};
  for (std::uint64_t i = 0; i < prm.trials; ++i) {
    InstanceSpec spec;
    spec.p = prm.p;
    spec.points = PointKind::kOnCurves;
    spec.curves = kinds[i % 3];
    spec.num_points = prm.points;
    spec.num_curves = std::max<std::size_t>(prm.points / 4, 8);
    spec.seed = derive_seed(seed, i);
    const Instance inst = generate_instance(spec);
    const CertificateReport r =
        pipeline_certificate(inst.points, inst.curves, prm.k, prm.subsets, spec.seed, prm.threads);
    max_mult = std::max(max_mult, r.max_multiplicity);
    degenerate += r.degenerate_psi;
    nonempty += r.subsets_nonempty;
    psi_n += r.psi_computed;
    transfer += r.transfer_checks;
    if (r.min_distinct_lines)
      min_lines = std::min(min_lines.value_or(kU64Max), *r.min_distinct_lines);
    s.checks += r.subsets_nonempty;
    s.violations += r.violations.size();
    other += r.violations.size();
  }
  s.stats = {{"p", std::to_string(prm.p)},
             {"instances", std::to_string(prm.trials)},
             {"nonempty_subsets", std::to_string(nonempty)},
             {"psi_computed", std::to_string(psi_n)},
             {"degenerate_psi", std::to_string(degenerate)},
             {"max_multiplicity", std::to_string(max_mult)},
             {"transfer_checks", std::to_string(transfer)},
             {"min_distinct_lines", min_lines ? std::to_string(*min_lines) : "NA"},
             {"certificate_violations", std::to_string(other)}};
  return s;
}

CampaignSummary bezout_summary(const CampaignParams& prm, std::uint64_t seed) {
  CampaignSummary s;
  s.campaign = Campaign::kBezout;
  const auto b = oracle::bezout_campaign(PrimeModulus(prm.p), prm.trials, seed, prm.threads);
  s.checks = b.rows.size();
  s.violations = b.violations;
  s.stats = {{"p", std::to_string(prm.p)},
             {"trials", std::to_string(prm.trials)},
             {"max_cubic_cubic", std::to_string(b.max_observed[0])},
             {"max_line_cubic", std::to_string(b.max_observed[1])},
             {"max_conic_cubic", std::to_string(b.max_observed[2])}};
  return s;
}

// Point sets biased toward the filter boundary: uniform, four on a line, or
// most on a conic.
std::vector<AffinePoint> proposition_points(Rng& rng, const PrimeModulus& p, std::size_t n) {
  std::set<AffinePoint> seen;
  std::vector<AffinePoint> out;
  auto add = [&](const AffinePoint& q) {
    if (out.size() < n && seen.insert(q).second) out.push_back(q);
  };
  const u64 mode = rng.below(3);
  if (mode == 1) {
    const FpElement a(rng.below(p.value()), p), b(rng.below(p.value()), p);
    for (int tries = 0; tries < 64 && out.size() < 4; ++tries) {
      const FpElement x(rng.below(p.value()), p);
      add(AffinePoint(x, a * x + b));
    }
  } else if (mode == 2) {
    const FpElement a(rng.below(p.value() - 1) + 1, p), b(rng.below(p.value()), p),
        c(rng.below(p.value()), p);
    for (int tries = 0; tries < 64 && out.size() + 1 < n; ++tries) {
      const FpElement x(rng.below(p.value()), p);
      add(AffinePoint(x, a * x * x + b * x + c));
    }
  }
  while (out.size() < n) add(AffinePoint(rng.below(p.value()), rng.below(p.value()), p));
  return out;
}

CampaignSummary proposition_campaign(const CampaignParams& prm, std::uint64_t seed) {
  const PrimeModulus p(prm.p);
  CampaignSummary s;
  s.campaign = Campaign::kProposition;
  std::uint64_t rejected7 = 0, rejected8 = 0, v7 = 0, v8 = 0;
  for (std::uint64_t i = 0; i < prm.trials; ++i) {
    Rng rng(derive_seed(seed, i));
    while (true) {
      const auto pts = proposition_points(rng, p, 7);
      if (max_collinear(pts) >= 5) {
        ++rejected7;
        continue;
      }
      ++s.checks;
      v7 += !check_independent_conditions(pts);
      break;
    }
    while (true) {
      const auto pts = proposition_points(rng, p, 8);
      if (max_collinear(pts) >= 5 || on_common_conic(pts)) {
        ++rejected8;
        continue;
      }
      ++s.checks;
      v8 += !check_independent_conditions(pts);
      break;
    }
  }
  s.violations = v7 + v8;
  s.stats = {{"p", std::to_string(prm.p)},
             {"seven_point_sets", std::to_string(prm.trials)},
             {"seven_point_rejected_by_filter", std::to_string(rejected7)},
             {"seven_point_rank_deficient", std::to_string(v7)},
             {"eight_point_sets", std::to_string(prm.trials)},
             {"eight_point_rejected_by_filter", std::to_string(rejected8)},
             {"eight_point_rank_deficient", std::to_string(v8)}};
  return s;
}

}  // namespace

CampaignSummary verify_campaign(Campaign c, const CampaignParams& params, std::uint64_t seed) {
  switch (c) {
    case Campaign::kDuality: return duality_campaign(params, seed);
    case Campaign::kLemma: return lemma_campaign(params, seed);
    case Campaign::kMultiplicity: return multiplicity_campaign(params, seed);
    case Campaign::kBezout: return bezout_summary(params, seed);
    case Campaign::kProposition: return proposition_campaign(params, seed);
  }
  throw InvalidInput("unknown campaign");
}

void write_campaign_csv(std::ostream& os, const CampaignSummary& s) {
  os << "key,value\ncampaign," << to_string(s.campaign) << "\nchecks," << s.checks
     << "\nviolations," << s.violations << "\n";
  for (const auto& [k, v] : s.stats) os << k << "," << v << "\n";
}

BoundReport bound_report(const PointSet& points, const CurveSet& curves, unsigned threads) {
  return make_bound_report(points.modulus().value(), points.size(), curves.size(),
                           count_incidences(points, curves, threads));
}

std::vector<BoundReport> bound_report_sweep(u64 p, const std::vector<std::size_t>& sizes_p,
                                            const std::vector<std::size_t>& sizes_c,
                                            std::uint64_t seed, unsigned threads) {
  std::vector<BoundReport> out;
  std::uint64_t counter = 0;
  for (std::size_t m : sizes_p)
    for (std::size_t n : sizes_c) {
      InstanceSpec spec;
      spec.p = p;
      spec.points = PointKind::kGrid;
      spec.curves = CurveKind::kUniformIrreducible;
      spec.num_points = m;
      spec.num_curves = n;
      spec.seed = derive_seed(seed, counter++);
      const Instance inst = generate_instance(spec);
      out.push_back(bound_report(inst.points, inst.curves, threads));
    }
  return out;
}

std::vector<BenchRow> bench(const std::vector<std::size_t>& sizes, u64 p,
                            const std::vector<unsigned>& threads, std::uint64_t seed) {
  std::vector<BenchRow> rows;
  std::uint64_t counter = 0;
  for (std::size_t n : sizes) {
    InstanceSpec spec;
    spec.p = p;
    spec.num_points = n;
    spec.num_curves = n;
    spec.seed = derive_seed(seed, counter++);
    const Instance inst = generate_instance(spec);
    std::optional<std::uint64_t> reference;
    for (unsigned th : threads) {
      const auto t0 = std::chrono::steady_clock::now();
      const std::uint64_t count = count_incidences(inst.points, inst.curves, th);
      const double sec =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (reference && *reference != count)
        throw std::logic_error("incidence count depends on the thread count");
      reference = count;
      const double pairs = static_cast<double>(n) * static_cast<double>(n);
      rows.push_back({n, n, th, sec, sec > 0 ? pairs / sec : 0.0, count});
    }
  }
  return rows;
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "sizeP,sizeC,threads,seconds,pairs_per_second,count\n";
  for (const auto& r : rows)
    os << r.size_p << ',' << r.size_c << ',' << r.threads << ',' << r.seconds << ','
       << r.pairs_per_second << ',' << r.count << '\n';
}

}  // namespace cubinc
