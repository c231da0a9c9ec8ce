#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <sstream>

#include "cubinc/curves.hpp"
#include "cubinc/rng.hpp"

using namespace cubinc;

namespace {

// Builds a curve from (i, j, coefficient) terms; negative coefficients wrap.
CurveCoeffs curve_of(std::initializer_list<std::tuple<int, int, long long>> terms,
                     const PrimeModulus& p) {
  Coeffs c{};
  const long long pv = static_cast<long long>(p.value());
  for (auto [i, j, v] : terms) {
    const int k = monomial_index(i, j);
    c[k] = p.add(c[k], static_cast<u64>(((v % pv) + pv) % pv));
  }
  return CurveCoeffs(c, p);
}

}  // namespace

TEST_CASE("monomial order is fixed") {
  CHECK(monomial_index(0, 0) == 0);
  CHECK(monomial_index(1, 0) == 1);
  CHECK(monomial_index(0, 1) == 2);
  CHECK(monomial_index(3, 0) == 6);
  CHECK(monomial_index(0, 3) == 9);
  CHECK(monomial_index(2, 2) == -1);
}

TEST_CASE("construction rejects the zero vector and unreduced entries") {
  const PrimeModulus p(5);
  CHECK_THROWS_AS(CurveCoeffs(Coeffs{}, p), InvalidInput);
  Coeffs c{};
  c[0] = 5;
  CHECK_THROWS_AS(CurveCoeffs(c, p), InvalidInput);
}

TEST_CASE("normalization is idempotent under scaling") {
  const PrimeModulus p(7);
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    Coeffs c;
    for (auto& e : c) e = rng.below(7);
    if (c == Coeffs{}) continue;
    const CurveCoeffs base(c, p);
    for (u64 lambda = 1; lambda < 7; ++lambda) {
      Coeffs s;
      for (int k = 0; k < kNumMonomials; ++k) s[k] = p.mul(c[k], lambda);
      const CurveCoeffs scaled(s, p);
      CHECK(scaled == base);
      CHECK(scaled.classification() == base.classification());
    }
  }
}

TEST_CASE("evaluate and incident") {
  const PrimeModulus p5(5), p7(7);
  const CurveCoeffs cusp = curve_of({{0, 1, 1}, {3, 0, -1}}, p5);  // y - x^3
  CHECK(evaluate(cusp, AffinePoint(2, 3, p5)).value() == 0);
  CHECK(incident(cusp, AffinePoint(2, 3, p5)));
  CHECK_FALSE(incident(cusp, AffinePoint(2, 4, p5)));
  CHECK(evaluate(cusp, AffinePoint(2, 4, p5)).value() == 1);

  const CurveCoeffs one = curve_of({{0, 0, 1}}, p5);
  CHECK(evaluate(one, AffinePoint(3, 4, p5)).value() == 1);

  const CurveCoeffs fermat = curve_of({{3, 0, 1}, {0, 3, 1}, {0, 0, 1}}, p7);
  CHECK(evaluate(fermat, AffinePoint(0, 0, p7)).value() == 1);

  CHECK_THROWS_AS(evaluate(cusp, AffinePoint(0, 0, p7)), ConfigError);
}

TEST_CASE("evaluation scales linearly before normalization") {
  const PrimeModulus p(11);
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    Coeffs c;
    for (auto& e : c) e = rng.below(11);
    c[0] = 1 + rng.below(10);  // first entry nonzero keeps c already normalized-comparable
    const u64 lambda = 1 + rng.below(10);
    Coeffs s;
    for (int k = 0; k < kNumMonomials; ++k) s[k] = p.mul(c[k], lambda);
    const AffinePoint q(rng.below(11), rng.below(11), p);
    // evaluate(c) computed from the raw vector
    const Coeffs m = monomial_vector(q);
    u64 raw = 0, raw_scaled = 0;
    for (int k = 0; k < kNumMonomials; ++k) {
      raw = p.add(raw, p.mul(c[k], m[k]));
      raw_scaled = p.add(raw_scaled, p.mul(s[k], m[k]));
    }
    CHECK(raw_scaled == p.mul(lambda, raw));
    CHECK(incident(CurveCoeffs(c, p), q) == (raw == 0));
    CHECK(incident(CurveCoeffs(s, p), q) == (raw == 0));
  }
}

TEST_CASE("rational_points") {
  const PrimeModulus p5(5), p7(7);
  const auto graph = rational_points(curve_of({{0, 1, 1}, {3, 0, -1}}, p5));
  REQUIRE(graph.size() == 5);
  for (u64 x = 0; x < 5; ++x) CHECK(graph[x].x.value() == x);

  CHECK(rational_points(curve_of({{0, 0, 1}}, p5)).empty());

  // Oracle: direct integer evaluation of x^3 + y^3 + 1 over all 49 points.
  std::vector<AffinePoint> expected;
  for (u64 x = 0; x < 7; ++x)
    for (u64 y = 0; y < 7; ++y)
      if ((x * x * x + y * y * y + 1) % 7 == 0) expected.emplace_back(x, y, p7);
  const auto fermat = rational_points(curve_of({{3, 0, 1}, {0, 3, 1}, {0, 0, 1}}, p7));
  CHECK(fermat == expected);
  CHECK(fermat.size() == 6);

  const PrimeModulus big(65537);
  CHECK_THROWS_AS(rational_points(curve_of({{0, 1, 1}}, big)), GuardExceeded);
}

TEST_CASE("points_above agrees with enumeration") {
  const PrimeModulus p(13);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const CurveCoeffs c = random_irreducible_cubic(seed, p);
    const auto all = rational_points(c);
    std::size_t total = 0;
    for (u64 x0 = 0; x0 < 13; ++x0) total += points_above(c, x0).size();
    CHECK(total == all.size());
  }
  // x * (y - 1): the line x = 0 is a component
  const CurveCoeffs reducible = curve_of({{1, 1, 1}, {1, 0, -1}}, p);
  CHECK_THROWS_AS(points_above(reducible, 0), InvalidInput);
  CHECK(points_above(reducible, 3).size() == 1);
}

TEST_CASE("classify_irreducibility examples") {
  const PrimeModulus p7(7), p11(11);
  // x * y * (x + y + 1) = x^2 y + x y^2 + x y
  CHECK(curve_of({{2, 1, 1}, {1, 2, 1}, {1, 1, 1}}, p11).classification() ==
        IrreducibilityClass::kReducibleRational);
  CHECK(curve_of({{0, 1, 1}, {3, 0, -1}}, p7).classification() ==
        IrreducibilityClass::kAbsolutelyIrreducible);
  CHECK(curve_of({{3, 0, 1}, {0, 0, -2}}, p7).classification() ==
        IrreducibilityClass::kConjugateLines);
  CHECK(curve_of({{3, 0, 1}, {0, 3, 1}, {0, 0, 1}}, p7).classification() ==
        IrreducibilityClass::kAbsolutelyIrreducible);
  CHECK(curve_of({{0, 1, 1}, {2, 0, -1}}, p7).classification() ==
        IrreducibilityClass::kLowDegree);
  // y^3 - x y^2 ... with a factor at infinity direction only: y^2 (y - x) + 1
  // has no finite linear factor over any field; its cubic part splits but the
  // constant term blocks every candidate line.
  CHECK(curve_of({{0, 3, 1}, {1, 2, -1}, {0, 0, 1}}, p7).classification() !=
        IrreducibilityClass::kReducibleRational);
}

TEST_CASE("rational linear factor divides") {
  const PrimeModulus p(11);
  // (x + 2y + 3)(x^2 + y^2 + 5) expanded symbolically
  const CurveCoeffs c = curve_of({{3, 0, 1},
                                  {1, 2, 1},
                                  {1, 0, 5},
                                  {2, 1, 2},
                                  {0, 3, 2},
                                  {0, 1, 10},
                                  {2, 0, 3},
                                  {0, 2, 3},
                                  {0, 0, 15}},
                                 p);
  const auto f = rational_linear_factor(c);
  REQUIRE(f.has_value());
  CHECK((*f)[0].value() == 1);
  CHECK((*f)[1].value() == 2);
  CHECK((*f)[2].value() == 3);
}

TEST_CASE("conjugate-line factor lies in GF(p^3) and not GF(p)") {
  const PrimeModulus p(7);
  const CurveCoeffs c = curve_of({{3, 0, 1}, {0, 0, -2}}, p);
  CHECK_FALSE(rational_linear_factor(c).has_value());
  const CubicModulus m = find_cubic_modulus(p);
  const auto f = cubic_extension_linear_factor(c, m);
  REQUIRE(f.has_value());
  // X - r Z with r^3 = 2
  const Fp3Element r = -(*f)[2];
  CHECK((*f)[0] == Fp3Element::embed(1, m));
  CHECK((*f)[1].is_zero());
  CHECK(r * r * r == Fp3Element::embed(2, m));
  CHECK_FALSE(r.in_prime_field());
}

TEST_CASE("classification is scaling invariant for structured reducible families") {
  const PrimeModulus p(13);
  Rng rng(77);
  for (int t = 0; t < 200; ++t) {
    // line * conic with random coefficients
    const u64 a = rng.below(13), b = rng.below(13), cc = rng.below(13);
    if (a == 0 && b == 0) continue;
    std::array<u64, 6> q;  // 1, x, y, x^2, xy, y^2
    for (auto& e : q) e = rng.below(13);
    if (q[3] == 0 && q[4] == 0 && q[5] == 0) continue;
    Coeffs c{};
    // (cc + a x + b y) * (q0 + q1 x + q2 y + q3 x^2 + q4 xy + q5 y^2)
    const std::array<std::pair<int, int>, 3> lin = {{{0, 0}, {1, 0}, {0, 1}}};
    const std::array<u64, 3> lv = {cc, a, b};
    const std::array<std::pair<int, int>, 6> con = {
        {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 6; ++j) {
        const int k = monomial_index(lin[i].first + con[j].first, lin[i].second + con[j].second);
        c[k] = p.add(c[k], p.mul(lv[i], q[j]));
      }
    const CurveCoeffs curve(c, p);
    if (curve.degree() == 3) CHECK(curve.classification() == IrreducibilityClass::kReducibleRational);
  }
}

TEST_CASE("random_irreducible_cubic") {
  const PrimeModulus p(5);
  CHECK(random_irreducible_cubic(99, p) == random_irreducible_cubic(99, p));
  std::set<Coeffs> distinct;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const CurveCoeffs c = random_irreducible_cubic(s, p);
    CHECK(c.degree() == 3);
    CHECK(c.classification() == IrreducibilityClass::kAbsolutelyIrreducible);
    distinct.insert(c.coeffs());
  }
  CHECK(distinct.size() > 40);
  const CurveCoeffs big = random_irreducible_cubic(1, PrimeModulus(2147483647));
  CHECK(big.is_irreducible_cubic());
}

TEST_CASE("conic determinant test") {
  const PrimeModulus p(11);
  CHECK(conic_is_absolutely_irreducible(curve_of({{0, 1, 1}, {2, 0, -1}}, p)));  // y = x^2
  CHECK_FALSE(conic_is_absolutely_irreducible(curve_of({{1, 1, 1}}, p)));       // xy
  CHECK_FALSE(conic_is_absolutely_irreducible(curve_of({{2, 0, 1}, {0, 2, 1}}, p)));  // x^2 + y^2
  CHECK(conic_is_absolutely_irreducible(curve_of({{2, 0, 1}, {0, 2, 1}, {0, 0, -1}}, p)));
  CHECK_THROWS_AS(conic_is_absolutely_irreducible(curve_of({{0, 1, 1}, {3, 0, 1}}, p)),
                  InvalidInput);
}

TEST_CASE("CSV round trip and header") {
  const PrimeModulus p(13);
  std::vector<CurveCoeffs> curves;
  for (std::uint64_t s = 0; s < 5; ++s) curves.push_back(random_irreducible_cubic(s, p));
  std::stringstream ss;
  write_curves_csv(ss, curves);
  CHECK(ss.str().rfind("c00,c10,c01,c20,c11,c02,c30,c21,c12,c03\n", 0) == 0);
  CHECK(read_curves_csv(ss, p) == curves);

  std::vector<AffinePoint> pts = {AffinePoint(1, 2, p), AffinePoint(12, 0, p)};
  std::stringstream ps;
  write_points_csv(ps, pts);
  CHECK(ps.str() == "x,y\n1,2\n12,0\n");
  CHECK(read_points_csv(ps, p) == pts);

  std::stringstream bad("x,y\n1,13\n");
  CHECK_THROWS_AS(read_points_csv(bad, p), InvalidInput);
  std::stringstream bad_header("a,b\n");
  CHECK_THROWS_AS(read_points_csv(bad_header, p), InvalidInput);
}
