#include "cubinc/dual.hpp"

#include <algorithm>
#include <ostream>
#include <set>

namespace cubinc {

namespace {

void require_same_modulus(std::span<const AffinePoint> s) {
  for (const auto& q : s)
    if (!(q.modulus() == s.front().modulus())) throw ConfigError("points over different moduli");
}

void require_distinct(std::span<const AffinePoint> s) {
  std::set<std::pair<u64, u64>> seen;
  for (const auto& q : s)
    if (!seen.insert({q.x.value(), q.y.value()}).second)
      throw InvalidInput("duplicate point in condition set");
}

std::vector<std::vector<u64>> condition_rows(std::span<const AffinePoint> s) {
  std::vector<std::vector<u64>> rows;
  rows.reserve(s.size());
  for (const auto& q : s) {
    const Coeffs m = monomial_vector(q);
    rows.emplace_back(m.begin(), m.end());
  }
  return rows;
}

}  // namespace

Echelon row_reduce(std::vector<std::vector<u64>> rows, int ncols, const PrimeModulus& p) {
  Echelon e;
  const int nrows = static_cast<int>(rows.size());
  int r = 0;
  for (int col = 0; col < ncols && r < nrows; ++col) {
    int pivot = -1;
    for (int i = r; i < nrows; ++i)
      if (rows[i][col] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[r], rows[pivot]);
    const u64 inv = p.inv(rows[r][col]);
    for (auto& v : rows[r]) v = p.mul(v, inv);
    for (int i = 0; i < nrows; ++i) {
      if (i == r || rows[i][col] == 0) continue;
      const u64 f = rows[i][col];
      for (int j = 0; j < ncols; ++j) rows[i][j] = p.sub(rows[i][j], p.mul(f, rows[r][j]));
    }
    e.pivots.push_back(col);
    ++r;
  }
  e.rank = r;
  e.rows = std::move(rows);
  return e;
}

std::vector<std::vector<u64>> nullspace_basis(const std::vector<std::vector<u64>>& rows, int ncols,
                                              const PrimeModulus& p) {
  const Echelon e = row_reduce(rows, ncols, p);
  std::vector<bool> is_pivot(ncols, false);
  for (int c : e.pivots) is_pivot[c] = true;
  std::vector<std::vector<u64>> basis;
  for (int f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<u64> v(ncols, 0);
    v[f] = 1;
    for (int i = 0; i < e.rank; ++i) v[e.pivots[i]] = p.neg(e.rows[i][f]);
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return basis;
  Echelon canon = row_reduce(std::move(basis), ncols, p);
  canon.rows.resize(canon.rank);
  return canon.rows;
}

DualPoint phi(const CurveCoeffs& curve) { return DualPoint{curve.coeffs()}; }

Hyperplane hyperplane_of_point(const AffinePoint& q) { return Hyperplane{monomial_vector(q)}; }

HyperplaneIntersection intersect_hyperplanes(std::span<const AffinePoint> s) {
  if (s.empty() || s.size() > kNumMonomials)
    throw InvalidInput("hyperplane intersection needs 1 to 10 points");
  require_same_modulus(s);
  require_distinct(s);
  const PrimeModulus& p = s.front().modulus();
  const auto rows = condition_rows(s);
  HyperplaneIntersection out;
  out.rank = row_reduce(rows, kNumMonomials, p).rank;
  for (const auto& v : nullspace_basis(rows, kNumMonomials, p)) {
    Coeffs c;
    std::copy(v.begin(), v.end(), c.begin());
    out.basis.push_back(c);
  }
  return out;
}

bool check_independent_conditions(std::span<const AffinePoint> s) {
  if (s.size() != 7 && s.size() != 8)
    throw InvalidInput("independence check is defined for 7 or 8 points");
  return intersect_hyperplanes(s).rank == static_cast<int>(s.size());
}

Flat2::Flat2(std::array<Coeffs, 3> basis, std::vector<AffinePoint> defining,
             const PrimeModulus& p)
    : basis_(basis), defining_(std::move(defining)), mod_(p) {
  for (int i = 0; i < 3; ++i) {
    int k = 0;
    while (basis_[i][k] == 0) ++k;
    pivots_[i] = k;
  }
  std::sort(defining_.begin(), defining_.end());
}

std::optional<std::array<u64, 3>> Flat2::params(const Coeffs& v) const {
  const std::array<u64, 3> t{v[pivots_[0]], v[pivots_[1]], v[pivots_[2]]};
  if (point_at(t) != v) return std::nullopt;
  return t;
}

Coeffs Flat2::point_at(const std::array<u64, 3>& t) const {
  Coeffs v{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < kNumMonomials; ++k)
      v[k] = mod_.add(v[k], mod_.mul(t[i], basis_[i][k]));
  return v;
}

bool Flat2::defines(const AffinePoint& q) const {
  return std::binary_search(defining_.begin(), defining_.end(), q);
}

std::optional<Flat2> flat_of(std::span<const AffinePoint> s) {
  if (s.size() != 7) throw InvalidInput("a 2-flat is cut out by exactly 7 points");
  const HyperplaneIntersection h = intersect_hyperplanes(s);
  if (h.rank != 7) return std::nullopt;
  return Flat2({h.basis[0], h.basis[1], h.basis[2]},
               std::vector<AffinePoint>(s.begin(), s.end()), s.front().modulus());
}

std::optional<DualLine> psi(const AffinePoint& q, const Flat2& flat) {
  if (!(q.modulus() == flat.modulus())) throw ConfigError("point and flat over different moduli");
  if (flat.defines(q)) throw InvalidInput("psi is undefined on the points defining the flat");
  const PrimeModulus& p = flat.modulus();
  const Coeffs h = hyperplane_of_point(q).covector;
  std::array<u64, 3> r{};
  for (int i = 0; i < 3; ++i) {
    u128 acc = 0;
    for (int k = 0; k < kNumMonomials; ++k) acc += u128{h[k]} * flat.basis()[i][k];
    r[i] = p.reduce(acc);
  }
  if (!normalize_projective(r, p)) return std::nullopt;
  return DualLine{r, q};
}

bool dual_incidence(const DualPoint& dp, const DualLine& dl, const Flat2& flat) {
  const auto t = flat.params(dp.coords);
  if (!t) throw InvalidInput("dual point does not lie in the flat");
  const PrimeModulus& p = flat.modulus();
  u64 acc = 0;
  for (int i = 0; i < 3; ++i) acc = p.add(acc, p.mul(dl.covector[i], (*t)[i]));
  return acc == 0;
}

int max_collinear(std::span<const AffinePoint> s) {
  if (s.size() <= 2) return static_cast<int>(s.size());
  int best = 2;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const FpElement dx = s[j].x - s[i].x, dy = s[j].y - s[i].y;
      int count = 0;
      for (const auto& r : s) {
        // (r - s_i) x (s_j - s_i) == 0
        const FpElement cross = (r.x - s[i].x) * dy - (r.y - s[i].y) * dx;
        if (cross.is_zero()) ++count;
      }
      best = std::max(best, count);
    }
  return best;
}

bool on_common_conic(std::span<const AffinePoint> s) {
  if (s.empty()) return true;
  const PrimeModulus& p = s.front().modulus();
  std::vector<std::vector<u64>> rows;
  for (const auto& q : s) {
    const Coeffs m = monomial_vector(q);
    rows.emplace_back(m.begin(), m.begin() + 6);
  }
  return row_reduce(std::move(rows), 6, p).rank < 6;
}

void write_flat_csv(std::ostream& os, const Flat2& flat) {
  for (const auto& b : flat.basis()) {
    for (int k = 0; k < kNumMonomials; ++k) os << (k ? "," : "") << b[k];
    os << "\n";
  }
}

void write_dual_line_csv(std::ostream& os, const DualLine& line) {
  os << line.source.x.value() << "," << line.source.y.value() << "," << line.covector[0] << ","
     << line.covector[1] << "," << line.covector[2] << "\n";
}

}  // namespace cubinc
