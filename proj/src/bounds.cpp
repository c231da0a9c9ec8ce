#include "cubinc/bounds.hpp"

#include <ostream>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "cubinc/errors.hpp"
#include "cubinc/field.hpp"

namespace cubinc {

namespace {

Real frac(int num, int den) { return Real(num) / Real(den); }

// x^e for x >= 0; 0^e = 0 for e > 0.
Real rpow(const Real& x, const Real& e) {
  if (x < 0) throw InvalidInput("negative size");
  if (x == 0) return e == 0 ? Real(1) : Real(0);
  return boost::multiprecision::pow(x, e);
}

void require_sizes(const Real& m, const Real& n) {
  if (m < 0 || n < 0) throw InvalidInput("sizes must be nonnegative");
}

std::optional<Real> ratio(std::uint64_t measured, const Real& bound) {
  if (bound <= 0) return std::nullopt;
  return Real(measured) / bound;
}

}  // namespace

BoundValue kst_bound(const Real& m, const Real& n) {
  require_sizes(m, n);
  const Real a = m * rpow(n, frac(9, 10)) + n;
  const Real b = rpow(m, frac(1, 2)) * n + m;
  if (a <= b) return {a, "m*n^(9/10)+n"};
  return {b, "m^(1/2)*n+m"};
}

BoundValue theorem1_bound(const Real& m, const Real& n) {
  require_sizes(m, n);
  const Real t1 = rpow(m * n, frac(39, 43));
  const Real t2 = m * rpow(n, frac(9, 10));
  const Real t3 = rpow(m, frac(1, 2)) * n;
  BoundValue best{t1, "(mn)^(39/43)"};
  if (t2 < best.value) best = {t2, "m*n^(9/10)"};
  if (t3 < best.value) best = {t3, "m^(1/2)*n"};
  best.value += m + n;
  return best;
}

Real theorem2_bound(const Real& m, const Real& n) {
  require_sizes(m, n);
  return rpow(m * n, frac(39, 43)) + rpow(m, frac(71, 43)) * rpow(n, frac(28, 43)) + n;
}

Real sdz_rich_points_bound(const Real& lines, const Real& t) {
  if (t < 2) throw InvalidInput("t must be >= 2");
  if (lines < 0) throw InvalidInput("sizes must be nonnegative");
  return rpow(lines, frac(11, 4)) / rpow(t, frac(15, 4)) + lines / t;
}

Real cks_bound(const Real& m, const Real& k) {
  if (k < 11) throw InvalidInput("k must be >= 11");
  if (m < 0) throw InvalidInput("sizes must be nonnegative");
  return rpow(m, frac(11, 4)) / rpow(k, frac(15, 4)) + m / k;
}

Real ck_bound(const Real& m, const Real& k) {
  if (k < 11) throw InvalidInput("k must be >= 11");
  if (m < 0) throw InvalidInput("sizes must be nonnegative");
  return rpow(m, frac(39, 4)) / rpow(k, frac(43, 4)) + rpow(m, Real(8)) / rpow(k, Real(8));
}

BoundValue delta_opt(const Real& m, const Real& n) {
  if (n < 1) throw InvalidInput("delta_opt needs |C| >= 1");
  if (m < 0) throw InvalidInput("sizes must be nonnegative");
  const Real r = rpow(m, frac(39, 43)) / rpow(n, frac(4, 43));
  if (r > 11) return {r, "m^(39/43)/n^(4/43)"};
  return {Real(11), "11"};
}

Real dyadic_bound(const Real& m, const Real& n, const Real& delta) {
  if (delta < 1) throw InvalidInput("delta must be >= 1");
  require_sizes(m, n);
  return delta * n + rpow(m, frac(39, 4)) / rpow(delta, frac(39, 4)) +
         rpow(m, Real(8)) / rpow(delta, Real(7));
}

std::pair<Real, Real> improvement_range(const Real& m) {
  if (m < 1) throw InvalidInput("improvement_range needs m >= 1");
  return {rpow(m, frac(35, 8)), rpow(m, frac(40, 3))};
}

bool admissible(std::uint64_t m, std::uint64_t p) {
  if (!is_prime(p)) throw InvalidInput("admissible needs a prime p");
  using boost::multiprecision::cpp_int;
  return boost::multiprecision::pow(cpp_int(m), 13) <= boost::multiprecision::pow(cpp_int(p), 15);
}

std::string BoundReport::active_branch() const {
  std::string s = "kst=" + kst.branch + ";thm1=" + thm1.branch;
  s += ";delta=" + (delta ? delta->branch : std::string("undefined"));
  return s;
}

BoundReport make_bound_report(std::uint64_t p, std::uint64_t size_p, std::uint64_t size_c,
                              std::uint64_t measured) {
  BoundReport r;
  r.p = p;
  r.size_p = size_p;
  r.size_c = size_c;
  r.measured = measured;
  const Real m(size_p), n(size_c);
  r.kst = kst_bound(m, n);
  r.thm1 = theorem1_bound(m, n);
  r.thm2 = theorem2_bound(m, n);
  if (size_c >= 1) {
    r.delta = delta_opt(m, n);
    r.dyadic_at_delta = dyadic_bound(m, n, r.delta->value);
  }
  r.admissible = admissible(size_p, p);
  r.kst_ratio = ratio(measured, r.kst.value);
  r.thm1_ratio = ratio(measured, r.thm1.value);
  r.thm2_ratio = ratio(measured, r.thm2);
  if (r.dyadic_at_delta) r.dyadic_ratio = ratio(measured, *r.dyadic_at_delta);
  return r;
}

std::string format_real(const Real& x) {
  return x.str(20, std::ios_base::scientific);
}

void write_bound_report_header(std::ostream& os) {
  os << "p,sizeP,sizeC,measured_I,kst,thm1,thm2,delta,dyadic_at_delta,admissible,active_branch\n";
}

void write_bound_report_row(std::ostream& os, const BoundReport& r) {
  os << r.p << ',' << r.size_p << ',' << r.size_c << ',' << r.measured << ','
     << format_real(r.kst.value) << ',' << format_real(r.thm1.value) << ','
     << format_real(r.thm2) << ',' << (r.delta ? format_real(r.delta->value) : "NA") << ','
     << (r.dyadic_at_delta ? format_real(*r.dyadic_at_delta) : "NA") << ','
     << (r.admissible ? 1 : 0) << ',' << r.active_branch() << '\n';
}

}  // namespace cubinc
