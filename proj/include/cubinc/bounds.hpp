#ifndef CUBINC_BOUNDS_HPP_
#define CUBINC_BOUNDS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace cubinc {

// 113-bit significand; all fractional powers go through exp/log at this precision.
using Real = boost::multiprecision::cpp_bin_float_quad;

// A bound's value together with the name of the min/max branch that attained it.
struct BoundValue {
  Real value;
  std::string branch;
};

BoundValue kst_bound(const Real& m, const Real& n);
BoundValue theorem1_bound(const Real& m, const Real& n);
Real theorem2_bound(const Real& m, const Real& n);
Real sdz_rich_points_bound(const Real& lines, const Real& t);  // t >= 2
Real cks_bound(const Real& m, const Real& k);                  // k >= 11
Real ck_bound(const Real& m, const Real& k);                   // k >= 11
BoundValue delta_opt(const Real& m, const Real& n);            // n >= 1
Real dyadic_bound(const Real& m, const Real& n, const Real& delta);  // delta >= 1
std::pair<Real, Real> improvement_range(const Real& m);        // m >= 1

// m^13 <= p^15 in exact integers. p must be prime.
bool admissible(std::uint64_t m, std::uint64_t p);

struct BoundReport {
  std::uint64_t p = 0;
  std::uint64_t size_p = 0;
  std::uint64_t size_c = 0;
  std::uint64_t measured = 0;
  BoundValue kst;
  BoundValue thm1;
  Real thm2;
  std::optional<BoundValue> delta;  // undefined for |C| = 0
  std::optional<Real> dyadic_at_delta;
  bool admissible = false;

  // measured / bound, empty when the bound is zero or undefined
  std::optional<Real> kst_ratio, thm1_ratio, thm2_ratio, dyadic_ratio;
  std::string active_branch() const;
};

BoundReport make_bound_report(std::uint64_t p, std::uint64_t size_p, std::uint64_t size_c,
                              std::uint64_t measured);

// Fixed 20-significant-digit scientific notation; byte-stable across runs.
std::string format_real(const Real& x);

// p,sizeP,sizeC,measured_I,kst,thm1,thm2,delta,dyadic_at_delta,admissible,active_branch
void write_bound_report_header(std::ostream& os);
void write_bound_report_row(std::ostream& os, const BoundReport& r);

}  // namespace cubinc

#endif  // CUBINC_BOUNDS_HPP_
