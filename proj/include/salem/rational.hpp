#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace salem {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
// 100 decimal digits; enough to expand continued fractions of quadratic
// irrationals far past any denominator bound used at desk scale.
using Real = boost::multiprecision::cpp_bin_float_100;

// Accepts "p/q", "p", or a decimal literal such as "0.3" (converted exactly).
Rational parse_rational(std::string_view text);
std::vector<Rational> parse_rational_list(std::string_view text, char sep = ',');
std::string to_string(const Rational& r);

// num / den for machine integers of either sign. The two-argument Rational
// constructor hands den to GMP as unsigned and must not see a negative value.
inline Rational ratio(std::int64_t num, std::int64_t den) { return Rational(BigInt(num), BigInt(den)); }

Rational pow2(long exponent);
BigInt ipow(const BigInt& base, unsigned exponent);
Rational ipow(const Rational& base, unsigned exponent);
double to_double(const Rational& r);

std::int64_t floor_to_int64(const Rational& r);

// Largest integer n >= 0 with n^root <= x^power, i.e. floor(x^(power/root)).
// Exact; x must be non-negative.
BigInt floor_rational_power(const Rational& x, unsigned power, unsigned root);

// Closed interval [lo, hi] with exact endpoints; lo <= hi.
struct RationalInterval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  Rational length() const { return hi - lo; }
  friend bool operator==(const RationalInterval&, const RationalInterval&) = default;
};

// Finite union of closed intervals kept sorted and pairwise disjoint;
// touching intervals are merged.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<RationalInterval> parts);

  void add(RationalInterval part);
  const std::vector<RationalInterval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  bool contains(const Rational& x) const;
  // True when every point of `other` lies in this union.
  bool contains(const IntervalUnion& other) const;
  // Empty intersection with the open interval (lo, hi).
  bool disjoint_from_open(const Rational& lo, const Rational& hi) const;
  IntervalUnion intersect(const IntervalUnion& other) const;

 private:
  void normalize();
  std::vector<RationalInterval> parts_;
};

}  // namespace salem
