#include "salem/rational.hpp"

#include "salem/error.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace salem {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SumMismatch: return "SumMismatch";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::TooFewVariables: return "TooFewVariables";
    case ErrorCode::NonPositiveCoefficient: return "NonPositiveCoefficient";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
    case ErrorCode::NoValidDigitCap: return "NoValidDigitCap";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ResidueOutOfRange: return "ResidueOutOfRange";
    case ErrorCode::ParametersTooSmall: return "ParametersTooSmall";
    case ErrorCode::BlockEmpty: return "BlockEmpty";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::TooFewBands: return "TooFewBands";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::BadTruncation: return "BadTruncation";
    case ErrorCode::DivergentIntegral: return "DivergentIntegral";
    case ErrorCode::GridOutOfDomain: return "GridOutOfDomain";
    case ErrorCode::BadSchedule: return "BadSchedule";
    case ErrorCode::LengthExceedsSchedule: return "LengthExceedsSchedule";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

bool is_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

BigInt parse_int(const std::string& s) {
  if (!is_integer_literal(s)) fail(ErrorCode::ParseError, "not an integer: '" + s + "'");
  return BigInt(s[0] == '+' ? s.substr(1) : s);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s = trim(text);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigInt num = parse_int(trim(s.substr(0, slash)));
    BigInt den = parse_int(trim(s.substr(slash + 1)));
    if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + s + "'");
    return Rational(num, den);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole = whole.substr(1);
    if (whole.empty()) whole = "0";
    if (frac.empty()) frac = "0";
    if (!is_integer_literal(whole) || !is_integer_literal(frac) || frac[0] == '-' || frac[0] == '+')
      fail(ErrorCode::ParseError, "not a decimal: '" + s + "'");
    BigInt den = ipow(BigInt(10), static_cast<unsigned>(frac.size()));
    Rational r(BigInt(whole) * den + BigInt(frac), den);
    return neg ? Rational(-r) : r;
  }
  return Rational(parse_int(s));
}

std::vector<Rational> parse_rational_list(std::string_view text, char sep) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto pos = text.find(sep, start);
    auto piece = text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
    if (!trim(piece).empty()) out.push_back(parse_rational(piece));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational pow2(long exponent) {
  BigInt p = BigInt(1) << static_cast<unsigned>(exponent < 0 ? -exponent : exponent);
  return exponent < 0 ? Rational(BigInt(1), p) : Rational(p);
}

BigInt ipow(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

Rational ipow(const Rational& base, unsigned exponent) {
  return Rational(ipow(numerator(base), exponent), ipow(denominator(base), exponent));
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::int64_t floor_to_int64(const Rational& r) {
  BigInt q = numerator(r) / denominator(r);
  if (r < 0 && q * denominator(r) != numerator(r)) q -= 1;
  return q.convert_to<std::int64_t>();
}

BigInt floor_rational_power(const Rational& x, unsigned power, unsigned root) {
  if (x < 0) fail(ErrorCode::InvalidArgument, "floor_rational_power needs x >= 0");
  if (root == 0) fail(ErrorCode::InvalidArgument, "zero root");
  // n^root <= x^power  <=>  n^root * den^power <= num^power
  BigInt lhs_scale = ipow(denominator(x), power);
  BigInt target = ipow(numerator(x), power);
  auto fits = [&](const BigInt& n) { return ipow(n, root) * lhs_scale <= target; };
  BigInt lo = 0, hi = 1;
  while (fits(hi)) hi *= 2;
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (fits(mid)) lo = mid; else hi = mid;
  }
  return lo;
}

IntervalUnion::IntervalUnion(std::vector<RationalInterval> parts) : parts_(std::move(parts)) {
  normalize();
}

void IntervalUnion::add(RationalInterval part) {
  parts_.push_back(std::move(part));
  normalize();
}

void IntervalUnion::normalize() {
  std::sort(parts_.begin(), parts_.end(),
            [](const RationalInterval& a, const RationalInterval& b) { return a.lo < b.lo; });
  std::vector<RationalInterval> merged;
  for (auto& p : parts_) {
    if (!merged.empty() && p.lo <= merged.back().hi) {
      if (p.hi > merged.back().hi) merged.back().hi = p.hi;
    } else {
      merged.push_back(p);
    }
  }
  parts_ = std::move(merged);
}

bool IntervalUnion::contains(const Rational& x) const {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](const Rational& v, const RationalInterval& p) { return v < p.lo; });
  if (it == parts_.begin()) return false;
  return (--it)->contains(x);
}

bool IntervalUnion::contains(const IntervalUnion& other) const {
  for (const auto& p : other.parts_) {
    auto it = std::upper_bound(parts_.begin(), parts_.end(), p.lo,
                               [](const Rational& v, const RationalInterval& q) { return v < q.lo; });
    if (it == parts_.begin()) return false;
    --it;
    if (!(it->lo <= p.lo && p.hi <= it->hi)) return false;
  }
  return true;
}

bool IntervalUnion::disjoint_from_open(const Rational& lo, const Rational& hi) const {
  for (const auto& p : parts_)
    if (p.lo < hi && lo < p.hi) return false;
  return true;
}

IntervalUnion IntervalUnion::intersect(const IntervalUnion& other) const {
  std::vector<RationalInterval> out;
  std::size_t i = 0, j = 0;
  while (i < parts_.size() && j < other.parts_.size()) {
    const auto& a = parts_[i];
    const auto& b = other.parts_[j];
    Rational lo = a.lo > b.lo ? a.lo : b.lo;
    Rational hi = a.hi < b.hi ? a.hi : b.hi;
    if (lo <= hi) out.push_back({lo, hi});
    if (a.hi < b.hi) ++i; else ++j;
  }
  IntervalUnion u;
  u.parts_ = std::move(out);
  return u;
}

}  // namespace salem
