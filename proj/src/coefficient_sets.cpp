#include "salem/coefficient_sets.hpp"

#include "salem/error.hpp"

#include <algorithm>
#include <cmath>

namespace salem {

namespace {

BigInt floor_big(const Rational& r) {
  BigInt q = numerator(r) / denominator(r);
  if (r < 0 && q * denominator(r) != numerator(r)) q -= 1;
  return q;
}

BigInt floor_big(const Real& x) {
  std::string s = boost::multiprecision::floor(x).str(0, std::ios_base::fixed);
  if (auto dot = s.find('.'); dot != std::string::npos) s.resize(dot);
  return BigInt(s);
}

}  // namespace

bool dyadic_membership(const Rational& t, const DyadicNbhd& nb) {
  const Rational scale = pow2(nb.P);
  const BigInt m = floor_big(t * scale);
  const Rational radius = pow2(-nb.R);
  for (BigInt k = m; k <= m + 1; ++k) {
    Rational d = t - Rational(k) / scale;
    if (d < 0) d = -d;
    if (d <= radius) return true;
  }
  return false;
}

void validate_schedule(const DyadicSchedule& s) {
  for (std::size_t n = 0; n < s.size(); ++n) {
    const auto& cur = s[n];
    std::string at = " at level " + std::to_string(n + 1);
    if (n == 0 && cur.P != 1) fail(ErrorCode::BadSchedule, "the first dyadic level must be P = 1");
    if (cur.R < cur.P + 2) fail(ErrorCode::BadSchedule, "need R >= P + 2" + at);
    if (n + 1 < s.size()) {
      const auto& next = s[n + 1];
      if (next.P < cur.R + 2) fail(ErrorCode::BadSchedule, "need P_{n+1} >= R_n + 2" + at);
      if (next.R < cur.R + 4) fail(ErrorCode::BadSchedule, "need R_{n+1} >= R_n + 4" + at);
    }
  }
}

NestedSetTruncation nested_set_build(const DyadicSchedule& schedule, int depth) {
  if (depth < 0) fail(ErrorCode::BadSchedule, "negative depth");
  if (static_cast<std::size_t>(depth) > schedule.size())
    fail(ErrorCode::BadSchedule, "schedule has only " + std::to_string(schedule.size()) + " levels");
  DyadicSchedule used(schedule.begin(), schedule.begin() + depth);
  validate_schedule(used);
  NestedSetTruncation out{used, depth, IntervalUnion({{Rational(0), Rational(1)}})};
  if (depth == 0) return out;
  const Rational half(1, 2);
  const Rational r1 = pow2(-used[0].R);
  out.set = IntervalUnion({{half - r1, half + r1}});
  for (int n = 1; n < depth; ++n) {
    const Rational step = pow2(-used[n].P);
    const Rational radius = pow2(-used[n].R);
    std::vector<RationalInterval> parts;
    for (const auto& comp : out.set.parts()) {
      BigInt first = -floor_big(-((comp.lo - radius) / step));
      BigInt last = floor_big((comp.hi + radius) / step);
      for (BigInt m = first; m <= last; ++m) {
        Rational centre = Rational(m) * step;
        Rational lo = std::max(comp.lo, Rational(centre - radius));
        Rational hi = std::min(comp.hi, Rational(centre + radius));
        if (lo <= hi) parts.push_back({lo, hi});
      }
    }
    out.set = IntervalUnion(std::move(parts));
  }
  return out;
}

Rational t_of_eps(const std::vector<int>& eps, const DyadicSchedule& schedule) {
  if (eps.size() > schedule.size())
    fail(ErrorCode::LengthExceedsSchedule, "eps has " + std::to_string(eps.size()) + " entries, schedule " +
                                               std::to_string(schedule.size()));
  Rational t(1, 2);
  for (std::size_t n = 0; n < eps.size(); ++n) {
    if (eps[n] != 0 && eps[n] != 1) fail(ErrorCode::InvalidArgument, "eps entries must be 0 or 1");
    if (eps[n]) t += pow2(-(schedule[n].R + 2));
  }
  return t;
}

std::pair<BigInt, long> dyadic_pair(const Rational& x) {
  const BigInt& den = denominator(x);
  if ((den & (den - 1)) != 0) fail(ErrorCode::InvalidArgument, "not a dyadic rational: " + salem::to_string(x));
  long exponent = static_cast<long>(boost::multiprecision::msb(den));
  return {numerator(x), exponent};
}

Real quadratic_irrational(long a, long b, long d, long e) {
  if (d < 0) fail(ErrorCode::InvalidArgument, "negative radicand");
  if (e == 0) fail(ErrorCode::InvalidArgument, "zero denominator");
  return (Real(a) + Real(b) * boost::multiprecision::sqrt(Real(d))) / Real(e);
}

std::string_view to_string(BadApproxStatus s) {
  switch (s) {
    case BadApproxStatus::MemberUpToBound: return "member-up-to-bound";
    case BadApproxStatus::NotMember: return "not-member";
    case BadApproxStatus::UnknownBeyondBound: return "unknown-beyond-bound";
  }
  return "?";
}

namespace {

enum class Verdict { Violates, Clear, Unsure };

struct Convergent {
  BigInt num;
  BigInt den;
};

void check_params(const BadApproxParams& p) {
  if (p.c <= 0 || p.c > 1) fail(ErrorCode::InvalidArgument, "c must lie in (0, 1]");
  if (p.tau <= 0 || p.tau > 1) fail(ErrorCode::InvalidArgument, "tau must lie in (0, 1]");
  if (p.p_max < 2) fail(ErrorCode::InvalidArgument, "p_max must be >= 2");
  if (p.p_min < 1 || p.p_min > p.p_max) fail(ErrorCode::InvalidArgument, "need 1 <= p_min <= p_max");
}

// Exact: |t - q/p| <= c p^-(1+tau)  <=>  (|t - q/p| p / c)^b p^a <= 1 for tau = a/b.
Verdict violates_exact(const Rational& t, const BigInt& q, const BigInt& p, const BadApproxParams& prm) {
  Rational diff = t - Rational(q, p);
  if (diff < 0) diff = -diff;
  unsigned a = numerator(prm.tau).convert_to<unsigned>();
  unsigned b = denominator(prm.tau).convert_to<unsigned>();
  Rational lhs = ipow(Rational(diff * Rational(p) / prm.c), b) * Rational(ipow(p, a));
  return lhs <= 1 ? Verdict::Violates : Verdict::Clear;
}

Verdict violates_real(const Real& t, const BigInt& q, const BigInt& p, const BadApproxParams& prm) {
  Real P(p), Q(q);
  Real diff = boost::multiprecision::abs(t - Q / P);
  Real bound = Real(numerator(prm.c)) / Real(denominator(prm.c)) /
               boost::multiprecision::pow(P, Real(1) + Real(numerator(prm.tau)) / Real(denominator(prm.tau)));
  Real gap = boost::multiprecision::abs(diff - bound);
  if (gap <= bound * Real("1e-80")) return Verdict::Unsure;
  return diff <= bound ? Verdict::Violates : Verdict::Clear;
}

std::vector<Convergent> convergents_exact(const Rational& t, const BigInt& p_max) {
  std::vector<Convergent> out;
  BigInt h_prev = 1, h = floor_big(t), k_prev = 0, k = 1;
  out.push_back({h, k});
  Rational x = t - Rational(h);
  while (x != 0) {
    x = 1 / x;
    BigInt a = floor_big(x);
    x -= Rational(a);
    BigInt h_next = a * h + h_prev, k_next = a * k + k_prev;
    if (k_next > p_max) break;
    h_prev = h; h = h_next; k_prev = k; k = k_next;
    out.push_back({h, k});
  }
  return out;
}

// Convergents of a high-precision real; `exhausted` reports running out of
// precision before reaching p_max.
std::vector<Convergent> convergents_real(const Real& t, const BigInt& p_max, bool& exhausted) {
  std::vector<Convergent> out;
  exhausted = false;
  Real fl = boost::multiprecision::floor(t);
  BigInt h_prev = 1, h = floor_big(fl), k_prev = 0, k = 1;
  out.push_back({h, k});
  Real x = t - fl;
  const Real tiny("1e-85");
  while (true) {
    // Precision left in x shrinks roughly like 1/k^2.
    if (x <= tiny * Real(k) * Real(k)) {
      exhausted = x != 0 ? true : false;
      break;
    }
    x = 1 / x;
    Real a_r = boost::multiprecision::floor(x);
    x -= a_r;
    BigInt a = floor_big(a_r);
    BigInt h_next = a * h + h_prev, k_next = a * k + k_prev;
    if (k_next > p_max) break;
    h_prev = h; h = h_next; k_prev = k; k = k_next;
    out.push_back({h, k});
  }
  return out;
}

template <class T, class Floor, class Check>
BadApproxResult search(const T& t, const BadApproxParams& prm, const std::vector<Convergent>& conv, bool exhausted,
                       Floor&& floor_of, Check&& check) {
  BadApproxResult res{BadApproxStatus::MemberUpToBound, std::nullopt, prm.p_max, 0};
  bool unsure = false;
  auto test = [&](const BigInt& q, const BigInt& p) {
    ++res.candidates_checked;
    Verdict v = check(t, q, p, prm);
    if (v == Verdict::Unsure) unsure = true;
    return v == Verdict::Violates;
  };

  // First convergent denominator >= p_min.
  std::int64_t first_record = prm.p_max + 1;
  for (const auto& c : conv)
    if (c.den >= prm.p_min) {
      first_record = c.den.convert_to<std::int64_t>();
      break;
    }
  // A violating p whose nearest numerator is not the closest one needs
  // 1/(2p) <= c p^-(1+tau), i.e. p^tau <= 2c.
  double small_p = std::floor(std::pow(2 * to_double(prm.c), 1.0 / to_double(prm.tau)));
  std::int64_t brute_end = std::min<std::int64_t>(prm.p_max, std::max<std::int64_t>(first_record - 1,
                                                                                     static_cast<std::int64_t>(small_p)));
  if (brute_end - prm.p_min > 100000000) fail(ErrorCode::BudgetExceeded, "denominator scan too long");

  for (std::int64_t p = prm.p_min; p <= brute_end; ++p) {
    BigInt P(p);
    BigInt base = floor_of(t, P);
    for (BigInt q = base - 1; q <= base + 2; ++q) {
      if (boost::multiprecision::gcd(boost::multiprecision::abs(q), P) != 1) continue;
      if (test(q, P)) {
        res.status = BadApproxStatus::NotMember;
        res.witness = Rational(q, P);
        res.checked_up_to = p;
        return res;
      }
    }
  }
  // Beyond the scan, a violation at p implies one at the last convergent
  // denominator <= p, so convergents suffice.
  for (const auto& c : conv) {
    if (c.den <= brute_end || c.den < prm.p_min) continue;
    if (test(c.num, c.den)) {
      res.status = BadApproxStatus::NotMember;
      res.witness = Rational(c.num, c.den);
      res.checked_up_to = c.den.convert_to<std::int64_t>();
      return res;
    }
  }
  if (unsure || exhausted) {
    res.status = BadApproxStatus::UnknownBeyondBound;
    res.checked_up_to = conv.empty() ? 0 : conv.back().den.convert_to<std::int64_t>();
  }
  return res;
}

}  // namespace

BadApproxResult badly_approx_member(const Rational& t, const BadApproxParams& params) {
  check_params(params);
  if (t <= 0 || t >= 1) fail(ErrorCode::InvalidArgument, "t must lie in (0, 1)");
  auto conv = convergents_exact(t, BigInt(params.p_max));
  return search(t, params, conv, false, [](const Rational& x, const BigInt& p) { return floor_big(x * Rational(p)); },
                violates_exact);
}

BadApproxResult badly_approx_member(const Real& t, const BadApproxParams& params) {
  check_params(params);
  if (t <= 0 || t >= 1) fail(ErrorCode::InvalidArgument, "t must lie in (0, 1)");
  bool exhausted = false;
  auto conv = convergents_real(t, BigInt(params.p_max), exhausted);
  return search(t, params, conv, exhausted,
                [](const Real& x, const BigInt& p) { return floor_big(Real(x * Real(p))); },
                violates_real);
}

FrakC build_frakC(int depth, double modulus_budget, std::size_t min_block_size) {
  if (depth < 0) fail(ErrorCode::BadSchedule, "negative depth");
  FrakC out;
  DyadicSchedule schedule;
  int R_prev = -1;
  for (int n = 1; n <= depth; ++n) {
    const int P = R_prev + 2;
    if (P > 60) fail(ErrorCode::BudgetExceeded, "p_n no longer fits a machine integer");
    const std::int64_t p = std::int64_t{1} << P;
    const std::int64_t A = 2 * p + 1;
    // Smallest N with p/N <= 1/(2p) is 2p^2; each larger Behrend modulus
    // m starts at N = 16 p^2 (m - 1).
    std::int64_t N = 2 * p * p;
    if (static_cast<double>(N) > modulus_budget)
      fail(ErrorCode::BudgetExceeded, "level " + std::to_string(n) + " needs N = " + std::to_string(N));
    for (std::int64_t inner = 2; ; ++inner) {
      std::size_t size = inner - 1 >= 2 ? behrend_set(inner - 1, static_cast<int>(A)).elements.size() : 1;
      if (size >= min_block_size) break;
      N = std::max(N, 16 * p * p * (inner - 1));
      if (static_cast<double>(N) > modulus_budget)
        fail(ErrorCode::BudgetExceeded, "no block of size " + std::to_string(min_block_size) + " within budget");
    }
    Block block = build_block({NearRationalBlock{p}, N});
    FrakCLevel lvl;
    lvl.n = n;
    lvl.p = p;
    lvl.N = N;
    lvl.kappa = *block.record.kappa;
    lvl.kappa_valid = block.record.kappa_valid;
    // Minimal R with 2^-R < kappa.
    int R = 0;
    while (pow2(-R) >= lvl.kappa) ++R;
    lvl.R = R;
    lvl.block = block.family.residues;
    lvl.inner_modulus_nontrivial = block.record.inner_size >= 2;
    lvl.alpha = static_cast<double>(n) / (n + 1);
    lvl.size_target_holds = static_cast<double>(lvl.block.size()) > std::pow(static_cast<double>(N), lvl.alpha);
    lvl.parametric_ok = !parametric_hit_any_translate(lvl.block, N, p, lvl.kappa).has_value();

    schedule.push_back({P, R});
    out.set = nested_set_build(schedule, n);
    lvl.spot_ok = true;
    for (const auto& comp : out.set.set.parts()) {
      for (const Rational& t : {comp.lo, Rational((comp.lo + comp.hi) / 2), comp.hi}) {
        if (t <= 0 || t >= 1) continue;
        if (cross_interval_witness(block.family, {t, Rational(1 - t)})) {
          lvl.spot_ok = false;
          break;
        }
      }
      if (!lvl.spot_ok) break;
    }
    out.levels.push_back(std::move(lvl));
    R_prev = R;
  }
  if (depth == 0) out.set = nested_set_build({}, 0);
  return out;
}

}  // namespace salem
