#pragma once

#include "salem/interval_sets.hpp"
#include "salem/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace salem {

// Points within 2^-R of a multiple of 2^-P.
struct DyadicNbhd {
  int P;
  int R;
};

bool dyadic_membership(const Rational& t, const DyadicNbhd& nb);

// (P_n, R_n) for n = 1, 2, ...; start at P_1 = 1.
using DyadicSchedule = std::vector<DyadicNbhd>;

// P_1 = 1, R_n >= P_n + 2, P_{n+1} >= R_n + 2, R_{n+1} >= R_n + 4.
void validate_schedule(const DyadicSchedule& schedule);

struct NestedSetTruncation {
  DyadicSchedule schedule;
  int depth = 0;
  IntervalUnion set;
};

// Depth 0 is [0, 1]; depth 1 is [1/2 - 2^-R_1, 1/2 + 2^-R_1]; each later
// depth intersects with the dyadic neighborhood of that level.
NestedSetTruncation nested_set_build(const DyadicSchedule& schedule, int depth);

// 1/2 + sum_n eps_n 2^(-R_n - 2).
Rational t_of_eps(const std::vector<int>& eps, const DyadicSchedule& schedule);

// Dyadic rational as (numerator, exponent): value = numerator / 2^exponent,
// numerator odd unless exponent is 0.
std::pair<BigInt, long> dyadic_pair(const Rational& x);

// Irrational input (a + b sqrt(d)) / e, kept exact enough for continued
// fractions far past any int64 denominator.
Real quadratic_irrational(long a, long b, long d, long e);

struct BadApproxParams {
  Rational c{2, 5};
  Rational tau{1};
  std::int64_t p_max = 1000000;
  // Smallest denominator tested. The class is defined over all p >= 1; 1/1
  // alone rules out everything within c of 0 or 1, so the default skips it.
  std::int64_t p_min = 2;
};

enum class BadApproxStatus { MemberUpToBound, NotMember, UnknownBeyondBound };
std::string_view to_string(BadApproxStatus s);

struct BadApproxResult {
  BadApproxStatus status;
  std::optional<Rational> witness;  // smallest-denominator reduced q/p with |t - q/p| <= c/p^(1+tau)
  std::int64_t checked_up_to = 0;
  std::int64_t candidates_checked = 0;
};

BadApproxResult badly_approx_member(const Real& t, const BadApproxParams& params);
BadApproxResult badly_approx_member(const Rational& t, const BadApproxParams& params);

struct FrakCLevel {
  int n;
  std::int64_t p;
  std::int64_t N;
  Rational kappa;
  bool kappa_valid;
  int R;
  std::vector<std::int64_t> block;
  // inner Behrend modulus >= 2, i.e. N >= 16 p^2
  bool inner_modulus_nontrivial;
  double alpha;  // n / (n + 1)
  bool size_target_holds;  // #block > N^alpha
  // No residue triple of any translate of the block solves t x + (1-t) y = z
  // for t within kappa of some q/p.
  bool parametric_ok;
  // No cross-interval witness at the endpoints and midpoints of the level's components.
  bool spot_ok;
};

struct FrakC {
  NestedSetTruncation set;
  std::vector<FrakCLevel> levels;
};

FrakC build_frakC(int depth, double modulus_budget = 1e9, std::size_t min_block_size = 1);

}  // namespace salem
