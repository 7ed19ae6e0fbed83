#pragma once

#include "salem/behrend.hpp"
#include "salem/linear_forms.hpp"
#include "salem/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace salem {

// Union of the closed intervals [j/M, (j+1)/M] over the residues j.
struct IntervalFamily {
  std::int64_t M = 1;
  std::vector<std::int64_t> residues;  // sorted, distinct, in [0, M)

  RationalInterval interval(std::int64_t j) const { return {Rational(j, M), Rational(j + 1, M)}; }
  friend bool operator==(const IntervalFamily&, const IntervalFamily&) = default;
};

// Residues (Y + ell) mod M.
IntervalFamily lift_translate(const std::vector<std::int64_t>& Y, std::int64_t M, std::int64_t ell);

struct AvoidFormsBlock {  // A * Y with Y avoiding every form of the family
  std::vector<LinearForm> forms;
};
struct NearRationalBlock {  // 2p * Y, avoids t near q/p
  std::int64_t p;
};
struct ProgressionBlock {  // {0, R, ..., (N-1)R}, avoids badly approximable t
  Rational c, tau, eps0;
};
struct CombinedBlock {  // R * Y_N, both of the above
  Rational c, tau, eps0;
  std::int64_t p;
};

using BlockKind = std::variant<AvoidFormsBlock, NearRationalBlock, ProgressionBlock, CombinedBlock>;

struct BlockSpec {
  BlockKind kind;
  std::int64_t M;
};

std::string block_kind_name(const BlockKind& kind);

struct BlockRecord {
  std::string kind;
  std::int64_t M = 0;
  std::int64_t inner_size = 0;  // modulus handed to the Behrend search, or N for progressions
  std::int64_t multiplier = 0;  // the dilation factor applied to the inner set
  std::int64_t coefficient_bound = 0;  // Behrend base multiplier, 0 when unused
  std::vector<std::int64_t> inner_set;
  std::optional<BehrendProvenance> behrend;
  // Forms whose zeros the inner set avoids.
  std::vector<LinearForm> forms;
  // Half-width of the forbidden coefficient intervals around q/p, if any.
  std::optional<Rational> kappa;
  bool kappa_valid = true;
  double size_lower_bound = 0;
  bool size_bound_holds = false;
  bool size_bound_applicable = false;
};

struct Block {
  IntervalFamily family;  // untranslated block
  BlockRecord record;
};

Block build_block(const BlockSpec& spec);

// Forms p z - q x - (p - q) y for 1 <= q < p, reduced and deduplicated.
std::vector<LinearForm> near_rational_forms(std::int64_t p);

inline constexpr double kDefaultWitnessBudget = 1e9;

// Residue tuple (j0; j1..jv), not all equal, for which some x_i in I_{j_i}
// satisfy x0 = sum t_i x_i. Returns the lexicographically smallest one.
std::optional<std::vector<std::int64_t>> cross_interval_witness(const IntervalFamily& F,
                                                                const std::vector<Rational>& t,
                                                                double budget = kDefaultWitnessBudget);

// Set of s in [0, 1] for which s x + (1 - s) y = z has a solution with
// x, y, z in the given intervals of modulus M.
IntervalUnion solvable_t_set(std::int64_t jx, std::int64_t jy, std::int64_t jz);

struct ParametricHit {
  std::int64_t jx, jy, jz;
  std::int64_t q;
};

// First residue triple (not all equal, in lexicographic order on
// (jx, jy, jz)) whose solvable t-set meets an open interval
// (q/p - kappa, q/p + kappa), 1 <= q < p.
std::optional<ParametricHit> parametric_near_rational_hit(const IntervalFamily& F, std::int64_t p,
                                                          const Rational& kappa);

struct TranslateHit {
  std::int64_t ell;
  ParametricHit hit;
};

// parametric_near_rational_hit over every translate (Y + ell) mod M. Only
// translates where some element wraps past M change the residue
// differences, so one representative per wrap class is enough.
std::optional<TranslateHit> parametric_hit_any_translate(const std::vector<std::int64_t>& Y, std::int64_t M,
                                                         std::int64_t p, const Rational& kappa);

}  // namespace salem
