#pragma once

#include "salem/interval_sets.hpp"
#include "salem/linear_forms.hpp"
#include "salem/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace salem {

struct ScheduleLevel {
  std::int64_t M;
  std::vector<std::int64_t> block;  // sorted residues in [0, M); L = block.size()
  std::vector<LinearForm> forms;    // forms the block is built to avoid, if any

  std::int64_t L() const { return static_cast<std::int64_t>(block.size()); }
};

enum class ScheduleKind { Uniform, Growing, ScaleAdapted, Stuttered };
std::string_view to_string(ScheduleKind kind);

inline constexpr double kDefaultModulusCap = 1e7;

struct Schedule {
  ScheduleKind kind = ScheduleKind::Uniform;
  std::map<std::string, std::string> params;  // echo of the constructor arguments
  std::vector<ScheduleLevel> levels;          // levels[n-1] describes step n
  double sigma_report = 0;                    // min over prefixes of log(L1..Ln)/log(M1..Mn)

  int depth() const { return static_cast<int>(levels.size()); }
};

// Checks per-level sizes and the modulus-product cap, fills sigma_report.
Schedule finalize_schedule(Schedule s, double modulus_cap = kDefaultModulusCap);

// Same block at every level.
Schedule uniform_schedule(std::int64_t M, std::vector<std::int64_t> block, int depth,
                          double modulus_cap = kDefaultModulusCap);
// Evenly spaced block floor(i M / L), i < L.
Schedule uniform_schedule(std::int64_t M, std::int64_t L, int depth, double modulus_cap = kDefaultModulusCap);
// Uniform with a form-avoiding block at modulus M.
Schedule uniform_avoiding_schedule(std::int64_t M, const std::vector<LinearForm>& forms, int depth,
                                   double modulus_cap = kDefaultModulusCap);
// M_n = N0 + n with form-avoiding blocks.
Schedule growing_schedule(std::int64_t N0, const std::vector<LinearForm>& forms, int depth,
                          double modulus_cap = kDefaultModulusCap);
// Level n avoids every form of enumerate_qn(first_class + n - 1, v_max) at
// the given modulus.
Schedule scale_adapted_schedule(const std::vector<std::int64_t>& moduli, std::int64_t first_class,
                                std::int64_t v_max, double modulus_cap = kDefaultModulusCap);

struct Stage {
  std::int64_t N;
  std::vector<std::int64_t> block;
};

// Repeat counts b_k = floor((k+1) ln N_{k+2} / ln N_k) + 1, exactly. Where
// N_{k+2} is past the end of the list, the last stage stands in.
std::vector<std::int64_t> stutter_counts(const std::vector<std::int64_t>& N);

// Stage k repeated b_k times; depth < 0 keeps every repetition.
Schedule stuttered_schedule(const std::vector<Stage>& stages, int depth = -1,
                            double modulus_cap = kDefaultModulusCap);

struct TreeNode {
  std::vector<std::int64_t> index;  // digits j_1..j_n
  std::int64_t left = 0;            // left endpoint numerator over M_1..M_n
  std::int64_t ell = 0;             // translate of the child block (internal nodes)
  std::vector<std::int64_t> children_digits;  // (block + ell) mod M_{n+1}, sorted
};

struct CantorTree {
  Schedule schedule;
  std::uint64_t seed = 0;
  std::vector<std::vector<TreeNode>> levels;  // levels[n]: nodes of depth n in left-endpoint order

  int depth() const { return schedule.depth(); }
};

// Uniform translate in [0, M) for the node at (level, ordinal).
std::int64_t node_translate(std::uint64_t seed, int level, std::uint64_t ordinal, std::int64_t M);

CantorTree sample_tree(const Schedule& s, std::uint64_t seed);

// Rebuilds a tree from explicit per-node translates (level order, node order).
CantorTree tree_from_translates(const Schedule& s, std::uint64_t seed,
                                const std::vector<std::vector<std::int64_t>>& translates);

// Level-n measure: uniform weight on intervals [a/D, (a+1)/D], D = M_1..M_n.
struct CantorMeasure {
  int level = 0;
  std::int64_t denominator = 1;
  std::vector<std::int64_t> left;  // sorted

  std::size_t count() const { return left.size(); }
  double weight() const { return 1.0 / static_cast<double>(left.size()); }
  Rational exact_weight() const { return Rational(1, static_cast<std::int64_t>(left.size())); }
  // Density height on the support: D / count.
  Rational density() const { return Rational(denominator, static_cast<std::int64_t>(left.size())); }
};

CantorMeasure lebesgue_measure();
CantorMeasure measure_from_family(const IntervalFamily& F);
CantorMeasure level_measure(const CantorTree& tree, int n);

struct TreeWitness {
  int level;                           // depth of the node whose children fail
  std::vector<std::int64_t> node;      // its multi-index
  std::size_t target;                  // position in the target list
  std::vector<std::int64_t> residues;  // (j0; j1..jv) among the node's children
};

// Cross-interval search on every node at depth from_level..n-1 against each
// target coefficient vector.
std::optional<TreeWitness> verify_tree_avoidance(const CantorTree& tree,
                                                 const std::vector<std::vector<Rational>>& targets, int n,
                                                 int from_level = 0, double budget = 1e10);

std::vector<std::vector<Rational>> targets_from_forms(const std::vector<LinearForm>& forms);

}  // namespace salem
