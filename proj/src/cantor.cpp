#include "salem/cantor.hpp"

#include "salem/error.hpp"
#include "salem/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <unordered_map>

namespace salem {

std::string_view to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::Uniform: return "uniform";
    case ScheduleKind::Growing: return "growing";
    case ScheduleKind::ScaleAdapted: return "scale-adapted";
    case ScheduleKind::Stuttered: return "stuttered";
  }
  return "?";
}

Schedule finalize_schedule(Schedule s, double modulus_cap) {
  long double product = 1;
  double log_L = 0, log_M = 0;
  s.sigma_report = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < s.levels.size(); ++n) {
    auto& lvl = s.levels[n];
    if (lvl.M < 2) fail(ErrorCode::BadSchedule, "level " + std::to_string(n + 1) + " has modulus < 2");
    std::sort(lvl.block.begin(), lvl.block.end());
    lvl.block.erase(std::unique(lvl.block.begin(), lvl.block.end()), lvl.block.end());
    if (lvl.block.empty()) fail(ErrorCode::BlockEmpty, "level " + std::to_string(n + 1) + " has an empty block");
    if (lvl.block.front() < 0 || lvl.block.back() >= lvl.M)
      fail(ErrorCode::ResidueOutOfRange, "block residue outside [0, M) at level " + std::to_string(n + 1));
    product *= lvl.M;
    if (product > modulus_cap)
      fail(ErrorCode::CapExceeded, "product of moduli exceeds cap " + std::to_string(modulus_cap));
    log_L += std::log(static_cast<double>(lvl.L()));
    log_M += std::log(static_cast<double>(lvl.M));
    s.sigma_report = std::min(s.sigma_report, log_L / log_M);
  }
  if (product > static_cast<long double>(std::numeric_limits<std::int64_t>::max() / 4))
    fail(ErrorCode::CapExceeded, "product of moduli does not fit the interval arithmetic");
  if (s.levels.empty()) s.sigma_report = 0;
  return s;
}

Schedule uniform_schedule(std::int64_t M, std::vector<std::int64_t> block, int depth, double modulus_cap) {
  if (depth < 0) fail(ErrorCode::BadSchedule, "negative depth");
  if (static_cast<std::int64_t>(block.size()) > M) fail(ErrorCode::BlockEmpty, "block larger than modulus");
  Schedule s;
  s.kind = ScheduleKind::Uniform;
  s.params = {{"M", std::to_string(M)}, {"L", std::to_string(block.size())}};
  s.levels.assign(static_cast<std::size_t>(depth), ScheduleLevel{M, block, {}});
  return finalize_schedule(std::move(s), modulus_cap);
}

Schedule uniform_schedule(std::int64_t M, std::int64_t L, int depth, double modulus_cap) {
  if (L < 1 || L > M) fail(ErrorCode::BlockEmpty, "need 1 <= L <= M, got L = " + std::to_string(L));
  std::vector<std::int64_t> block;
  for (std::int64_t i = 0; i < L; ++i) block.push_back(i * M / L);
  return uniform_schedule(M, std::move(block), depth, modulus_cap);
}

Schedule uniform_avoiding_schedule(std::int64_t M, const std::vector<LinearForm>& forms, int depth,
                                   double modulus_cap) {
  auto block = build_block({AvoidFormsBlock{forms}, M});
  Schedule s;
  s.kind = ScheduleKind::Uniform;
  s.params = {{"M", std::to_string(M)}, {"block", "avoid-forms"}, {"L", std::to_string(block.family.residues.size())}};
  s.levels.assign(static_cast<std::size_t>(depth), ScheduleLevel{M, block.family.residues, forms});
  return finalize_schedule(std::move(s), modulus_cap);
}

Schedule growing_schedule(std::int64_t N0, const std::vector<LinearForm>& forms, int depth, double modulus_cap) {
  Schedule s;
  s.kind = ScheduleKind::Growing;
  s.params = {{"N0", std::to_string(N0)}};
  for (int n = 1; n <= depth; ++n) {
    std::int64_t M = N0 + n;
    auto block = build_block({AvoidFormsBlock{forms}, M});
    s.levels.push_back({M, block.family.residues, forms});
  }
  return finalize_schedule(std::move(s), modulus_cap);
}

Schedule scale_adapted_schedule(const std::vector<std::int64_t>& moduli, std::int64_t first_class,
                                std::int64_t v_max, double modulus_cap) {
  if (first_class < 6) fail(ErrorCode::BadSchedule, "form classes start at N = 6");
  Schedule s;
  s.kind = ScheduleKind::ScaleAdapted;
  s.params = {{"first_class", std::to_string(first_class)}, {"v_max", std::to_string(v_max)}};
  for (std::size_t n = 0; n < moduli.size(); ++n) {
    auto forms = enumerate_qn(first_class + static_cast<std::int64_t>(n), v_max);
    auto block = build_block({AvoidFormsBlock{forms}, moduli[n]});
    s.levels.push_back({moduli[n], block.family.residues, forms});
  }
  return finalize_schedule(std::move(s), modulus_cap);
}

std::vector<std::int64_t> stutter_counts(const std::vector<std::int64_t>& N) {
  std::vector<std::int64_t> b;
  for (std::size_t k = 0; k < N.size(); ++k) {
    if (N[k] < 2) fail(ErrorCode::BadSchedule, "stage moduli must be >= 2");
    std::size_t ahead = std::min(k + 2, N.size() - 1);
    // b_k = max{r : N_k^r <= N_{k+2}^(k+1)} + 1, with 1-based k.
    BigInt target = ipow(BigInt(N[ahead]), static_cast<unsigned>(k + 2));
    BigInt power = 1;
    std::int64_t r = 0;
    while (power * N[k] <= target) {
      power *= N[k];
      ++r;
    }
    b.push_back(r + 1);
  }
  return b;
}

Schedule stuttered_schedule(const std::vector<Stage>& stages, int depth, double modulus_cap) {
  if (stages.empty()) fail(ErrorCode::BadSchedule, "no stages");
  std::vector<std::int64_t> N;
  for (const auto& st : stages) N.push_back(st.N);
  auto b = stutter_counts(N);
  Schedule s;
  s.kind = ScheduleKind::Stuttered;
  std::string counts;
  for (auto x : b) counts += (counts.empty() ? "" : ",") + std::to_string(x);
  s.params = {{"stages", std::to_string(stages.size())}, {"repeats", counts}};
  for (std::size_t k = 0; k < stages.size(); ++k)
    for (std::int64_t r = 0; r < b[k]; ++r) s.levels.push_back({stages[k].N, stages[k].block, {}});
  if (depth >= 0) {
    if (depth > s.depth()) fail(ErrorCode::BadSchedule, "depth exceeds the stuttered schedule length");
    s.levels.resize(static_cast<std::size_t>(depth));
  }
  return finalize_schedule(std::move(s), modulus_cap);
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::int64_t node_translate(std::uint64_t seed, int level, std::uint64_t ordinal, std::int64_t M) {
  std::uint64_t state = seed;
  state = splitmix64(state) ^ (static_cast<std::uint64_t>(level) * 0xd1b54a32d192ed03ULL);
  state = splitmix64(state) ^ (ordinal * 0x8cb92ba72f3d8dd7ULL);
  const std::uint64_t range = static_cast<std::uint64_t>(M);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  while (true) {
    std::uint64_t x = splitmix64(state);
    if (x < limit) return static_cast<std::int64_t>(x % range);
  }
}

namespace {

CantorTree grow(const Schedule& s, std::uint64_t seed,
                const std::function<std::int64_t(int, std::size_t, std::int64_t)>& translate) {
  CantorTree tree{s, seed, {}};
  tree.levels.push_back({TreeNode{{}, 0, 0, {}}});
  for (int n = 0; n < s.depth(); ++n) {
    const auto& lvl = s.levels[n];
    auto& parents = tree.levels[n];
    parallel_chunks(parents.size(), [&](std::size_t, std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        parents[i].ell = translate(n, i, lvl.M);
        parents[i].children_digits = lift_translate(lvl.block, lvl.M, parents[i].ell).residues;
      }
    });
    std::vector<TreeNode> children;
    children.reserve(parents.size() * lvl.block.size());
    for (const auto& p : parents)
      for (auto d : p.children_digits) {
        TreeNode c;
        c.index = p.index;
        c.index.push_back(d);
        c.left = p.left * lvl.M + d;
        children.push_back(std::move(c));
      }
    tree.levels.push_back(std::move(children));
  }
  return tree;
}

}  // namespace

CantorTree sample_tree(const Schedule& s, std::uint64_t seed) {
  return grow(s, seed, [seed](int level, std::size_t ordinal, std::int64_t M) {
    return node_translate(seed, level, ordinal, M);
  });
}

CantorTree tree_from_translates(const Schedule& s, std::uint64_t seed,
                                const std::vector<std::vector<std::int64_t>>& translates) {
  if (static_cast<int>(translates.size()) != s.depth())
    fail(ErrorCode::DimensionMismatch, "need translates for every internal level");
  std::size_t expected = 1;
  for (int n = 0; n < s.depth(); ++n) {
    if (translates[n].size() != expected)
      fail(ErrorCode::DimensionMismatch, "level " + std::to_string(n) + " needs " + std::to_string(expected) +
                                             " translates, got " + std::to_string(translates[n].size()));
    expected *= s.levels[n].block.size();
  }
  return grow(s, seed, [&](int level, std::size_t ordinal, std::int64_t M) {
    std::int64_t ell = translates[level][ordinal];
    if (ell < 0 || ell >= M) fail(ErrorCode::ResidueOutOfRange, "translate outside [0, M)");
    return ell;
  });
}

CantorMeasure lebesgue_measure() { return {0, 1, {0}}; }

CantorMeasure measure_from_family(const IntervalFamily& F) {
  if (F.residues.empty()) fail(ErrorCode::BlockEmpty, "empty family carries no measure");
  return {1, F.M, F.residues};
}

CantorMeasure level_measure(const CantorTree& tree, int n) {
  if (n < 0 || n > tree.depth())
    fail(ErrorCode::DepthExceeded, "level " + std::to_string(n) + " beyond depth " + std::to_string(tree.depth()));
  CantorMeasure m;
  m.level = n;
  m.denominator = 1;
  for (int i = 0; i < n; ++i) m.denominator *= tree.schedule.levels[i].M;
  m.left.reserve(tree.levels[n].size());
  for (const auto& node : tree.levels[n]) m.left.push_back(node.left);
  return m;
}

std::vector<std::vector<Rational>> targets_from_forms(const std::vector<LinearForm>& forms) {
  std::vector<std::vector<Rational>> out;
  for (const auto& f : forms) out.push_back(f.convex_weights());
  return out;
}

std::optional<TreeWitness> verify_tree_avoidance(const CantorTree& tree,
                                                 const std::vector<std::vector<Rational>>& targets, int n,
                                                 int from_level, double budget) {
  if (n < 0 || n > tree.depth())
    fail(ErrorCode::DepthExceeded, "level " + std::to_string(n) + " beyond depth " + std::to_string(tree.depth()));
  double work = 0;
  for (int m = std::max(0, from_level); m < n; ++m)
    for (const auto& t : targets)
      work += static_cast<double>(tree.levels[m].size()) *
              std::pow(static_cast<double>(tree.schedule.levels[m].block.size()), static_cast<double>(t.size()));
  if (work > budget) fail(ErrorCode::BudgetExceeded, "tree verification exceeds budget");

  for (int m = std::max(0, from_level); m < n; ++m) {
    const auto& nodes = tree.levels[m];
    const std::int64_t M = tree.schedule.levels[m].M;
    // Children of a node are a translate of the level block, so the answer
    // depends only on the translate.
    for (std::size_t ti = 0; ti < targets.size(); ++ti) {
      std::unordered_map<std::int64_t, std::optional<std::vector<std::int64_t>>> by_translate;
      for (const auto& node : nodes) {
        auto it = by_translate.find(node.ell);
        if (it == by_translate.end())
          it = by_translate.emplace(node.ell, cross_interval_witness({M, node.children_digits}, targets[ti])).first;
        if (it->second) return TreeWitness{m, node.index, ti, *it->second};
      }
    }
  }
  return std::nullopt;
}

}  // namespace salem
