#include "salem/behrend.hpp"

#include "salem/error.hpp"
#include "salem/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace salem {

namespace {

// Calls visit(norm, value) for every digit vector in [0, d)^n, with value
// read in the given base (least significant digit first).
template <class Visit>
void for_each_digit_vector(int d, int n, std::int64_t base, Visit&& visit) {
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  std::vector<std::int64_t> place(static_cast<std::size_t>(n), 1);
  for (int j = 1; j < n; ++j) place[j] = place[j - 1] * base;
  std::int64_t norm = 0, value = 0;
  while (true) {
    visit(norm, value);
    int j = 0;
    while (j < n && digits[j] == d - 1) {
      norm -= static_cast<std::int64_t>(digits[j]) * digits[j];
      value -= digits[j] * place[j];
      digits[j] = 0;
      ++j;
    }
    if (j == n) return;
    norm += 2 * digits[j] + 1;
    value += place[j];
    ++digits[j];
  }
}

void check_params(int d, int n, int A) {
  if (d < 1 || n < 1) fail(ErrorCode::InvalidArgument, "digit cap and digit count must be >= 1");
  if (A < 2) fail(ErrorCode::InvalidArgument, "base multiplier A must be >= 2");
}

// (A d)^n <= N without overflow.
bool base_power_fits(std::int64_t base, int n, std::int64_t N) {
  __int128 acc = 1;
  for (int i = 0; i < n; ++i) {
    acc *= base;
    if (acc > N) return false;
  }
  return true;
}

}  // namespace

std::vector<std::int64_t> sphere_set(int d, int n, int A, std::int64_t k) {
  check_params(d, n, A);
  std::vector<std::int64_t> out;
  if (k < 0 || k > static_cast<std::int64_t>(n) * (d - 1) * (d - 1)) return out;
  for_each_digit_vector(d, n, static_cast<std::int64_t>(A) * d, [&](std::int64_t norm, std::int64_t value) {
    if (norm == k) out.push_back(value);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::int64_t> sphere_histogram(int d, int n) {
  check_params(d, n, 2);
  std::vector<std::int64_t> hist(static_cast<std::size_t>(n) * (d - 1) * (d - 1) + 1, 0);
  for_each_digit_vector(d, n, d, [&](std::int64_t norm, std::int64_t) { ++hist[norm]; });
  return hist;
}

SphereChoice best_sphere(int d, int n, int A) {
  auto hist = sphere_histogram(d, n);
  auto best = std::max_element(hist.begin(), hist.end());  // first maximum = smallest k
  std::int64_t k0 = best - hist.begin();
  return {k0, sphere_set(d, n, A, k0)};
}

AvoidingSet behrend_set(std::int64_t N, int A, BehrendMode mode) {
  if (N < 2) fail(ErrorCode::InvalidArgument, "behrend_set needs N >= 2");
  if (A < 2) fail(ErrorCode::InvalidArgument, "base multiplier A must be >= 2");

  int best_d = 0, best_n = 0;
  SphereChoice best{0, {}};
  if (mode == BehrendMode::FixedParams) {
    int n = static_cast<int>(std::floor(std::sqrt(std::log(static_cast<double>(N)))));
    int d = 0;
    if (n >= 1)
      while (base_power_fits(static_cast<std::int64_t>(A) * (d + 1), n, N)) ++d;
    if (d < 1)
      fail(ErrorCode::NoValidDigitCap, "no digit cap d >= 1 with (A d)^n <= N for N = " + std::to_string(N));
    best_d = d;
    best_n = n;
    best = best_sphere(d, n, A);
  } else {
    for (int n = 1; base_power_fits(A, n, N); ++n) {
      for (int d = 1; base_power_fits(static_cast<std::int64_t>(A) * d, n, N); ++d) {
        // One digit: every sphere is a singleton, so larger d never helps.
        if (n == 1 && d > 1) break;
        auto choice = best_sphere(d, n, A);
        if (choice.elements.size() > best.elements.size()) {
          best = std::move(choice);
          best_d = d;
          best_n = n;
        }
      }
    }
    if (best.elements.empty()) {
      // A > N: no pair fits; {0} is the one-digit sphere and trivially avoids.
      best = {0, {0}};
      best_d = 1;
      best_n = 1;
    }
  }

  double lnN = std::log(static_cast<double>(N));
  double bound = static_cast<double>(N) * std::exp(-(A + 4) * std::sqrt(lnN));
  BehrendProvenance prov{N,
                         A,
                         mode,
                         best_d,
                         best_n,
                         best.k0,
                         static_cast<std::int64_t>(A) * best_d,
                         bound,
                         static_cast<double>(best.elements.size()) >= bound,
                         mode == BehrendMode::FixedParams};
  return {std::move(best.elements), prov};
}

namespace {

// Smallest non-constant zero of f with x0 at indices [begin, end) of Y.
std::optional<std::vector<std::int64_t>> search_form(const std::vector<std::int64_t>& Y, const LinearForm& f,
                                                     std::size_t begin, std::size_t end) {
  const std::size_t v = f.v();
  const auto& m = f.m();
  std::vector<std::size_t> idx(v, 0);  // indices of x1 .. x_{v-1}; idx[0] is x0
  std::vector<std::int64_t> tuple(v + 1);
  for (std::size_t i0 = begin; i0 < end; ++i0) {
    idx.assign(v, 0);
    idx[0] = i0;
    while (true) {
      __int128 rhs = static_cast<__int128>(f.m0()) * Y[idx[0]];
      for (std::size_t i = 1; i < v; ++i) rhs -= static_cast<__int128>(m[i - 1]) * Y[idx[i]];
      if (rhs >= 0 && rhs % m[v - 1] == 0) {
        __int128 last = rhs / m[v - 1];
        if (last <= std::numeric_limits<std::int64_t>::max() &&
            std::binary_search(Y.begin(), Y.end(), static_cast<std::int64_t>(last))) {
          for (std::size_t i = 0; i < v; ++i) tuple[i] = Y[idx[i]];
          tuple[v] = static_cast<std::int64_t>(last);
          bool all_equal = std::all_of(tuple.begin(), tuple.end(), [&](std::int64_t x) { return x == tuple[0]; });
          if (!all_equal) return tuple;
        }
      }
      std::size_t j = v - 1;
      while (j >= 1 && idx[j] + 1 == Y.size()) idx[j--] = 0;
      if (j == 0) break;
      ++idx[j];
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<AvoidanceWitness> verify_avoidance(const std::vector<std::int64_t>& Y_in,
                                                 const std::vector<LinearForm>& family, double tuple_budget) {
  std::vector<std::int64_t> Y = Y_in;
  std::sort(Y.begin(), Y.end());
  Y.erase(std::unique(Y.begin(), Y.end()), Y.end());
  if (Y.empty()) return std::nullopt;
  for (const auto& f : family) {
    double tuples = std::pow(static_cast<double>(Y.size()), static_cast<double>(f.v() + 1));
    if (tuples > tuple_budget)
      fail(ErrorCode::BudgetExceeded, "avoidance search over " + std::to_string(tuples) + " tuples exceeds budget");
  }
  for (const auto& f : family) {
    std::size_t chunks = chunk_count(Y.size());
    std::vector<std::optional<std::vector<std::int64_t>>> found(chunks);
    parallel_chunks(Y.size(), [&](std::size_t c, std::size_t b, std::size_t e) {
      found[c] = search_form(Y, f, b, e);
    });
    for (auto& w : found)
      if (w) return AvoidanceWitness{f, std::move(*w)};
  }
  return std::nullopt;
}

}  // namespace salem
