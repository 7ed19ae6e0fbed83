#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library routine it is used to check.

#include "salem/cantor.hpp"
#include "salem/rational.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <optional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using salem::CantorMeasure;
using salem::Rational;

// Adaptive Gauss-Kronrod of the density against exp(-2 pi i k x), one
// interval at a time.
inline std::complex<double> transform(const CantorMeasure& mu, std::int64_t k) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double h = static_cast<double>(mu.denominator) / static_cast<double>(mu.count());
  const double w = 1.0 / static_cast<double>(mu.denominator);
  const double kk = static_cast<double>(k);
  double re = 0, im = 0;
  for (auto a : mu.left) {
    double lo = static_cast<double>(a) * w, hi = lo + w;
    re += GK::integrate([&](double x) { return h * std::cos(2 * std::numbers::pi * kk * x); }, lo, hi, 8, 1e-14);
    im -= GK::integrate([&](double x) { return h * std::sin(2 * std::numbers::pi * kk * x); }, lo, hi, 8, 1e-14);
  }
  return {re, im};
}

inline double sample(const CantorMeasure& mu, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, mu.count() - 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return (static_cast<double>(mu.left[pick(rng)]) + u(rng)) / static_cast<double>(mu.denominator);
}

// Probability that Z lies between X and Y for i.i.d. draws from mu. The
// integral over s of the |x1 - x2| configuration mass equals this.
inline double between_probability(const CantorMeasure& mu, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    double x = sample(mu, rng), y = sample(mu, rng), z = sample(mu, rng);
    if (std::min(x, y) <= z && z <= std::max(x, y)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

inline double density(const CantorMeasure& mu, double x) {
  if (x < 0 || x > 1) return 0;
  auto cell = static_cast<std::int64_t>(std::floor(x * static_cast<double>(mu.denominator)));
  bool in = std::binary_search(mu.left.begin(), mu.left.end(), cell);
  return in ? static_cast<double>(mu.denominator) / static_cast<double>(mu.count()) : 0.0;
}

// Midpoint rule for the v = 2 mass on an n x n grid inside each cell pair.
inline double mass_v2_grid(const CantorMeasure& mu, double t, int n) {
  const double w = 1.0 / static_cast<double>(mu.denominator);
  const double h = w / n;
  const double dens = static_cast<double>(mu.denominator) / static_cast<double>(mu.count());
  double total = 0;
  for (auto a : mu.left)
    for (auto b : mu.left)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double x = static_cast<double>(a) * w + (i + 0.5) * h;
          double y = static_cast<double>(b) * w + (j + 0.5) * h;
          total += density(mu, t * x + (1 - t) * y) * dens * dens * h * h;
        }
  return total;
}

// Closed-interval reachability: sum_i t_i x_i with x_i in [a_i/M, (a_i+1)/M]
// spans [s/M, (s+1)/M] for s = sum t_i a_i, which meets [c/M, (c+1)/M] iff
// |s - c| <= 1.
inline bool cells_reach(const std::vector<Rational>& t, const std::vector<std::int64_t>& a, std::int64_t c) {
  Rational s = 0;
  for (std::size_t i = 0; i < t.size(); ++i) s += t[i] * a[i];
  Rational d = s - c;
  return -1 <= d && d <= 1;
}

// Lexicographically smallest (c; a_1..a_v), not all equal, over the residues.
inline std::optional<std::vector<std::int64_t>> cross_witness(const std::vector<std::int64_t>& residues,
                                                              const std::vector<Rational>& t) {
  const std::size_t v = t.size();
  std::vector<std::size_t> idx(v + 1, 0);
  const std::size_t n = residues.size();
  if (n == 0) return std::nullopt;
  while (true) {
    std::vector<std::int64_t> tuple(v + 1);
    for (std::size_t i = 0; i <= v; ++i) tuple[i] = residues[idx[i]];
    bool all_equal = std::all_of(tuple.begin(), tuple.end(), [&](auto x) { return x == tuple[0]; });
    std::vector<std::int64_t> a(tuple.begin() + 1, tuple.end());
    if (!all_equal && cells_reach(t, a, tuple[0])) return tuple;
    std::size_t pos = v + 1;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < n) break;
      idx[pos] = 0;
      if (pos == 0) return std::nullopt;
    }
  }
}

// 2 C^v * integral over [0, inf) of (1+x)^-beta prod (1+t_i x)^-beta: Simpson
// on [0, 1] and in log scale on [1, X], plus the leading tail term past X.
inline double c0(const std::vector<double>& t, double beta, double C) {
  auto f = [&](double x) {
    double v = std::pow(1 + x, -beta);
    for (double ti : t) v *= std::pow(1 + ti * x, -beta);
    return v;
  };
  auto simpson = [](auto&& g, double a, double b, int n) {
    double h = (b - a) / n, s = g(a) + g(b);
    for (int i = 1; i < n; ++i) s += g(a + i * h) * (i % 2 ? 4 : 2);
    return s * h / 3;
  };
  const double X = 1e9;
  double head = simpson(f, 0.0, 1.0, 20000);
  double mid = simpson([&](double s) { double x = std::exp(s); return x * f(x); }, 0.0, std::log(X), 400000);
  double p = beta * (t.size() + 1);
  double lead = 1;
  for (double ti : t) lead *= std::pow(ti, -beta);
  // (1+x)^-b prod (1+t_i x)^-b = lead x^-p (1 - b (1 + sum 1/t_i)/x + ...)
  double s1 = 1;
  for (double ti : t) s1 += 1 / ti;
  double tail = lead * (std::pow(X, 1 - p) / (p - 1) - beta * s1 * std::pow(X, -p) / p);
  return 2 * std::pow(C, static_cast<double>(t.size())) * (head + mid + tail);
}

// Smallest p in [p_min, p_max] with |t - q/p| <= c / p^2 for some q, by
// checking the two nearest numerators (reduced only). Long double arithmetic.
inline std::int64_t first_close_denominator(long double t, long double c, std::int64_t p_min, std::int64_t p_max) {
  for (std::int64_t p = p_min; p <= p_max; ++p) {
    long double P = static_cast<long double>(p);
    long double base = std::floor(t * P);
    for (long double q : {base, base + 1}) {
      if (std::gcd(static_cast<std::int64_t>(q), p) != 1) continue;
      if (std::fabs(t - q / P) <= c / (P * P)) return p;
    }
  }
  return -1;
}

}  // namespace oracle
