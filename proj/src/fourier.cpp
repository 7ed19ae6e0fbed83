#include "salem/fourier.hpp"

#include "salem/error.hpp"
#include "salem/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace salem {

namespace {

// Kahan-Babuska-Neumaier accumulator.
struct Neumaier {
  double sum = 0, comp = 0;
  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

std::int64_t mod(__int128 x, std::int64_t m) {
  auto r = static_cast<std::int64_t>(x % m);
  return r < 0 ? r + m : r;
}

// w * exp(-pi i k/D) * sin(pi k/D)/(pi k/D), the transform of one interval
// of width 1/D and mass w with left endpoint 0.
std::complex<double> interval_factor(std::int64_t k, std::int64_t D, double w) {
  if (k == 0) return {w, 0.0};
  constexpr double pi = std::numbers::pi;
  // Reduce exactly: k = q D + r. sin(pi k/D) = (-1)^q sin(pi r/D).
  std::int64_t r = mod(k, D);
  std::int64_t q = static_cast<std::int64_t>((static_cast<__int128>(k) - r) / D);
  if (r == 0) return {0.0, 0.0};
  double s = std::sin(pi * static_cast<double>(r) / static_cast<double>(D));
  if (q % 2 != 0) s = -s;
  double u = static_cast<double>(k) / static_cast<double>(D);
  double mag = w * s / (pi * u);
  // exp(-pi i k/D) with k reduced modulo 2D.
  std::int64_t r2 = mod(k, 2 * D);
  double angle = -pi * static_cast<double>(r2) / static_cast<double>(D);
  return {mag * std::cos(angle), mag * std::sin(angle)};
}

}  // namespace

std::complex<double> transform_at(const CantorMeasure& mu, std::int64_t k) {
  const std::int64_t D = mu.denominator;
  constexpr double two_pi = 2 * std::numbers::pi;
  Neumaier re, im;
  for (auto a : mu.left) {
    std::int64_t r = mod(static_cast<__int128>(k) * a, D);
    double angle = -two_pi * static_cast<double>(r) / static_cast<double>(D);
    re.add(std::cos(angle));
    im.add(std::sin(angle));
  }
  return std::complex<double>(re.value(), im.value()) * interval_factor(k, D, mu.weight());
}

FourierProfile decay_profile(const CantorMeasure& mu, std::int64_t K) {
  if (K < 16) fail(ErrorCode::InvalidArgument, "decay profile needs K >= 16");
  const std::int64_t D = mu.denominator;
  const double w = mu.weight();
  constexpr double two_pi = 2 * std::numbers::pi;

  // Phase table for exp(-2 pi i r/D) when it is small enough to pay off.
  const bool use_table = D <= (std::int64_t{1} << 21);
  std::vector<double> cos_t, sin_t;
  if (use_table) {
    cos_t.resize(static_cast<std::size_t>(D));
    sin_t.resize(static_cast<std::size_t>(D));
    for (std::int64_t r = 0; r < D; ++r) {
      double angle = -two_pi * static_cast<double>(r) / static_cast<double>(D);
      cos_t[r] = std::cos(angle);
      sin_t[r] = std::sin(angle);
    }
  }

  std::vector<double> mags(static_cast<std::size_t>(K) + 1, 0.0);
  parallel_chunks(static_cast<std::size_t>(K), [&](std::size_t, std::size_t b, std::size_t e) {
    std::int64_t k0 = static_cast<std::int64_t>(b) + 1;
    std::vector<std::int64_t> res(mu.left.size());
    for (std::size_t j = 0; j < res.size(); ++j) res[j] = mod(static_cast<__int128>(k0) * mu.left[j], D);
    for (std::int64_t k = k0; k <= static_cast<std::int64_t>(e); ++k) {
      Neumaier re, im;
      if (use_table) {
        for (auto r : res) {
          re.add(cos_t[r]);
          im.add(sin_t[r]);
        }
      } else {
        for (auto r : res) {
          double angle = -two_pi * static_cast<double>(r) / static_cast<double>(D);
          re.add(std::cos(angle));
          im.add(std::sin(angle));
        }
      }
      auto value = std::complex<double>(re.value(), im.value()) * interval_factor(k, D, w);
      mags[static_cast<std::size_t>(k)] = std::abs(value);
      for (std::size_t j = 0; j < res.size(); ++j) {
        res[j] += mu.left[j];
        if (res[j] >= D) res[j] -= D;
      }
    }
  });

  FourierProfile p;
  p.K = K;
  for (int m = 0; (std::int64_t{1} << m) <= K; ++m) {
    FourierBand band{m, std::int64_t{1} << m, std::min((std::int64_t{1} << (m + 1)) - 1, K), 0.0, std::int64_t{1} << m};
    for (std::int64_t k = band.lo; k <= band.hi; ++k)
      if (mags[k] > band.max) {
        band.max = mags[k];
        band.argmax = k;
      }
    p.bands.push_back(band);
  }
  p.degenerate = std::all_of(p.bands.begin(), p.bands.end(),
                             [](const FourierBand& b) { return b.max < kDegenerateLevel; });
  return p;
}

ExponentFit fit_exponent(const FourierProfile& p, int m_min, int m_max) {
  std::vector<double> xs, ys;
  bool any_zero = false;
  for (const auto& b : p.bands) {
    if (b.m < m_min || (m_max >= 0 && b.m > m_max)) continue;
    if (b.max < kDegenerateLevel) {
      any_zero = true;
      continue;
    }
    xs.push_back(b.m * std::log(2.0));
    ys.push_back(std::log(b.max));
  }
  if (p.degenerate || (xs.empty() && any_zero)) fail(ErrorCode::Degenerate, "profile has numerically zero bands");
  if (xs.size() < 3) fail(ErrorCode::TooFewBands, "need at least 3 usable bands, have " + std::to_string(xs.size()));
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  double mx = sx / n, my = sy / n, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  double slope = sxy / sxx;
  return {-slope, std::exp(my - slope * mx), static_cast<int>(xs.size())};
}

double theoretical_sigma(const Schedule& s) {
  if (s.depth() < 1) fail(ErrorCode::BadSchedule, "sigma needs depth >= 1");
  return s.sigma_report;
}

}  // namespace salem
