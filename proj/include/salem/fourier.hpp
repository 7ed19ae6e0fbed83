#pragma once

#include "salem/cantor.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace salem {

// mu^(k) = integral of exp(-2 pi i k x) d mu(x), in closed form per interval.
std::complex<double> transform_at(const CantorMeasure& mu, std::int64_t k);

struct FourierBand {
  int m;
  std::int64_t lo, hi;  // k in [lo, hi]
  double max;
  std::int64_t argmax;
};

struct FourierProfile {
  std::int64_t K = 0;
  std::vector<FourierBand> bands;  // m = 0 .. floor(log2 K)
  bool degenerate = false;         // every band maximum is numerically zero
};

inline constexpr double kDegenerateLevel = 1e-12;

FourierProfile decay_profile(const CantorMeasure& mu, std::int64_t K);

struct ExponentFit {
  double beta;  // minus the slope of log b_m against log 2^m
  double c;     // exp(intercept)
  int bands_used;
};

// Least squares over bands m_min <= m <= m_max (m_max < 0: all bands).
ExponentFit fit_exponent(const FourierProfile& p, int m_min = 4, int m_max = -1);

// Finite-depth surrogate for the liminf of log(L_1..L_n)/log(M_1..M_n).
double theoretical_sigma(const Schedule& s);

}  // namespace salem
