#pragma once

#include "salem/cantor.hpp"
#include "salem/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace salem {

// Positive weights t_1..t_v summing to one; exact when built from rationals.
class CoefficientVector {
 public:
  static CoefficientVector exact(std::vector<Rational> t);
  static CoefficientVector real(std::vector<double> t);

  std::size_t v() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  const std::optional<std::vector<Rational>>& exact_values() const { return exact_; }
  bool is_exact() const { return exact_.has_value(); }

 private:
  std::vector<double> values_;
  std::optional<std::vector<Rational>> exact_;
};

struct TestFunctional {
  enum class Kind { One, AbsDiff, User };
  Kind kind = Kind::One;
  std::size_t i = 0, j = 1;  // AbsDiff: |x_{i+1} - x_{j+1}|
  std::function<double(std::span<const double>)> fn;

  static TestFunctional one() { return {}; }
  static TestFunctional abs_diff(std::size_t i = 0, std::size_t j = 1) { return {Kind::AbsDiff, i, j, {}}; }
  static TestFunctional user(std::function<double(std::span<const double>)> f) {
    return {Kind::User, 0, 1, std::move(f)};
  }
};

enum class MassMethod { SpaceExact, SpaceQuadrature, FourierTruncated };
std::string_view to_string(MassMethod m);

struct MassReport {
  double value = 0;
  std::optional<Rational> exact;
  MassMethod method = MassMethod::SpaceExact;
  double error_estimate = 0;
  std::optional<std::int64_t> K;  // Fourier truncation
  // Contribution of tuples lying in one basic interval, and of all others.
  double diagonal = 0;
  double cross = 0;
  std::optional<Rational> exact_diagonal;
  std::optional<Rational> exact_cross;
};

// <Lambda_t, f> = integral of f(x) mu(sum t_i x_i) prod mu(x_i) dx for the
// piecewise-constant level density mu.
MassReport lambda_mass_space(const CantorMeasure& mu, const CoefficientVector& t,
                             const TestFunctional& f = TestFunctional::one(), int quad_points = 8);

// Same mass restricted to |x_1 - x_2| >= gap (v = 2).
MassReport off_diagonal_mass(const CantorMeasure& mu, const CoefficientVector& t, const Rational& gap);

// Truncation bound for the Fourier-side integral beyond |xi| = K.
double fourier_tail_bound(const CantorMeasure& mu, const CoefficientVector& t, std::int64_t K);
// Smallest power-of-two multiple of the grid scale whose tail bound is below tol.
std::int64_t auto_truncation(const CantorMeasure& mu, const CoefficientVector& t, double tol);

// Integral of mu^(xi) prod mu^(-t_i xi) over |xi| <= K (total mass, f = 1).
MassReport lambda_mass_fourier(const CantorMeasure& mu, const CoefficientVector& t, std::int64_t K);

// Integral over s in [0, 1] of <Lambda_(s, 1-s), |x_1 - x_2|>, by
// Gauss-Legendre in s. Equals 1/3 for every nonatomic probability density.
double mass_identity_check(const CantorMeasure& mu, int quad_points = 256);

struct GaussRule {
  std::vector<double> nodes;    // on [0, 1]
  std::vector<double> weights;  // sum to 1
};
GaussRule gauss_legendre_unit(int n);

struct C0Result {
  double value;
  double error_estimate;
};

// C^v * integral over R of (1+|xi|)^-beta prod (1 + t_i |xi|)^-beta dxi.
C0Result c0_bound(const CoefficientVector& t, double beta, double C = 1.0);

struct ProfileRow {
  std::vector<double> t;
  MassReport mass;
};

// Total mass at each grid point; every point must lie in the open simplex.
std::vector<ProfileRow> F_profile(const CantorMeasure& mu, std::size_t v,
                                  const std::vector<std::vector<Rational>>& grid);

}  // namespace salem
