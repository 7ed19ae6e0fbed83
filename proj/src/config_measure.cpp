#include "salem/config_measure.hpp"

#include "salem/error.hpp"
#include "salem/parallel.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

namespace salem {

CoefficientVector CoefficientVector::exact(std::vector<Rational> t) {
  if (t.size() < 2) fail(ErrorCode::TooFewVariables, "need at least two coefficients");
  Rational sum = 0;
  for (const auto& ti : t) {
    if (ti <= 0 || ti >= 1) fail(ErrorCode::InvalidArgument, "coefficients must lie in (0, 1)");
    sum += ti;
  }
  if (sum != 1) fail(ErrorCode::SumMismatch, "coefficients sum to " + salem::to_string(sum));
  CoefficientVector c;
  for (const auto& ti : t) c.values_.push_back(to_double(ti));
  c.exact_ = std::move(t);
  return c;
}

CoefficientVector CoefficientVector::real(std::vector<double> t) {
  if (t.size() < 2) fail(ErrorCode::TooFewVariables, "need at least two coefficients");
  double sum = 0;
  for (double ti : t) {
    if (!(ti > 0 && ti < 1)) fail(ErrorCode::InvalidArgument, "coefficients must lie in (0, 1)");
    sum += ti;
  }
  if (std::abs(sum - 1) > 1e-12) fail(ErrorCode::SumMismatch, "coefficients do not sum to 1");
  CoefficientVector c;
  c.values_ = std::move(t);
  return c;
}

std::string_view to_string(MassMethod m) {
  switch (m) {
    case MassMethod::SpaceExact: return "space-exact";
    case MassMethod::SpaceQuadrature: return "space-quadrature";
    case MassMethod::FourierTruncated: return "fourier-truncated";
  }
  return "?";
}

namespace {

template <class T>
using Point = std::array<T, 2>;

// Keeps the part of a convex polygon with a x + b y >= c.
template <class T>
std::vector<Point<T>> clip(const std::vector<Point<T>>& poly, const T& a, const T& b, const T& c) {
  std::vector<Point<T>> out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % n];
    T dp = a * p[0] + b * p[1] - c;
    T dq = a * q[0] + b * q[1] - c;
    if (dp >= 0) out.push_back(p);
    if ((dp > 0 && dq < 0) || (dp < 0 && dq > 0)) {
      T s = dp / (dp - dq);
      out.push_back({p[0] + (q[0] - p[0]) * s, p[1] + (q[1] - p[1]) * s});
    }
  }
  return out;
}

// Integrals of 1 and of (x - y) over a polygon.
template <class T>
std::pair<T, T> moments(const std::vector<Point<T>>& poly) {
  T area2 = 0, lin6 = 0;
  const std::size_t n = poly.size();
  if (n < 3) return {T(0), T(0)};
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % n];
    T cross = p[0] * q[1] - q[0] * p[1];
    area2 += cross;
    lin6 += (p[0] + q[0] - p[1] - q[1]) * cross;
  }
  return {area2 / 2, lin6 / 6};
}

template <class T>
std::vector<Point<T>> unit_square() {
  return {Point<T>{T(0), T(0)}, Point<T>{T(1), T(0)}, Point<T>{T(1), T(1)}, Point<T>{T(0), T(1)}};
}

enum class Integrand { One, AbsDiff };

template <class T>
struct PairSums {
  T diag = 0, cross = 0;
};

// Integral over the cell [a, a+1] x [b, b+1] (translated to the unit square,
// d = a - b) restricted to t x + (1 - t) y in [lo, lo + 1], optionally to
// |X - Y| >= gap where X - Y = x - y + d.
template <class T>
T cell_integral(const T& t, const T& lo, std::int64_t d, Integrand what, const std::optional<T>& gap) {
  auto poly = clip(unit_square<T>(), t, T(1) - t, lo);
  poly = clip(poly, T(-t), T(t - 1), T(-(lo + 1)));
  if (poly.size() < 3) return T(0);
  const T dd = T(d);
  auto signed_parts = [&](const std::vector<Point<T>>& region) {
    // Pieces with X - Y >= g and Y - X >= g.
    T g = gap ? *gap : T(0);
    auto plus = clip(region, T(1), T(-1), T(g - dd));
    auto minus = clip(region, T(-1), T(1), T(g + dd));
    auto [ap, lp] = moments(plus);
    auto [am, lm] = moments(minus);
    return std::array<T, 4>{ap, lp + dd * ap, am, lm + dd * am};
  };
  if (what == Integrand::One && !gap) return moments(poly).first;
  auto parts = signed_parts(poly);
  if (what == Integrand::One) return parts[0] + parts[2];
  return parts[1] - parts[3];
}

template <class T>
PairSums<T> polygon_sums(const CantorMeasure& mu, const T& t, Integrand what, const std::optional<T>& gap,
                         const std::function<std::pair<std::int64_t, std::int64_t>(std::int64_t, std::int64_t)>& c_range) {
  const auto& A = mu.left;
  std::size_t chunks = chunk_count(A.size());
  std::vector<PairSums<T>> partial(chunks);
  parallel_chunks(A.size(), [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    PairSums<T> acc;
    for (std::size_t ia = begin; ia < end; ++ia) {
      const std::int64_t a = A[ia];
      for (std::size_t ib = 0; ib < A.size(); ++ib) {
        const std::int64_t b = A[ib];
        auto [cmin, cmax] = c_range(a, b);
        auto it = std::lower_bound(A.begin(), A.end(), cmin);
        for (; it != A.end() && *it <= cmax; ++it) {
          const std::int64_t c = *it;
          // t X + (1-t) Y in [c, c+1] with X = a + x, Y = b + y.
          T lo = T(c - b) - t * T(a - b);
          T val = cell_integral<T>(t, lo, a - b, what, gap);
          if (a == b && b == c)
            acc.diag += val;
          else
            acc.cross += val;
        }
      }
    }
    partial[chunk] = acc;
  });
  PairSums<T> total;
  for (const auto& p : partial) {
    total.diag += p.diag;
    total.cross += p.cross;
  }
  return total;
}

std::int64_t floor_rational(const Rational& r) { return floor_to_int64(r); }

MassReport exact_two_variable(const CantorMeasure& mu, const Rational& t, Integrand what,
                              const std::optional<Rational>& gap_units) {
  auto range = [&](std::int64_t a, std::int64_t b) {
    Rational S = Rational(b) + t * Rational(a - b);
    return std::pair<std::int64_t, std::int64_t>{-floor_rational(-(S - 1)), floor_rational(S + 1)};
  };
  auto sums = polygon_sums<Rational>(mu, t, what, gap_units, range);
  const std::int64_t n = static_cast<std::int64_t>(mu.count());
  // h^3 / D^2 with h = D / n; |x - y| contributes one more 1/D.
  Rational scale = what == Integrand::One ? Rational(mu.denominator, n * n * n) : Rational(1, n * n * n);
  MassReport r;
  r.method = MassMethod::SpaceExact;
  r.exact_diagonal = sums.diag * scale;
  r.exact_cross = sums.cross * scale;
  r.exact = *r.exact_diagonal + *r.exact_cross;
  r.value = to_double(*r.exact);
  r.diagonal = to_double(*r.exact_diagonal);
  r.cross = to_double(*r.exact_cross);
  r.error_estimate = 0;
  return r;
}

MassReport real_two_variable(const CantorMeasure& mu, double t, Integrand what, const std::optional<double>& gap_units) {
  auto range = [&](std::int64_t a, std::int64_t b) {
    double S = static_cast<double>(b) + t * static_cast<double>(a - b);
    return std::pair<std::int64_t, std::int64_t>{static_cast<std::int64_t>(std::floor(S - 1)),
                                                 static_cast<std::int64_t>(std::ceil(S + 1))};
  };
  auto sums = polygon_sums<double>(mu, t, what, gap_units, range);
  const double n = static_cast<double>(mu.count());
  double scale = what == Integrand::One ? static_cast<double>(mu.denominator) / (n * n * n) : 1.0 / (n * n * n);
  MassReport r;
  r.method = MassMethod::SpaceExact;
  r.diagonal = sums.diag * scale;
  r.cross = sums.cross * scale;
  r.value = r.diagonal + r.cross;
  r.error_estimate = 1e-13 * std::max(1.0, std::abs(r.value));
  return r;
}

// Integral of |s - m| for s in [l, r].
double abs_linear(double l, double r, double m) {
  auto prim = [m](double s) { return s >= m ? 0.5 * (s - m) * (s - m) : -0.5 * (m - s) * (m - s); };
  return prim(r) - prim(l);
}

struct QuadSums {
  double diag = 0, cross = 0;
};

// Tensor Gauss-Legendre over x_1..x_{v-1} cell by cell, inner variable
// integrated over the exact admissible segments.
QuadSums quadrature_sums(const CantorMeasure& mu, const std::vector<double>& t, const TestFunctional& f, int q) {
  const auto& A = mu.left;
  const std::size_t v = t.size();
  const std::size_t n = A.size();
  const double D = static_cast<double>(mu.denominator);
  const double work = std::pow(static_cast<double>(n) * q, static_cast<double>(v - 1)) * static_cast<double>(n);
  if (work > 5e9) fail(ErrorCode::QuadratureFailure, "quadrature grid too large for this measure");
  const GaussRule rule = gauss_legendre_unit(q);
  const std::size_t outer_dims = v - 1;
  std::size_t outer_cells = 1;
  for (std::size_t i = 0; i < outer_dims; ++i) outer_cells *= n;

  std::size_t chunks = chunk_count(outer_cells);
  std::vector<QuadSums> partial(chunks);
  parallel_chunks(outer_cells, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    QuadSums acc;
    std::vector<std::size_t> cell(outer_dims);
    std::vector<std::size_t> node(outer_dims);
    std::vector<double> x(v);  // in original coordinates
    for (std::size_t ci = begin; ci < end; ++ci) {
      std::size_t rest = ci;
      bool same = true;
      for (std::size_t d = 0; d < outer_dims; ++d) {
        cell[d] = rest % n;
        rest /= n;
        same = same && cell[d] == cell[0];
      }
      std::size_t nodes_total = 1;
      for (std::size_t d = 0; d < outer_dims; ++d) nodes_total *= static_cast<std::size_t>(q);
      for (std::size_t ni = 0; ni < nodes_total; ++ni) {
        std::size_t r2 = ni;
        double w = 1, P = 0;
        for (std::size_t d = 0; d < outer_dims; ++d) {
          node[d] = r2 % static_cast<std::size_t>(q);
          r2 /= static_cast<std::size_t>(q);
          double X = static_cast<double>(A[cell[d]]) + rule.nodes[node[d]];
          w *= rule.weights[node[d]];
          P += t[d] * X;
          x[d] = X / D;
        }
        const double tv = t[v - 1];
        for (std::size_t ib = 0; ib < n; ++ib) {
          const double b = static_cast<double>(A[ib]);
          double zlo = P + tv * b, zhi = P + tv * (b + 1);
          auto it = std::lower_bound(A.begin(), A.end(), static_cast<std::int64_t>(std::floor(zlo - 1)));
          for (; it != A.end() && static_cast<double>(*it) <= zhi; ++it) {
            const double c = static_cast<double>(*it);
            double l = std::max(b, (c - P) / tv), r = std::min(b + 1, (c + 1 - P) / tv);
            if (!(r > l)) continue;
            double inner = 0;
            switch (f.kind) {
              case TestFunctional::Kind::One: inner = r - l; break;
              case TestFunctional::Kind::AbsDiff: {
                if (f.i == v - 1 || f.j == v - 1) {
                  std::size_t other = f.i == v - 1 ? f.j : f.i;
                  inner = other == v - 1 ? 0.0 : abs_linear(l, r, x[other] * D) / D;
                } else {
                  inner = std::abs(x[f.i] - x[f.j]) * (r - l);
                }
                break;
              }
              case TestFunctional::Kind::User:
                for (int k = 0; k < q; ++k) {
                  x[v - 1] = (l + (r - l) * rule.nodes[k]) / D;
                  inner += rule.weights[k] * f.fn(std::span<const double>(x));
                }
                inner *= r - l;
                break;
            }
            bool diag = same && A[cell[0]] == A[ib] && *it == A[ib];
            (diag ? acc.diag : acc.cross) += w * inner;
          }
        }
      }
    }
    partial[chunk] = acc;
  });
  QuadSums total;
  for (const auto& p : partial) {
    total.diag += p.diag;
    total.cross += p.cross;
  }
  // h^(v+1) / D^v with h = D / n.
  double scale = D / std::pow(static_cast<double>(n), static_cast<double>(v + 1));
  total.diag *= scale;
  total.cross *= scale;
  return total;
}

void check_functional(const TestFunctional& f, std::size_t v) {
  if (f.kind == TestFunctional::Kind::AbsDiff && (f.i >= v || f.j >= v))
    fail(ErrorCode::DimensionMismatch, "functional refers to a variable beyond v = " + std::to_string(v));
  if (f.kind == TestFunctional::Kind::User && !f.fn) fail(ErrorCode::InvalidArgument, "user functional is empty");
}

bool is_standard_pair(const TestFunctional& f) {
  return f.kind == TestFunctional::Kind::One ||
         (f.kind == TestFunctional::Kind::AbsDiff && f.i != f.j);
}

}  // namespace

GaussRule gauss_legendre_unit(int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "need at least one Gauss node");
  GaussRule g;
  auto zeros = boost::math::legendre_p_zeros<double>(n);  // non-negative zeros, ascending
  std::vector<double> xs;
  for (auto z : zeros) xs.push_back(z);
  std::vector<double> full;
  for (auto it = xs.rbegin(); it != xs.rend(); ++it)
    if (*it != 0) full.push_back(-*it);
  for (auto z : xs) full.push_back(z);
  for (double x : full) {
    double dp = boost::math::legendre_p_prime(n, x);
    double w = 2.0 / ((1 - x * x) * dp * dp);
    g.nodes.push_back(0.5 * (x + 1));
    g.weights.push_back(0.5 * w);
  }
  return g;
}

MassReport lambda_mass_space(const CantorMeasure& mu, const CoefficientVector& t, const TestFunctional& f,
                             int quad_points) {
  const std::size_t v = t.v();
  check_functional(f, v);
  if (v == 2 && is_standard_pair(f)) {
    Integrand what = f.kind == TestFunctional::Kind::One ? Integrand::One : Integrand::AbsDiff;
    if (t.is_exact()) return exact_two_variable(mu, (*t.exact_values())[0], what, std::nullopt);
    return real_two_variable(mu, t.values()[0], what, std::nullopt);
  }
  auto coarse = quadrature_sums(mu, t.values(), f, quad_points);
  auto fine = quadrature_sums(mu, t.values(), f, 2 * quad_points);
  MassReport r;
  r.method = MassMethod::SpaceQuadrature;
  r.diagonal = fine.diag;
  r.cross = fine.cross;
  r.value = fine.diag + fine.cross;
  r.error_estimate = std::abs(r.value - (coarse.diag + coarse.cross)) + 1e-14;
  if (!std::isfinite(r.value)) fail(ErrorCode::QuadratureFailure, "non-finite quadrature result");
  return r;
}

MassReport off_diagonal_mass(const CantorMeasure& mu, const CoefficientVector& t, const Rational& gap) {
  if (t.v() != 2) fail(ErrorCode::DimensionMismatch, "off-diagonal mass is computed for v = 2");
  if (gap < 0) fail(ErrorCode::InvalidArgument, "gap must be non-negative");
  Rational gap_units = gap * Rational(mu.denominator);
  if (t.is_exact()) return exact_two_variable(mu, (*t.exact_values())[0], Integrand::One, gap_units);
  return real_two_variable(mu, t.values()[0], Integrand::One, to_double(gap_units));
}

double fourier_tail_bound(const CantorMeasure& mu, const CoefficientVector& t, std::int64_t K) {
  // Each factor is bounded by D / (pi |s xi|); integrate the product beyond K
  // on both sides.
  const double v = static_cast<double>(t.v());
  const double D = static_cast<double>(mu.denominator);
  double prod_t = 1;
  for (double ti : t.values()) prod_t *= ti;
  return 2 * std::pow(D / std::numbers::pi, v + 1) / prod_t * std::pow(static_cast<double>(K), -v) / v;
}

std::int64_t auto_truncation(const CantorMeasure& mu, const CoefficientVector& t, double tol) {
  const double v = static_cast<double>(t.v());
  const double D = static_cast<double>(mu.denominator);
  double prod_t = 1;
  for (double ti : t.values()) prod_t *= ti;
  double K = std::pow(2 * std::pow(D / std::numbers::pi, v + 1) / (prod_t * v * tol), 1.0 / v);
  return std::max(mu.denominator, static_cast<std::int64_t>(std::ceil(K)));
}

MassReport lambda_mass_fourier(const CantorMeasure& mu, const CoefficientVector& t, std::int64_t K) {
  if (K < mu.denominator)
    fail(ErrorCode::BadTruncation, "K = " + std::to_string(K) + " is below the inverse interval width " +
                                       std::to_string(mu.denominator));
  constexpr double pi = std::numbers::pi;
  const double D = static_cast<double>(mu.denominator);
  const double w = mu.weight();
  // The integrand is the transform of the density of x_0 - sum t_i x_i,
  // supported in [-1, 1]; a trapezoid step below 1 is exact up to truncation
  // (Poisson summation). 1/4 keeps a margin.
  const double h = 0.25;
  const std::int64_t steps = 4 * K;

  std::vector<double> scales{1.0};
  for (double ti : t.values()) scales.push_back(-ti);

  struct Factor {
    double s;
    std::vector<std::complex<double>> z, step;
    std::vector<long double> freq;
  };
  std::vector<Factor> factors;
  for (double s : scales) {
    Factor fac{s, {}, {}, {}};
    for (auto a : mu.left) {
      long double f = static_cast<long double>(s) * static_cast<long double>(a) / static_cast<long double>(D);
      fac.freq.push_back(f);
      long double ang = -2 * std::numbers::pi_v<long double> * f * h;
      fac.step.emplace_back(static_cast<double>(std::cos(ang)), static_cast<double>(std::sin(ang)));
    }
    fac.z.assign(mu.left.size(), {1.0, 0.0});
    factors.push_back(std::move(fac));
  }

  auto phi = [&](double u) -> std::complex<double> {
    if (u == 0) return {1.0, 0.0};
    double mag = std::sin(pi * u) / (pi * u);
    return {mag * std::cos(pi * u), -mag * std::sin(pi * u)};
  };

  double acc = 0, comp = 0;
  for (std::int64_t nidx = 0; nidx <= steps; ++nidx) {
    const double xi = static_cast<double>(nidx) * h;
    if (nidx % 256 == 0) {
      for (auto& fac : factors)
        for (std::size_t j = 0; j < fac.z.size(); ++j) {
          long double ang = -2 * std::numbers::pi_v<long double> * fac.freq[j] * static_cast<long double>(nidx) * h;
          ang = std::fmod(ang, 2 * std::numbers::pi_v<long double>);
          fac.z[j] = {static_cast<double>(std::cos(ang)), static_cast<double>(std::sin(ang))};
        }
    }
    std::complex<double> g{1.0, 0.0};
    for (auto& fac : factors) {
      std::complex<double> sum{0.0, 0.0};
      for (auto& z : fac.z) sum += z;
      g *= sum * w * phi(fac.s * xi / D);
    }
    double weight = (nidx == 0) ? h : (nidx == steps ? h : 2 * h);
    double term = weight * g.real();
    double tsum = acc + term;
    comp += std::abs(acc) >= std::abs(term) ? (acc - tsum) + term : (term - tsum) + acc;
    acc = tsum;
    for (auto& fac : factors)
      for (std::size_t j = 0; j < fac.z.size(); ++j) fac.z[j] *= fac.step[j];
  }
  MassReport r;
  r.method = MassMethod::FourierTruncated;
  r.K = K;
  r.value = acc + comp;
  r.error_estimate = fourier_tail_bound(mu, t, K) + 1e-10;
  r.diagonal = std::nan("");
  r.cross = std::nan("");
  return r;
}

double mass_identity_check(const CantorMeasure& mu, int quad_points) {
  const GaussRule rule = gauss_legendre_unit(quad_points);
  double total = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    double s = rule.nodes[i];
    auto r = real_two_variable(mu, s, Integrand::AbsDiff, std::nullopt);
    total += rule.weights[i] * r.value;
  }
  return total;
}

C0Result c0_bound(const CoefficientVector& t, double beta, double C) {
  const double v = static_cast<double>(t.v());
  if (!(beta * (v + 1) > 1))
    fail(ErrorCode::DivergentIntegral, "the integral diverges unless beta (v + 1) > 1");
  if (!(C > 0)) fail(ErrorCode::InvalidArgument, "C must be positive");
  const auto& ts = t.values();
  auto g = [&](double xi) {
    double val = std::pow(1 + xi, -beta);
    for (double ti : ts) val *= std::pow(1 + ti * xi, -beta);
    return val;
  };
  double err_head = 0, err_tail = 0;
  double head = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, 1.0, 15, 1e-14, &err_head);
  // xi = 1/u on [1, inf).
  boost::math::quadrature::tanh_sinh<double> ts_rule;
  auto tail_f = [&](double u) {
    double xi = 1.0 / u;
    return std::isfinite(xi) ? g(xi) * xi * xi : 0.0;
  };
  double l1 = 0;
  double tail = ts_rule.integrate(tail_f, 0.0, 1.0, 1e-13, &err_tail, &l1);
  double scale = 2 * std::pow(C, v);
  return {scale * (head + tail), scale * (err_head * std::abs(head) + err_tail * std::abs(tail))};
}

std::vector<ProfileRow> F_profile(const CantorMeasure& mu, std::size_t v, const std::vector<std::vector<Rational>>& grid) {
  std::vector<ProfileRow> rows;
  for (const auto& point : grid) {
    if (point.size() != v) fail(ErrorCode::GridOutOfDomain, "grid point has the wrong number of coefficients");
    Rational sum = 0;
    for (const auto& x : point) {
      if (x <= 0 || x >= 1) fail(ErrorCode::GridOutOfDomain, "grid point outside the open simplex");
      sum += x;
    }
    if (sum != 1) fail(ErrorCode::GridOutOfDomain, "grid point coefficients do not sum to 1");
    auto t = CoefficientVector::exact(point);
    ProfileRow row;
    row.t = t.values();
    row.mass = lambda_mass_space(mu, t);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace salem
