#include "salem/interval_sets.hpp"

#include "salem/error.hpp"
#include "salem/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace salem {

IntervalFamily lift_translate(const std::vector<std::int64_t>& Y, std::int64_t M, std::int64_t ell) {
  if (M < 1) fail(ErrorCode::InvalidArgument, "modulus must be positive");
  IntervalFamily F{M, {}};
  F.residues.reserve(Y.size());
  std::int64_t shift = ((ell % M) + M) % M;
  for (auto y : Y) {
    if (y < 0 || y >= M)
      fail(ErrorCode::ResidueOutOfRange, "residue " + std::to_string(y) + " outside [0, " + std::to_string(M) + ")");
    F.residues.push_back((y + shift) % M);
  }
  std::sort(F.residues.begin(), F.residues.end());
  F.residues.erase(std::unique(F.residues.begin(), F.residues.end()), F.residues.end());
  return F;
}

std::string block_kind_name(const BlockKind& kind) {
  struct {
    std::string operator()(const AvoidFormsBlock&) const { return "avoid-forms"; }
    std::string operator()(const NearRationalBlock&) const { return "near-rational"; }
    std::string operator()(const ProgressionBlock&) const { return "progression"; }
    std::string operator()(const CombinedBlock&) const { return "combined"; }
  } visitor;
  return std::visit(visitor, kind);
}

std::vector<LinearForm> near_rational_forms(std::int64_t p) {
  if (p < 2) fail(ErrorCode::InvalidArgument, "p must be >= 2");
  std::set<LinearForm> forms;
  for (std::int64_t q = 1; q < p; ++q) {
    std::int64_t g = std::gcd(p, q);
    forms.insert(LinearForm::make(p / g, {q / g, (p - q) / g}));
  }
  return {forms.begin(), forms.end()};
}

namespace {

void check_tau_c_eps(const Rational& c, const Rational& tau, const Rational& eps0) {
  if (c <= 0 || c > 1) fail(ErrorCode::InvalidArgument, "c must lie in (0, 1]");
  if (tau <= 0 || tau > 1) fail(ErrorCode::InvalidArgument, "tau must lie in (0, 1]");
  if (eps0 <= 0 || eps0 >= Rational(1, 2)) fail(ErrorCode::InvalidArgument, "eps0 must lie in (0, 1/2)");
}

unsigned to_unsigned(const BigInt& x) { return x.convert_to<unsigned>(); }

// floor(x^(1/(1+tau))) for rational tau = a/b.
std::int64_t floor_root_one_plus_tau(const Rational& x, const Rational& tau) {
  unsigned a = to_unsigned(numerator(tau)), b = to_unsigned(denominator(tau));
  return floor_rational_power(x, b, a + b).convert_to<std::int64_t>();
}

// floor(scale * N^tau) for rational tau = a/b and scale > 0.
std::int64_t floor_scaled_power(const Rational& scale, std::int64_t N, const Rational& tau) {
  unsigned a = to_unsigned(numerator(tau)), b = to_unsigned(denominator(tau));
  Rational inside = Rational(ipow(BigInt(N), a)) * ipow(scale, b);
  return floor_rational_power(inside, 1, b).convert_to<std::int64_t>();
}

std::vector<std::int64_t> dilate(const std::vector<std::int64_t>& Y, std::int64_t factor) {
  std::vector<std::int64_t> out;
  out.reserve(Y.size());
  for (auto y : Y) out.push_back(y * factor);
  return out;
}

IntervalFamily to_family(const std::vector<std::int64_t>& residues, std::int64_t M) {
  if (residues.empty()) fail(ErrorCode::ParametersTooSmall, "block came out empty");
  for (auto r : residues)
    if (r >= M)
      fail(ErrorCode::ParametersTooSmall,
           "block element " + std::to_string(r) + " does not fit below M = " + std::to_string(M));
  return lift_translate(residues, M, 0);
}

double ln(double x) { return std::log(x); }

}  // namespace

Block build_block(const BlockSpec& spec) {
  const std::int64_t M = spec.M;
  if (M < 2) fail(ErrorCode::InvalidArgument, "block modulus must be >= 2");
  BlockRecord rec;
  rec.kind = block_kind_name(spec.kind);
  rec.M = M;
  const double Md = static_cast<double>(M);
  std::vector<std::int64_t> residues;

  if (auto* um = std::get_if<AvoidFormsBlock>(&spec.kind)) {
    std::int64_t A = coefficient_bound(um->forms);
    std::int64_t inner = M / ((A + 1) * (A + 1)) + 1;
    auto Y = inner >= 2 ? behrend_set(inner, static_cast<int>(A)) : AvoidingSet{{0}, {}};
    rec.inner_size = inner;
    rec.multiplier = A;
    rec.coefficient_bound = A;
    rec.inner_set = Y.elements;
    if (inner >= 2) rec.behrend = Y.provenance;
    rec.forms = um->forms;
    residues = dilate(Y.elements, A);
    rec.size_lower_bound = Md * std::exp(-(3.0 * A + 4) * std::sqrt(ln(Md)));
    rec.size_bound_applicable = false;
  } else if (auto* vm = std::get_if<NearRationalBlock>(&spec.kind)) {
    const std::int64_t p = vm->p;
    rec.forms = near_rational_forms(p);
    std::int64_t A = 2 * p + 1;
    std::int64_t inner = M / (16 * p * p) + 1;
    auto Y = inner >= 2 ? behrend_set(inner, static_cast<int>(A)) : AvoidingSet{{0}, {}};
    rec.inner_size = inner;
    rec.multiplier = 2 * p;
    rec.coefficient_bound = A;
    rec.inner_set = Y.elements;
    if (inner >= 2) rec.behrend = Y.provenance;
    residues = dilate(Y.elements, 2 * p);
    rec.kappa = Rational(p, M);
    rec.kappa_valid = *rec.kappa <= Rational(1, 2 * p);
    rec.size_lower_bound = Md * std::exp(-(5.0 * p + 4) * std::sqrt(ln(Md)));
    rec.size_bound_applicable = false;
  } else if (auto* wm = std::get_if<ProgressionBlock>(&spec.kind)) {
    check_tau_c_eps(wm->c, wm->tau, wm->eps0);
    std::int64_t N = floor_root_one_plus_tau(wm->c * wm->eps0 * Rational(M) / 10, wm->tau);
    if (N < 1) fail(ErrorCode::ParametersTooSmall, "progression length N < 1; increase M");
    std::int64_t R = floor_scaled_power(1 / wm->c, N, wm->tau) + 1;
    rec.inner_size = N;
    rec.multiplier = R;
    for (std::int64_t i = 0; i < N; ++i) residues.push_back(i * R);
    rec.inner_set.resize(static_cast<std::size_t>(N));
    std::iota(rec.inner_set.begin(), rec.inner_set.end(), std::int64_t{0});
    double base = to_double(wm->c * wm->eps0) * Md / 20;
    rec.size_lower_bound = std::pow(base, 1.0 / (1.0 + to_double(wm->tau)));
    rec.size_bound_applicable = true;
  } else {
    const auto& zm = std::get<CombinedBlock>(spec.kind);
    check_tau_c_eps(zm.c, zm.tau, zm.eps0);
    const std::int64_t p = zm.p;
    rec.forms = near_rational_forms(p);
    std::int64_t N = floor_root_one_plus_tau(zm.c * zm.eps0 * Rational(M) / (4 * p), zm.tau);
    if (N < 1) fail(ErrorCode::ParametersTooSmall, "inner modulus N < 1; increase M");
    std::int64_t R = floor_scaled_power(Rational(2 * p) / zm.c, N, zm.tau) + 1;
    std::int64_t A = 2 * p + 1;
    auto Y = N >= 2 ? behrend_set(N, static_cast<int>(A)) : AvoidingSet{{0}, {}};
    rec.inner_size = N;
    rec.multiplier = R;
    rec.coefficient_bound = A;
    rec.inner_set = Y.elements;
    if (N >= 2) rec.behrend = Y.provenance;
    residues = dilate(Y.elements, R);
    rec.kappa = Rational(1, 2 * p * M);
    rec.kappa_valid = true;
    double t = to_double(zm.tau);
    rec.size_lower_bound = std::pow(Md, 1.0 / (1.0 + t)) *
                           std::exp(std::log(to_double(zm.c * zm.eps0) / (6.0 * p)) / (1.0 + t) -
                                    (2.0 * p + 5) * std::sqrt(ln(Md)));
    rec.size_bound_applicable = false;
  }

  Block block{to_family(residues, M), std::move(rec)};
  block.record.size_bound_holds = static_cast<double>(block.family.residues.size()) > block.record.size_lower_bound;
  return block;
}

namespace {

struct ScaledWeights {
  std::vector<__int128> n;  // t_i = n_i / den
  __int128 den;
};

ScaledWeights scale_weights(const std::vector<Rational>& t) {
  BigInt den = 1;
  for (const auto& ti : t) den = boost::multiprecision::lcm(den, BigInt(denominator(ti)));
  if (den > BigInt(1) << 60) fail(ErrorCode::InvalidArgument, "coefficient denominators too large");
  ScaledWeights w{{}, static_cast<__int128>(den.convert_to<std::int64_t>())};
  for (const auto& ti : t) {
    BigInt ni = numerator(ti) * (den / denominator(ti));
    w.n.push_back(static_cast<__int128>(ni.convert_to<std::int64_t>()));
  }
  return w;
}

bool lex_less(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

std::optional<std::vector<std::int64_t>> cross_interval_witness(const IntervalFamily& F,
                                                                const std::vector<Rational>& t, double budget) {
  if (t.size() < 2) fail(ErrorCode::TooFewVariables, "need at least two coefficients");
  Rational sum = 0;
  for (const auto& ti : t) {
    if (ti <= 0) fail(ErrorCode::InvalidArgument, "coefficients must be positive");
    sum += ti;
  }
  if (sum != 1) fail(ErrorCode::SumMismatch, "coefficients must sum to 1");
  const auto& J = F.residues;
  const std::size_t s = J.size(), v = t.size();
  if (s < 2) return std::nullopt;
  if (std::pow(static_cast<double>(s), static_cast<double>(v)) > budget)
    fail(ErrorCode::BudgetExceeded, "cross-interval search exceeds tuple budget");

  const ScaledWeights w = scale_weights(t);
  std::size_t chunks = chunk_count(s);
  std::vector<std::optional<std::vector<std::int64_t>>> best(chunks);

  // x0 ranges over sum t_i I_{j_i} = [S, S + 1]/M with S = sum t_i j_i, so
  // I_{j0} meets it iff |den*j0 - den*S| <= den.
  parallel_chunks(s, [&](std::size_t chunk, std::size_t b, std::size_t e) {
    std::vector<std::size_t> idx(v, 0);
    std::vector<std::int64_t> cand(v + 1);
    auto& out = best[chunk];
    for (std::size_t i1 = b; i1 < e; ++i1) {
      idx.assign(v, 0);
      idx[0] = i1;
      while (true) {
        __int128 scaled = 0;
        for (std::size_t i = 0; i < v; ++i) scaled += w.n[i] * J[idx[i]];
        // Smallest j0 with den*j0 >= scaled - den.
        __int128 lo_num = scaled - w.den;
        __int128 lo = lo_num >= 0 ? (lo_num + w.den - 1) / w.den : -((-lo_num) / w.den);
        auto it = std::lower_bound(J.begin(), J.end(), static_cast<std::int64_t>(lo));
        for (; it != J.end() && static_cast<__int128>(*it) * w.den <= scaled + w.den; ++it) {
          cand[0] = *it;
          bool all_equal = true;
          for (std::size_t i = 0; i < v; ++i) {
            cand[i + 1] = J[idx[i]];
            all_equal = all_equal && cand[i + 1] == cand[0];
          }
          if (all_equal) continue;
          if (!out || lex_less(cand, *out)) out = cand;
          break;  // later j0 are lexicographically larger for this tail
        }
        std::size_t j = v - 1;
        while (j >= 1 && idx[j] + 1 == s) idx[j--] = 0;
        if (j == 0) break;
        ++idx[j];
      }
    }
  });

  std::optional<std::vector<std::int64_t>> result;
  for (auto& c : best)
    if (c && (!result || lex_less(*c, *result))) result = std::move(c);
  return result;
}

IntervalUnion solvable_t_set(std::int64_t jx, std::int64_t jy, std::int64_t jz) {
  // s x + (1-s) y ranges over [jy + s (jx - jy), that + 1]/M, which meets
  // [jz, jz + 1]/M iff |jy + s (jx - jy) - jz| <= 1.
  const std::int64_t diff = jx - jy;
  if (diff == 0) {
    if (std::abs(jy - jz) <= 1) return IntervalUnion({{Rational(0), Rational(1)}});
    return {};
  }
  Rational a = ratio(jz - 1 - jy, diff), b = ratio(jz + 1 - jy, diff);
  Rational lo = a < b ? a : b, hi = a < b ? b : a;
  if (lo < 0) lo = 0;
  if (hi > 1) hi = 1;
  if (lo > hi) return {};
  return IntervalUnion({{lo, hi}});
}

std::optional<ParametricHit> parametric_near_rational_hit(const IntervalFamily& F, std::int64_t p,
                                                          const Rational& kappa) {
  if (p < 2) fail(ErrorCode::InvalidArgument, "p must be >= 2");
  if (kappa <= 0) fail(ErrorCode::InvalidArgument, "kappa must be positive");
  if (numerator(kappa) > BigInt(1) << 40 || denominator(kappa) > BigInt(1) << 40)
    fail(ErrorCode::InvalidArgument, "kappa has too large a numerator or denominator");
  const __int128 kn = numerator(kappa).convert_to<std::int64_t>();
  const __int128 kd = denominator(kappa).convert_to<std::int64_t>();
  const auto& J = F.residues;

  // Open interval (q/p - kn/kd, q/p + kn/kd) = ((q kd - p kn), (q kd + p kn)) / (p kd).
  // The t-set of a triple with jx != jy is [lo, hi] with lo = a/diff, hi = b/diff
  // (diff > 0 after orientation), clipped to [0, 1]. Everything stays in
  // integers: compare a/diff against c/(p kd) by cross-multiplying.
  auto meets = [&](std::int64_t jx, std::int64_t jy, std::int64_t jz, std::int64_t& q_hit) {
    std::int64_t diff = jx - jy;
    __int128 a, b, d;
    if (diff == 0) {
      if (std::abs(jy - jz) > 1) return false;
      a = 0; b = 1; d = 1;
    } else {
      a = jz - 1 - jy; b = jz + 1 - jy; d = diff;
      if (d < 0) { a = -a; b = -b; d = -d; std::swap(a, b); }
      if (a < 0) a = 0;
      if (b > d) b = d;
      if (a > b) return false;
    }
    for (std::int64_t q = 1; q < p; ++q) {
      __int128 lo_open = q * kd - p * kn, hi_open = q * kd + p * kn, den = p * kd;
      // [a/d, b/d] meets (lo_open/den, hi_open/den) iff a/d < hi_open/den and lo_open/den < b/d.
      if (a * den < hi_open * d && lo_open * d < b * den) {
        q_hit = q;
        return true;
      }
    }
    return false;
  };

  for (auto jx : J)
    for (auto jy : J)
      for (auto jz : J) {
        if (jx == jy && jy == jz) continue;
        std::int64_t q = 0;
        if (meets(jx, jy, jz, q)) return ParametricHit{jx, jy, jz, q};
      }
  return std::nullopt;
}

std::optional<TranslateHit> parametric_hit_any_translate(const std::vector<std::int64_t>& Y, std::int64_t M,
                                                         std::int64_t p, const Rational& kappa) {
  std::vector<std::int64_t> shifts{0};
  for (auto y : Y)
    if (y > 0) shifts.push_back(M - y);
  std::sort(shifts.begin(), shifts.end());
  shifts.erase(std::unique(shifts.begin(), shifts.end()), shifts.end());
  for (auto ell : shifts)
    if (auto hit = parametric_near_rational_hit(lift_translate(Y, M, ell), p, kappa))
      return TranslateHit{ell, *hit};
  return std::nullopt;
}

}  // namespace salem
