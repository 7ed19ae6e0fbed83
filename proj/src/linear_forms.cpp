#include "salem/linear_forms.hpp"

#include "salem/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace salem {

LinearForm LinearForm::make(std::int64_t m0, std::vector<std::int64_t> m) {
  if (m.size() < 2) fail(ErrorCode::TooFewVariables, "a form needs at least two variables on the right");
  if (m0 <= 0 || std::any_of(m.begin(), m.end(), [](std::int64_t c) { return c <= 0; }))
    fail(ErrorCode::NonPositiveCoefficient, "coefficients must be positive");
  std::int64_t sum = std::accumulate(m.begin(), m.end(), std::int64_t{0});
  if (sum != m0)
    fail(ErrorCode::SumMismatch, "m0 = " + std::to_string(m0) + " but coefficients sum to " + std::to_string(sum));
  std::int64_t g = m0;
  for (auto c : m) g = std::gcd(g, c);
  if (g != 1) fail(ErrorCode::NotCoprime, "coefficients share the factor " + std::to_string(g));
  return LinearForm(m0, std::move(m));
}

Rational LinearForm::evaluate(const std::vector<Rational>& x) const {
  if (x.size() != m_.size() + 1)
    fail(ErrorCode::LengthMismatch, "expected " + std::to_string(m_.size() + 1) + " entries, got " +
                                        std::to_string(x.size()));
  Rational value = Rational(m0_) * x[0];
  for (std::size_t i = 0; i < m_.size(); ++i) value -= Rational(m_[i]) * x[i + 1];
  return value;
}

std::vector<Rational> LinearForm::convex_weights() const {
  std::vector<Rational> t;
  t.reserve(m_.size());
  for (auto c : m_) t.emplace_back(c, m0_);
  return t;
}

std::string LinearForm::to_string() const {
  std::string s = std::to_string(m0_) + "x0";
  for (std::size_t i = 0; i < m_.size(); ++i) {
    s += " - ";
    if (m_[i] != 1) s += std::to_string(m_[i]);
    s += "x" + std::to_string(i + 1);
  }
  return s;
}

std::string_view to_string(ZeroKind kind) {
  switch (kind) {
    case ZeroKind::NotAZero: return "NotAZero";
    case ZeroKind::TrivialZero: return "TrivialZero";
    case ZeroKind::NontrivialZero: return "NontrivialZero";
  }
  return "?";
}

ZeroClassification classify_zero(const LinearForm& f, const std::vector<Rational>& x) {
  ZeroClassification out{ZeroKind::NotAZero, f.evaluate(x), false};
  if (out.value != 0) return out;
  std::set<Rational> distinct(x.begin(), x.end());
  if (distinct.size() == x.size()) {
    out.kind = ZeroKind::NontrivialZero;
  } else {
    out.kind = ZeroKind::TrivialZero;
    out.reducible = distinct.size() > 1;
  }
  return out;
}

std::int64_t coefficient_bound(const std::vector<LinearForm>& family) {
  if (family.empty()) fail(ErrorCode::EmptyFamily, "coefficient bound of an empty family");
  std::int64_t best = 0;
  for (const auto& f : family) best = std::max(best, f.m0());
  return 2 * best + 1;
}

namespace {

void compositions(std::int64_t remaining, std::size_t parts, std::vector<std::int64_t>& prefix,
                  std::vector<std::vector<std::int64_t>>& out) {
  if (parts == 1) {
    prefix.push_back(remaining);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (std::int64_t first = 1; first <= remaining - static_cast<std::int64_t>(parts - 1); ++first) {
    prefix.push_back(first);
    compositions(remaining - first, parts - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<LinearForm> enumerate_qn(std::int64_t N, std::int64_t v_max) {
  std::vector<LinearForm> out;
  for (std::int64_t m0 = 2; 3 * m0 <= N; ++m0) {
    for (std::int64_t v = 2; v <= std::min(v_max, m0); ++v) {
      std::vector<std::vector<std::int64_t>> comps;
      std::vector<std::int64_t> prefix;
      compositions(m0, static_cast<std::size_t>(v), prefix, comps);
      for (auto& c : comps) {
        std::int64_t g = m0;
        for (auto x : c) g = std::gcd(g, x);
        if (g == 1) out.push_back(LinearForm::make(m0, c));
      }
    }
  }
  return out;
}

}  // namespace salem
