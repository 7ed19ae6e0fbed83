#pragma once

#include "salem/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace salem {

// f(x0, x1..xv) = m0*x0 - sum_i m_i*x_i with m0 = sum_i m_i.
class LinearForm {
 public:
  static LinearForm make(std::int64_t m0, std::vector<std::int64_t> m);

  std::int64_t m0() const { return m0_; }
  const std::vector<std::int64_t>& m() const { return m_; }
  std::size_t v() const { return m_.size(); }

  Rational evaluate(const std::vector<Rational>& x) const;
  // Coefficients (m_1/m0, ..., m_v/m0) of the convex combination x0 = sum t_i x_i.
  std::vector<Rational> convex_weights() const;
  std::string to_string() const;

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
  friend auto operator<=>(const LinearForm&, const LinearForm&) = default;

 private:
  LinearForm(std::int64_t m0, std::vector<std::int64_t> m) : m0_(m0), m_(std::move(m)) {}
  std::int64_t m0_;
  std::vector<std::int64_t> m_;
};

enum class ZeroKind { NotAZero, TrivialZero, NontrivialZero };
std::string_view to_string(ZeroKind kind);

struct ZeroClassification {
  ZeroKind kind;
  Rational value;
  // A zero whose entries repeat but are not all equal; merging equal entries
  // yields a nontrivial zero of a form in fewer variables.
  bool reducible = false;
};

ZeroClassification classify_zero(const LinearForm& f, const std::vector<Rational>& x);

// Smallest integer A with A > 2 max m0.
std::int64_t coefficient_bound(const std::vector<LinearForm>& family);

// All valid forms with 2 <= m0 <= N/3 and 2 <= v <= min(v_max, m0), ordered
// by (m0, v, coefficients lexicographically).
std::vector<LinearForm> enumerate_qn(std::int64_t N, std::int64_t v_max);

}  // namespace salem
