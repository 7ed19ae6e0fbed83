#include "oracles.hpp"
#include "salem/error.hpp"
#include "salem/interval_sets.hpp"

#include <doctest.h>

#include <random>

using namespace salem;

TEST_CASE("lift_translate") {
  CHECK(lift_translate({1, 4}, 10, 7).residues == std::vector<std::int64_t>{1, 8});
  auto half = lift_translate({0}, 2, 0);
  CHECK(half.interval(0) == RationalInterval{Rational(0), Rational(1, 2)});
  auto f = lift_translate({9}, 10, 3);
  CHECK(f.residues == std::vector<std::int64_t>{2});
  CHECK(f.interval(2) == RationalInterval{Rational(1, 5), Rational(3, 10)});
  CHECK_THROWS_AS(lift_translate({10}, 10, 0), Error);
}

TEST_CASE("block construction formulas") {
  auto w = build_block({ProgressionBlock{Rational(1), Rational(1), Rational(1, 4)}, 1000});
  CHECK(w.record.inner_size == 5);
  CHECK(w.record.multiplier == 6);
  CHECK(w.family.residues == std::vector<std::int64_t>{0, 6, 12, 18, 24});
  CHECK(w.record.size_lower_bound == doctest::Approx(std::sqrt(12.5)));
  CHECK(w.record.size_bound_holds);
  for (std::size_t i = 1; i < w.family.residues.size(); ++i)
    CHECK(w.family.residues[i] - w.family.residues[i - 1] == w.record.multiplier);

  auto v = build_block({NearRationalBlock{2}, 6400});
  CHECK(v.record.inner_size == 101);
  CHECK(v.record.multiplier == 4);
  CHECK(v.record.inner_set == behrend_set(101, 5).elements);
  CHECK(*v.record.kappa == Rational(2, 6400));
  for (auto r : v.family.residues) CHECK(r < 6400);

  auto u = build_block({AvoidFormsBlock{{LinearForm::make(2, {1, 1})}}, 360});
  CHECK(u.record.coefficient_bound == 5);
  CHECK(u.record.inner_size == 11);
  std::vector<std::int64_t> expect;
  for (auto y : behrend_set(11, 5).elements) expect.push_back(5 * y);
  CHECK(u.family.residues == expect);

  auto z = build_block({CombinedBlock{Rational(1), Rational(1), Rational(1, 4), 2}, 100000});
  CHECK(z.record.kind == "combined");
  CHECK(z.record.forms == near_rational_forms(2));
  CHECK_THROWS_AS(build_block({ProgressionBlock{Rational(1), Rational(1), Rational(1, 4)}, 20}), Error);
  CHECK_THROWS_AS(build_block({ProgressionBlock{Rational(2), Rational(1), Rational(1, 4)}, 2000}), Error);
}

TEST_CASE("near-rational forms") {
  auto f = near_rational_forms(4);
  // q = 1, 2, 3 give 4x0 - x1 - 3x2, 2x0 - x1 - x2, 4x0 - 3x1 - x2.
  REQUIRE(f.size() == 3);
  CHECK(std::find(f.begin(), f.end(), LinearForm::make(2, {1, 1})) != f.end());
}

TEST_CASE("cross_interval_witness examples") {
  std::vector<Rational> half{Rational(1, 2), Rational(1, 2)};
  CHECK_FALSE(cross_interval_witness({10, {0, 5}}, half).has_value());
  auto w = cross_interval_witness({10, {0, 2, 4}}, half);
  REQUIRE(w.has_value());
  CHECK(*w == std::vector<std::int64_t>{0, 0, 2});
  // The midpoint triple is also a witness on its own.
  CHECK(oracle::cells_reach(half, {0, 4}, 2));
  CHECK_FALSE(cross_interval_witness({10, {3}}, half).has_value());
}

TEST_CASE("cross_interval_witness matches the exhaustive oracle") {
  std::mt19937_64 rng(11);
  std::vector<std::vector<Rational>> weights{{Rational(1, 2), Rational(1, 2)},
                                             {Rational(1, 3), Rational(2, 3)},
                                             {Rational(1, 5), Rational(4, 5)},
                                             {Rational(1, 3), Rational(1, 3), Rational(1, 3)},
                                             {Rational(1, 4), Rational(1, 4), Rational(1, 2)}};
  for (int trial = 0; trial < 200; ++trial) {
    std::int64_t M = 5 + static_cast<std::int64_t>(rng() % 60);
    std::vector<std::int64_t> res;
    for (std::int64_t j = 0; j < M; ++j)
      if (rng() % 5 == 0) res.push_back(j);
    if (res.empty()) res.push_back(0);
    const auto& t = weights[static_cast<std::size_t>(trial) % weights.size()];
    CHECK(cross_interval_witness({M, res}, t) == oracle::cross_witness(res, t));
  }
}

TEST_CASE("solvable t-set is exact") {
  // x in I_0, y in I_4, z in I_2 with modulus 10: s x + (1-s) y = z.
  auto s = solvable_t_set(0, 4, 2);
  CHECK(s.contains(Rational(1, 2)));
  for (int i = 0; i <= 100; ++i) {
    Rational t(i, 100);
    CHECK(s.contains(t) == oracle::cells_reach({t, 1 - t}, {0, 4}, 2));
  }
  auto none = solvable_t_set(0, 1, 5);
  CHECK(none.empty());
}

TEST_CASE("near-rational blocks avoid the coefficient windows") {
  for (std::int64_t p : {2, 3}) {
    std::int64_t M = 16 * p * p * 30;
    auto b = build_block({NearRationalBlock{p}, M});
    REQUIRE(b.record.kappa_valid);
    CHECK_FALSE(parametric_near_rational_hit(b.family, p, *b.record.kappa).has_value());
    CHECK_FALSE(parametric_hit_any_translate(b.family.residues, M, p, *b.record.kappa).has_value());
    // Spot grid inside each window agrees.
    for (std::int64_t q = 1; q < p; ++q)
      for (int i = -4; i <= 4; ++i) {
        Rational t = Rational(q, p) + *b.record.kappa * Rational(i, 5);
        CHECK_FALSE(cross_interval_witness(b.family, {t, 1 - t}).has_value());
      }
  }
  // A dense family does hit.
  IntervalFamily dense{20, {0, 1, 2, 3, 4, 5}};
  CHECK(parametric_near_rational_hit(dense, 2, Rational(1, 10)).has_value());
}
