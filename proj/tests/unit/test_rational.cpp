#include "salem/error.hpp"
#include "salem/parallel.hpp"
#include "salem/rational.hpp"

#include <doctest.h>

#include <atomic>
#include <numeric>

using namespace salem;

TEST_CASE("parse_rational accepts fractions, integers and exact decimals") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational(" -7 ") == Rational(-7));
  CHECK(parse_rational("0.3") == Rational(3, 10));
  CHECK(parse_rational("-1.25") == Rational(-5, 4));
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
  auto list = parse_rational_list("1/2, 1/3,1/6");
  REQUIRE(list.size() == 3);
  CHECK(std::accumulate(list.begin(), list.end(), Rational(0)) == 1);
}

TEST_CASE("formatting round-trips") {
  for (auto s : {"1/2", "-3/7", "5", "0"}) CHECK(to_string(parse_rational(s)) == s);
}

TEST_CASE("powers and floors") {
  CHECK(pow2(3) == 8);
  CHECK(pow2(-3) == Rational(1, 8));
  CHECK(ipow(BigInt(3), 4) == 81);
  CHECK(ipow(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(floor_to_int64(Rational(-1, 2)) == -1);
  CHECK(floor_to_int64(Rational(7, 2)) == 3);
  // floor(x^(p/r)) checked against exact integer powers.
  for (int x = 0; x < 200; ++x) {
    BigInt f = floor_rational_power(Rational(x), 1, 2);
    CHECK(f * f <= x);
    CHECK((f + 1) * (f + 1) > x);
  }
  CHECK(floor_rational_power(Rational(1000, 3), 2, 3) == 48);  // (333.3)^(2/3) = 48.07
}

TEST_CASE("interval unions merge and answer containment exactly") {
  IntervalUnion u({{Rational(1, 2), Rational(3, 4)}, {Rational(0), Rational(1, 4)}, {Rational(1, 4), Rational(1, 3)}});
  REQUIRE(u.parts().size() == 2);
  CHECK(u.parts()[0] == RationalInterval{Rational(0), Rational(1, 3)});
  CHECK(u.contains(Rational(1, 3)));
  CHECK_FALSE(u.contains(Rational(2, 5)));
  CHECK(u.disjoint_from_open(Rational(1, 3), Rational(1, 2)));
  CHECK_FALSE(u.disjoint_from_open(Rational(1, 3), Rational(51, 100)));
  IntervalUnion inner({{Rational(1, 10), Rational(1, 5)}});
  CHECK(u.contains(inner));
  auto x = u.intersect(IntervalUnion({{Rational(1, 5), Rational(3, 5)}}));
  REQUIRE(x.parts().size() == 2);
  CHECK(x.parts()[1] == RationalInterval{Rational(1, 2), Rational(3, 5)});
}

TEST_CASE("parallel_chunks covers the range once, whatever the thread count") {
  for (unsigned threads : {1u, 2u, 7u}) {
    set_thread_count(threads);
    std::vector<std::atomic<int>> hits(1000);
    parallel_chunks(hits.size(), [&](std::size_t, std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) ++hits[i];
    });
    for (auto& h : hits) CHECK(h.load() == 1);
  }
  set_thread_count(2);
  CHECK_THROWS_AS(parallel_chunks(10, [](std::size_t c, std::size_t, std::size_t) {
                    if (c == 1) fail(ErrorCode::InvalidArgument, "boom");
                  }),
                  Error);
  set_thread_count(0);
}
