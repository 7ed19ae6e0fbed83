#include "salem/error.hpp"
#include "salem/serialize.hpp"

#include <doctest.h>

using namespace salem;

TEST_CASE("forms and families round-trip") {
  auto forms = enumerate_qn(12, 3);
  CHECK(forms_from_json(Json::parse(forms_to_json(forms).dump())) == forms);
  CHECK(to_json(LinearForm::make(2, {1, 1})).dump() == R"({"m0":2,"m":[1,1]})");
  CHECK(forms_from_json(Json::parse(R"([{"m0":3,"m":[1,2]}])"))[0] == LinearForm::make(3, {1, 2}));
  CHECK_THROWS_AS(forms_from_json(Json::parse(R"([{"m0":3,"m":[1,1]}])")), Error);
  IntervalFamily F{10, {1, 8}};
  CHECK(to_json(F).dump() == R"({"M":10,"residues":[1,8]})");
  CHECK(family_from_json(to_json(F)) == F);
  CHECK_THROWS_AS(family_from_json(Json::parse(R"({"M":10,"residues":[10]})")), Error);
}

TEST_CASE("trees round-trip through their translates") {
  auto s = uniform_avoiding_schedule(4000, {LinearForm::make(2, {1, 1})}, 2, 1e8);
  auto t = sample_tree(s, 17);
  auto j = to_json(t);
  CHECK(j["schema"] == kSchemaVersion);
  auto back = tree_from_json(Json::parse(j.dump()));
  CHECK(back.seed == 17);
  REQUIRE(back.levels.size() == t.levels.size());
  for (std::size_t n = 0; n < t.levels.size(); ++n)
    for (std::size_t i = 0; i < t.levels[n].size(); ++i) {
      CHECK(back.levels[n][i].ell == t.levels[n][i].ell);
      CHECK(back.levels[n][i].left == t.levels[n][i].left);
    }
  CHECK(to_json(back).dump() == j.dump());
  auto bad = j;
  bad["schema"] = 99;
  CHECK_THROWS_AS(tree_from_json(bad), Error);
}

TEST_CASE("measures round-trip and are validated") {
  CantorMeasure mu{2, 16, {1, 5, 9}};
  auto back = measure_from_json(to_json(mu));
  CHECK(back.left == mu.left);
  CHECK(back.denominator == 16);
  CHECK_THROWS_AS(measure_from_json(Json::parse(R"({"denominator":4,"left":[4]})")), Error);
  CHECK_THROWS_AS(measure_from_json(Json::parse(R"({"denominator":4,"left":[]})")), Error);
}

TEST_CASE("interval unions as dyadic pairs") {
  IntervalUnion u({{Rational(3, 8), Rational(12289, 32768)}, {Rational(1, 2), Rational(5, 8)}});
  auto j = to_json(u);
  CHECK(j.dump() == "[[[3,3],[12289,15]],[[1,1],[5,3]]]");
  CHECK(interval_union_from_json(j).parts() == u.parts());
}

TEST_CASE("profile CSV uses fixed formatting") {
  FourierProfile p;
  p.K = 31;
  p.bands = {{4, 16, 31, 0.1234567890123456, 17}};
  CHECK(profile_csv(p) == "k_band_lo,k_band_hi,band_max\n16,31,1.23456789012e-01\n");
  CHECK(rounded(0.1234567890123456) == 0.123456789012);
}

TEST_CASE("manifests round-trip") {
  RunManifest m{"behrend", {"behrend", "--N", "121"}, Json{{"--N", "121"}}, 0, kToolVersion, {"behrend.json"}, 0.5};
  auto back = manifest_from_json(to_json(m));
  CHECK(back.argv == m.argv);
  CHECK(back.outputs == m.outputs);
  CHECK(back.subcommand == "behrend");
}
