#include <doctest.h>

#include "lph/json_io.hpp"

using namespace lph;

TEST_CASE("supernatural JSON") {
  const auto n = parse_supernatural("2^inf*3^4");
  const Json j = n;
  CHECK(j.dump() == R"({"2":"inf","3":4})");
  CHECK(supernatural_from_json(j) == n);
  CHECK(supernatural_from_json(Json::object()).is_one());
  CHECK_THROWS(supernatural_from_json(Json::parse(R"({"4":1})")));
  CHECK_THROWS(supernatural_from_json(Json::parse(R"({"2":"many"})")));
  CHECK_THROWS(supernatural_from_json(Json::parse(R"({"x":1})")));
}

TEST_CASE("chain and element JSON") {
  const FrequencyChain c({2, 6}, {2, 3});
  const Json j = c;
  CHECK(j.dump() == R"({"prefix":[2,6],"rule":[2,3]})");
  CHECK(chain_from_json(j) == c);
  CHECK(chain_from_json(Json::parse(R"({"prefix":[2,4]})")) == FrequencyChain({2, 4}));
  CHECK_THROWS_AS(chain_from_json(Json::parse(R"({"prefix":[2,3]})")), ChainError);

  const auto x = ProcyclicElement::from_integer(c, 3, 7);
  const Json e = x;
  CHECK(e.dump() == R"({"chain":{"prefix":[2,6],"rule":[2,3]},"level":3,"residues":[1,1,7]})");
  CHECK(element_from_json(e) == x);
  Json bad = e;
  bad["residues"] = {1, 2, 7};
  CHECK_THROWS_AS(element_from_json(bad), GroupError);
  bad = e;
  bad["level"] = 2;
  CHECK_THROWS_AS(element_from_json(bad), GroupError);
}

TEST_CASE("band set JSON") {
  const BandSet b({{-2, -0.5}, {0.25, 2}});
  const Json j = band_set_json(b, 0.125, 3);
  CHECK(j.dump() == R"({"bands":[[-2.0,-0.5],[0.25,2.0]],"tail_bound":0.125,"level":3})");
  CHECK(band_set_from_json(j) == b);
}

TEST_CASE("verdict JSON") {
  const Json yes = hulls_isomorphic(FrequencyChain({2}, {2}), FrequencyChain({4}, {4}), 2);
  CHECK(yes["isomorphic"] == true);
  CHECK(yes["order_a"].dump() == R"({"2":"inf"})");
  CHECK(yes["certificate"]["a_in_b"].size() == 2);
  CHECK(yes["certificate"]["counterexample"].is_null());
  const Json no = hulls_isomorphic(FrequencyChain({2}, {2}), FrequencyChain({3}, {3}));
  CHECK(no["certificate"]["counterexample"]["value"] == 2);
  const Json g = is_generator(FrequencyChain({2}, {2}), 6, 3);
  CHECK(g["witness"]["gcd"] == 2);
}
