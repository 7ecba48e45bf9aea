#include "support.hpp"

#include "tb/json_io.hpp"

using namespace tbtest;

TEST_CASE("profile encoding round trips") {
  Rng rng(61);
  for (int t = 0; t < 100; ++t) {
    const BettiProfile p = betti_profile(random_star_expr(rng, 5, 12, 5));
    CHECK(profile_from_json(profile_to_json(p)) == p);
  }
}

TEST_CASE("expression encoding round trips") {
  Rng rng(62);
  for (int t = 0; t < 100; ++t) {
    const ConnectedSumExpr e = random_star_expr(rng, 5, 12, 5);
    CHECK(expr_from_json(expr_to_json(e)) == e);
  }
  const ConnectedSumExpr mixed = sum(8, {Summand::complex_projective(4), Summand::cp_sphere_bundle(2, 4, true)});
  CHECK(expr_from_json(expr_to_json(mixed)) == mixed);
}

TEST_CASE("profile decoding") {
  const BettiProfile p = profile_from_json(Json::parse(R"({"dim": 7, "betti": {"3": 2}})"));
  CHECK(p == profile(7, {0, 2}, true));
  CHECK(code_of([] { profile_from_json(Json::parse(R"({"dim": 7, "betti": {"3": 2, "4": 1}})")); }) ==
        ErrorCode::InvariantViolation);
  CHECK(code_of([] { profile_from_json(Json::parse(R"({"dim": 7, "betti": {"x": 2}})")); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { profile_from_json(Json::parse(R"({"dim": 7, "betti": {"1": 2}})")); }) == ErrorCode::InvalidInput);
}

TEST_CASE("expression decoding with counts") {
  const ConnectedSumExpr e = expr_from_json(Json::parse(
      R"({"dim": 9, "summands": [{"type": "sphere_product", "k": 3, "l": 6, "count": 3}, {"type": "twisted_s2"}]})"));
  CHECK(e.summands.size() == 4);
  CHECK(e.summands.back() == Summand::twisted_s2(9));
  CHECK(code_of([] { expr_from_json(Json::parse(R"({"dim": 9, "summands": [{"type": "torus"}]})")); }) ==
        ErrorCode::InvalidInput);
  CHECK(code_of([] { expr_from_json(Json::parse(R"({"dim": 9, "summands": [{"type": "cp", "m": 3}]})")); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("big integers survive encoding") {
  const Int big("123456789012345678901234567890");
  CHECK(int_from_json(int_to_json(big)) == big);
  CHECK(int_from_json(int_to_json(Int(-7))) == -7);
}

TEST_CASE("errors serialize with code, message and diagnostics") {
  const Json j = error_to_json(Error(ErrorCode::SideCondition, "m", {{"d1", "2"}, {"d1", "3"}}));
  CHECK(j["error"]["code"] == error_code_name(ErrorCode::SideCondition));
  CHECK(j["error"]["message"] == "m");
  CHECK(j["error"]["diagnostics"]["d1"].size() == 2);
}
