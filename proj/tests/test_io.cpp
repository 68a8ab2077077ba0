#include "doctest.h"

#include <string>

#include "dyadic_tent/io.hpp"

using namespace dyadic_tent;

namespace {

std::string error_of(auto&& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("sequence json round trip") {
  const auto j = parse_json(R"({"entries":[{"level":0,"index":0,"value":1.5},{"level":2,"index":3,"value":-2}]})");
  const auto g = sequence_from_json(j);
  CHECK(g[DyadicIndex(0, 0)] == 1.5);
  CHECK(g[DyadicIndex(2, 3)] == -2.0);
  CHECK(sequence_from_json(sequence_to_json(g)) == g);
  CHECK(sequence_to_json(g).dump() ==
        R"({"entries":[{"index":0,"level":0,"value":1.5},{"index":3,"level":2,"value":-2.0}]})");
}

TEST_CASE("sequence json errors") {
  CHECK(error_of([] { sequence_from_json(parse_json(R"({"entries":[{"level":1,"index":0,"value":1},{"level":1,"index":0,"value":2}]})")); })
            .find("entries[1]") != std::string::npos);
  CHECK(error_of([] { sequence_from_json(parse_json(R"({"entries":[{"level":1,"index":2,"value":1}]})")); })
            .find("entries[0]") != std::string::npos);
  CHECK(error_of([] { sequence_from_json(parse_json(R"({"entries":[{"level":1,"index":0}]})")); })
            .find("value") != std::string::npos);
  CHECK(error_of([] { sequence_from_json(parse_json(R"({"entries":[{"level":-1,"index":0,"value":1}]})")); })
            .find("entries[0].level") != std::string::npos);
  CHECK(error_of([] { sequence_from_json(parse_json(R"({"items":[]})")); }).find("entries") != std::string::npos);
}

TEST_CASE("malformed json reports line and column") {
  const auto message = error_of([] { parse_json("{\n  \"entries\": [\n    {\"level\": 0,,}\n  ]\n}", "seq.json"); });
  CHECK(message.rfind("seq.json:3:", 0) == 0);
}

TEST_CASE("step function json") {
  const auto f = step_function_from_json(parse_json(R"({"depth":2,"values":[4,2,1,1]})"));
  CHECK(f == StepFunction(2, {4, 2, 1, 1}));
  CHECK(step_function_from_json(step_function_to_json(f)) == f);
  CHECK(error_of([] { step_function_from_json(parse_json(R"({"depth":2,"values":[4,2,1]})")); })
            .find("expected 4 numbers") != std::string::npos);
  CHECK(error_of([] { step_function_from_json(parse_json(R"({"depth":1,"values":[4,"x"]})")); })
            .find("values[1]") != std::string::npos);
}

TEST_CASE("dyadic rationals") {
  CHECK(parse_dyadic_rational("3/2^3") == 0.375);
  CHECK(parse_dyadic_rational("0") == 0.0);
  CHECK(format_dyadic_rational(0.375) == "3/2^3");
  CHECK(format_dyadic_rational(0.5) == "1/2^1");
  CHECK(format_dyadic_rational(0.0) == "0/2^0");
  CHECK_THROWS_AS(parse_dyadic_rational("3/8"), InputError);
  CHECK_THROWS_AS(parse_dyadic_rational("9/2^3"), InputError);
  CHECK_THROWS_AS(parse_dyadic_rational("x/2^3"), InputError);
  CHECK_THROWS(format_dyadic_rational(0.1));
}

TEST_CASE("atom json") {
  const auto a = atom_from_json(parse_json(
      R"({"x":"1/2^2","lambda":2,"signs":[{"level":0,"index":0,"sign":1},{"level":2,"index":1,"sign":-1}]})"));
  CHECK(a.point == 0.25);
  CHECK(a.lambda == 2.0);
  CHECK(a.signs == std::map<unsigned, int>{{0, 1}, {2, -1}});
  const auto back = atom_from_json(atom_to_json(a));
  CHECK(back.point == a.point);
  CHECK(back.signs == a.signs);
  CHECK(error_of([] {
          atom_from_json(parse_json(R"({"x":"1/2^2","lambda":1,"signs":[{"level":1,"index":1,"sign":1}]})"));
        }).find("does not contain") != std::string::npos);
  CHECK(error_of([] {
          atom_from_json(parse_json(R"({"x":"0","lambda":1,"signs":[{"level":0,"index":0,"sign":2}]})"));
        }).find("sign") != std::string::npos);
}

TEST_CASE("family json") {
  const auto f = family_from_json(parse_json(
      R"({"norm":"l2","dim":2,"balls":[{"center":[0,1],"radius":0.5,"weight":2},{"center":[1,1],"radius":1}]})"));
  CHECK(f.body.name() == "l2");
  CHECK(f.size() == 2);
  CHECK(f.balls[0].weight == 2.0);
  CHECK(f.balls[1].weight == 1.0);
  CHECK(family_to_json(family_from_json(family_to_json(f))) == family_to_json(f));
  CHECK(error_of([] { family_from_json(parse_json(R"({"norm":"l7","dim":2,"balls":[]})")); }).find("norm") !=
        std::string::npos);
  CHECK(error_of([] { family_from_json(parse_json(R"({"norm":"l2","dim":2,"balls":[{"center":[0],"radius":1}]})")); })
            .find("balls[0].center") != std::string::npos);
  CHECK(error_of([] { family_from_json(parse_json(R"({"norm":"l2","dim":1,"balls":[{"center":[0],"radius":0}]})")); })
            .find("balls[0].radius") != std::string::npos);
}

TEST_CASE("norm report json") {
  NormReport r;
  r.value = 3.2;
  r.witness = {DyadicIndex(2, 0), DyadicIndex(2, 1)};
  CHECK(norm_report_to_json(r).dump() ==
        R"({"value":3.2,"witness":[{"index":0,"level":2},{"index":1,"level":2}]})");
}
