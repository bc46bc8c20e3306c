#include "helpers.hpp"

using namespace glt;
using namespace testing;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("class expressions") {
  auto L = surface_file("p2_four_lines");
  CHECK(io::parse_class(L, "H + 1/2 L1") == wps::normalize(L, {1}, {1, 0, 0, 0}));
  CHECK(io::parse_class(L, "2H - 1/2 L1 - 1/2 L2") == io::parse_class(L, "1/2 L1 + 1/2 L2"));
  CHECK(io::parse_class(L, "0") == wps::zero(L));
  auto B = picard::blowup_general(3);
  CHECK(io::parse_divclass(B, "2H - E1 - E3") == DivClass{2, -1, 0, -1});
  CHECK(io::parse_divclass(picard::p1xp1(), "(2,-1)") == DivClass{2, -1});
  CHECK(io::parse_divclass(picard::hirzebruch(2), "C + 3F") == DivClass{1, 3});
}

TEST_CASE("class parse errors") {
  auto B = picard::blowup_general(3);
  for (const char* bad : {"", "H +", "2H E1", "H + E4", "Z", "1/2 H", "H + 3", "(1,2"}) {
    CAPTURE(bad);
    CHECK(kind_of([&] { io::parse_divclass(B, bad); }) == ErrorKind::ParseError);
  }
  CHECK(kind_of([&] { io::parse_divclass(picard::p1xp1(), "(1,2,3)"); }) == ErrorKind::ParseError);
}

TEST_CASE("surface and bundle parse errors") {
  using io::json;
  CHECK(kind_of([] { io::surface_from_json(json::parse(R"({"kind": "K3"})")); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::surface_from_json(json::parse(R"({"kind": "blowup", "points": 10})")); }) ==
        ErrorKind::ParseError);
  CHECK(kind_of([] {
          io::surface_from_json(json::parse(R"({"kind": "blowup", "points": 3, "collinear": [[1, 2, 4]]})"));
        }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::weighted_from_json(json::parse(R"({"weights": []})")); }) == ErrorKind::ParseError);
  CHECK(kind_of([] {
          io::weighted_from_json(json::parse(
              R"({"surface": {"kind": "P2"}, "weights": [{"class": "H", "weight": 2, "name": "H"}]})"));
        }) == ErrorKind::ParseError);
  auto P2 = surface_file("p2");
  CHECK(kind_of([&] { io::bundle_from_json(json::parse(R"({"summands": []})"), P2); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { io::bundle_from_json(json::parse(R"({"summands": [3]})"), P2); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] {
          io::bundle_from_json(json::parse(R"({"summands": ["0", "H"], "vertex_names": ["a"]})"), P2);
        }) == ErrorKind::ParseError);
  CHECK(kind_of([] { io::read_json_file("/nonexistent/file.json"); }) == ErrorKind::ParseError);
}

TEST_CASE("script errors map to MalformedScript") {
  using io::json;
  auto W = surface_file("p2_four_lines");
  CHECK(kind_of([&] { io::script_from_json(json::parse(R"({})"), W, "s"); }) == ErrorKind::MalformedScript);
  CHECK(kind_of([&] { io::script_from_json(json::parse(R"({"moves": [{"move": "Cone", "objects": [{"line": "H +"}]}]})"), W, "s"); }) ==
        ErrorKind::MalformedScript);
  CHECK(kind_of([&] { io::script_from_json(json::parse(R"({"moves": [{"move": "Summand", "objects": [{}]}]})"), W, "s"); }) ==
        ErrorKind::MalformedScript);
}

TEST_CASE("every data file parses") {
  for (const char* name : {"bl1", "bl1_conic", "bl2", "bl3", "bl3_collinear", "bl4", "bl5", "bl6", "f1_line_p2",
                           "f1_line_p3", "f2", "p1xp1", "p1xp1_diagonal_p2", "p1xp1_diagonal_p3", "p2", "p2_conic",
                           "p2_four_lines"}) {
    CAPTURE(name);
    auto W = surface_file(name);
    CHECK(W.base.rank() >= 1);
    CHECK(io::parse_class(W, wps::to_string(W, wps::k_A(W))) == wps::k_A(W));
  }
}
