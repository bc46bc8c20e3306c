#include "helpers.hpp"

#include <algorithm>

using namespace glt;
using namespace testing;
using picard::CurveKind;

namespace {

std::vector<picard::SurfaceModel> all_models() {
  std::vector<picard::SurfaceModel> out{picard::projective_plane(), picard::p1xp1(), picard::hirzebruch(1),
                                        picard::hirzebruch(2)};
  for (int n = 1; n <= 6; ++n) out.push_back(picard::blowup_general(n));
  picard::PointConfiguration col;
  col.count = 3;
  col.collinear_triples = {{0, 1, 2}};
  out.push_back(picard::blowup(col));
  return out;
}

size_t count_kind(const picard::SurfaceModel& S, CurveKind k) {
  return std::count_if(S.curves.begin(), S.curves.end(), [&](const picard::CurveClass& c) { return c.kind == k; });
}

}  // namespace

TEST_CASE("six general points: K^2 = 3 and 27 lines") {
  auto S = picard::blowup_general(6);
  CHECK(S.dot(S.canonical, S.canonical) == 3);
  CHECK(count_kind(S, CurveKind::MinusOne) == 27);
}

TEST_CASE("nine points: K^2 = 0") {
  picard::PointConfiguration c;
  c.count = 9;
  auto S = picard::blowup(c);
  CHECK(S.dot(S.canonical, S.canonical) == 0);
}

TEST_CASE("three collinear points give the (-2)-curve H - E1 - E2 - E3") {
  auto S = surface_file("bl3_collinear").base;
  auto it = std::find_if(S.curves.begin(), S.curves.end(),
                         [&](const picard::CurveClass& c) { return c.cls == cls(S, "H - E1 - E2 - E3"); });
  REQUIRE(it != S.curves.end());
  CHECK(it->self_int == -2);
  CHECK(it->kind == CurveKind::MinusTwo);
}

TEST_CASE("intersection numbers") {
  auto B = picard::blowup_general(4);
  CHECK(B.dot(cls(B, "H"), cls(B, "H")) == 1);
  auto F2 = picard::hirzebruch(2);
  CHECK(F2.dot(cls(F2, "2C + 4F"), cls(F2, "C")) == 0);
  auto B6 = picard::blowup_general(6);
  auto a = cls(B6, "3H - E1 - E2 - E3 - E4 - E5 - E6");
  CHECK(B6.dot(a, a) == 3);
  CHECK(picard::intersect(B6, to_q(a), to_q(a)) == Q(3));
}

TEST_CASE("positivity examples") {
  auto F2 = picard::hirzebruch(2);
  auto mk = scale(-1, F2.canonical);
  CHECK(mk == cls(F2, "2C + 4F"));
  CHECK(picard::is_nef(F2, mk));
  CHECK(picard::is_big_nef(F2, mk));
  CHECK_FALSE(picard::is_ample(F2, mk));
  CHECK(F2.dot(mk, mk) == 8);
  auto B6 = picard::blowup_general(6);
  CHECK(picard::is_ample(B6, scale(-1, B6.canonical)));
  CHECK(picard::is_nef(B6, B6.zero()));
  CHECK_FALSE(picard::is_big_nef(B6, B6.zero()));
  auto w = picard::nef_witness(F2, to_q(cls(F2, "C")));
  REQUIRE(w.has_value());
  CHECK(w->cls == cls(F2, "C"));
}

TEST_CASE("general position predicates") {
  picard::PointConfiguration col;
  col.count = 3;
  col.collinear_triples = {{0, 1, 2}};
  CHECK_FALSE(picard::is_general_position(col, 3));
  CHECK(picard::is_almost_general_position(col, 3));

  picard::PointConfiguration four;
  four.count = 4;
  four.collinear_triples = {{0, 1, 2}, {0, 1, 3}};
  CHECK_FALSE(picard::is_almost_general_position(four, 4));

  picard::PointConfiguration six;
  six.count = 6;
  CHECK(picard::is_general_position(six, 6));

  picard::PointConfiguration nine;
  nine.count = 9;
  CHECK_THROWS_AS(picard::is_general_position(nine, 9), Error);
}

TEST_CASE("infinitely near points are rejected") {
  picard::PointConfiguration c;
  c.count = 2;
  c.infinitely_near = true;
  CHECK_THROWS_AS(picard::blowup(c), Error);
}

TEST_CASE("Noether and curve inventory invariants on every model") {
  for (auto& S : all_models()) {
    CAPTURE(S.fingerprint());
    CHECK(static_cast<i64>(S.rank()) + 2 == S.chi_top());
    CHECK(S.dot(S.canonical, S.canonical) == 12 - S.chi_top());
    for (auto& c : S.curves) {
      CHECK(c.self_int == S.dot(c.cls, c.cls));
      CHECK(S.dot(c.cls, S.ample_ref) > 0);
      if (c.kind == CurveKind::MinusOne) {
        CHECK(picard::genus(S, c.cls) == 0);
        CHECK(S.dot(c.cls, S.canonical) == -1);
      }
    }
    for (size_t i = 0; i < S.rank(); ++i)
      for (size_t j = 0; j < S.rank(); ++j) CHECK(S.form[i][j] == S.form[j][i]);
  }
}

TEST_CASE("ample implies big and nef implies nef (500 seeded classes per model)") {
  std::mt19937_64 rng(20261016);
  for (auto& S : all_models()) {
    size_t ample = 0, big = 0;
    for (int k = 0; k < 500; ++k) {
      auto d = random_class(rng, S.rank(), 4);
      const bool a = picard::is_ample(S, d), b = picard::is_big_nef(S, d), n = picard::is_nef(S, d);
      if (a) CHECK(b);
      if (b) CHECK(n);
      ample += a;
      big += b;
    }
    CHECK(big >= ample);
  }
}

TEST_CASE("(-1)-class enumeration is stable when the bound doubles") {
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    CHECK(picard::minus_one_classes(n, 6).size() == picard::minus_one_classes(n, 12).size());
  }
  CHECK(picard::minus_one_classes(6, 6).size() == 27);
}
