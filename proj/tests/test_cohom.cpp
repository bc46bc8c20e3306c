#include "helpers.hpp"

using namespace glt;
using namespace testing;

namespace {

bool same(const cohom::CohomologyVector& a, const cohom::CohomologyVector& b) {
  return a.h0 == b.h0 && a.h1 == b.h1 && a.h2 == b.h2 && a.chi == b.chi;
}

std::vector<picard::SurfaceModel> blowup_configs() {
  std::vector<picard::SurfaceModel> out;
  for (int n = 0; n <= 6; ++n) out.push_back(n == 0 ? picard::projective_plane() : picard::blowup_general(n));
  out.push_back(surface_file("bl3_collinear").base);
  return out;
}

DivClass e_sum(size_t rank, int from, int to) {
  DivClass d(rank, 0);
  for (int i = from; i <= to; ++i) d[i] = 1;
  return d;
}

}  // namespace

TEST_CASE("Euler characteristic examples") {
  auto P2 = picard::projective_plane();
  CHECK(cohom::euler_char(P2, P2.zero()) == 1);
  CHECK(cohom::euler_char(P2, {2}) == 6);
  auto B6 = picard::blowup_general(6);
  CHECK(cohom::euler_char(B6, scale(-1, B6.canonical)) == 4);
}

TEST_CASE("cohomology examples") {
  auto B6 = picard::blowup_general(6);
  auto v = cohom::cohomology(B6, cls(B6, "2H - E1 - E2 - E3 - E4 - E5 - E6"));
  CHECK(v.h0 == 0);
  CHECK(v.h1 == 0);
  CHECK(v.h2 == 0);
  CHECK(v.chi == 0);
  auto F2 = picard::hirzebruch(2);
  v = cohom::cohomology(F2, cls(F2, "2C + 4F"));
  CHECK(v.h0 == 9);
  CHECK(v.h1 == 0);
  CHECK(v.h2 == 0);
  for (auto& S : blowup_configs()) {
    v = cohom::cohomology(S, S.canonical);
    CHECK(v.h0 == 0);
    CHECK(v.h1 == 0);
    CHECK(v.h2 == 1);
  }
}

TEST_CASE("oracle examples") {
  auto B3 = picard::blowup_general(3);
  CHECK(cohom::cohomology_oracle(B3, cls(B3, "H - E1 - E2 - E3"), 7).h0 == 0);
  CHECK(cohom::cohomology_oracle(B3, cls(B3, "H"), 7).h0 == 3);
  auto B5 = picard::blowup_general(5);
  CHECK(cohom::cohomology_oracle(B5, cls(B5, "2H - E1 - E2 - E3 - E4 - E5"), 7).h0 == 1);
}

TEST_CASE("vanishing on blowups of P2 in general position") {
  for (int r = 1; r <= 6; ++r) {
    auto S = picard::blowup_general(r);
    const size_t n = S.rank();
    auto vanish = [&](const DivClass& d) {
      auto v = cohom::cohomology(S, d);
      CAPTURE(S.class_str(d));
      CHECK(v.h1 == 0);
      CHECK(v.h2 == 0);
    };
    for (int s = 0; s < r; ++s) {
      DivClass d = e_sum(n, 1, s);
      d[s + 1] = -1;
      vanish(d);
    }
    for (int s = 0; s <= std::min(3, r); ++s) {
      DivClass d = scale(-1, e_sum(n, 1, s));
      d[0] = 1;
      vanish(d);
    }
    for (int s = 0; s <= std::min(6, r); ++s) {
      DivClass d = scale(-1, e_sum(n, 1, s));
      d[0] = 2;
      vanish(d);
    }
    for (int s = 0; s <= r; ++s)
      for (int t = -6; t <= 2; ++t) {
        DivClass d = e_sum(n, 1, s);
        d[0] = -t;
        vanish(d);
      }
  }
}

TEST_CASE("vanishing on the blowup of P2 at one point") {
  auto S = picard::blowup_general(1);
  for (i64 a = -10; a <= 10; ++a)
    for (i64 b = -10; b <= 10; ++b) {
      const bool covered = (a + b > -1 && b <= 1) || a + b == -1 || (a == -2 && b == 0);
      if (!covered) continue;
      auto v = cohom::cohomology(S, {a, b});
      CAPTURE(a);
      CAPTURE(b);
      CHECK(v.h1 == 0);
      CHECK(v.h2 == 0);
    }
}

TEST_CASE("oracle agreement (200 seeded classes per configuration)") {
  std::mt19937_64 rng(11);
  for (auto& S : {picard::blowup_general(4), surface_file("bl3_collinear").base}) {
    for (int k = 0; k < 200; ++k) {
      auto d = random_blowup_class(rng, S.rank(), 6, 3);
      CAPTURE(S.class_str(d));
      CHECK(same(cohom::cohomology(S, d), cohom::cohomology_oracle(S, d, 1000 + k)));
    }
  }
}

TEST_CASE("Serre duality and chi (200 seeded classes per model)") {
  std::mt19937_64 rng(12);
  std::vector<picard::SurfaceModel> models = blowup_configs();
  models.push_back(picard::p1xp1());
  models.push_back(picard::hirzebruch(2));
  models.push_back(picard::hirzebruch(3));
  for (auto& S : models) {
    for (int k = 0; k < 200; ++k) {
      auto d = random_class(rng, S.rank(), 5);
      auto v = cohom::cohomology(S, d);
      auto w = cohom::cohomology(S, sub(S.canonical, d));
      CAPTURE(S.class_str(d));
      CHECK(v.h2 == w.h0);
      CHECK(v.h1 == w.h1);
      CHECK(v.chi == v.h0 - v.h1 + v.h2);
      CHECK(v.chi == cohom::euler_char(S, d));
      CHECK(v.h0 >= 0);
      CHECK(v.h1 >= 0);
      CHECK(v.h2 >= 0);
    }
  }
}

TEST_CASE("memo is a transparent cache") {
  std::mt19937_64 rng(13);
  auto S = picard::blowup_general(5);
  cohom::Memo memo;
  for (int k = 0; k < 200; ++k) {
    auto d = random_class(rng, S.rank(), 4);
    auto a = cohom::cohomology(S, d, &memo);
    auto b = cohom::cohomology(S, d, &memo);
    CHECK(same(a, cohom::cohomology(S, d)));
    CHECK(same(a, b));
  }
}

TEST_CASE("results are stable under a larger curve inventory") {
  std::mt19937_64 rng(14);
  for (int n : {4, 6}) {
    picard::PointConfiguration c;
    c.count = n;
    auto small = picard::blowup(c, 6), large = picard::blowup(c, 12);
    for (int k = 0; k < 200; ++k) {
      auto d = random_blowup_class(rng, small.rank(), 6, 3);
      CHECK(same(cohom::cohomology(small, d), cohom::cohomology(large, d)));
    }
  }
}

TEST_CASE("nine-point models only accept multiples of K") {
  picard::PointConfiguration c;
  c.count = 9;
  auto S = picard::blowup(c);
  CHECK_THROWS_AS(cohom::cohomology(S, cls(S, "H")), Error);
}
