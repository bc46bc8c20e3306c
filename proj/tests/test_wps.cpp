#include "helpers.hpp"

using namespace glt;
using namespace testing;

namespace {

const char* kDiagonal2 = R"J({"surface": {"kind": "P1xP1"}, "weights": [{"class": "(1,1)", "weight": 2, "name": "D"}]})J";

bool same(const cohom::CohomologyVector& a, const cohom::CohomologyVector& b) {
  return a.h0 == b.h0 && a.h1 == b.h1 && a.h2 == b.h2;
}

std::vector<wps::WeightedSurface> models() {
  return {surface_file("p2_four_lines"), surface_file("p1xp1_diagonal_p2"), surface_file("p1xp1_diagonal_p3"),
          surface_file("f1_line_p2"),    surface_file("f1_line_p3"),        surface_file("p2_conic"),
          surface_file("bl1_conic"),     surface_file("bl6"),               surface_file("f2")};
}

}  // namespace

TEST_CASE("normalize carries exponents into the Picard part") {
  auto W = weighted(kDiagonal2);
  auto a = wps::normalize(W, {0, 0}, {3});
  CHECK(a.pic == DivClass{1, 1});
  CHECK(a.frac == std::vector<i64>{1});
  auto L = surface_file("p2_four_lines");
  auto b = wps::normalize(L, {2}, {0, 0, 0, 0});
  CHECK(b.pic == DivClass{2});
  auto c = wps::normalize(L, {0}, {2, 0, 0, 0});
  CHECK(c.pic == DivClass{1});
  CHECK(c.frac == std::vector<i64>{0, 0, 0, 0});
}

TEST_CASE("canonical class of the order") {
  auto L = surface_file("p2_four_lines");
  auto K = wps::k_A(L);
  CHECK(K == io::parse_class(L, "-3H + 1/2 L1 + 1/2 L2 + 1/2 L3 + 1/2 L4"));
  CHECK(wps::times(L, -2, K) == io::parse_class(L, "2H"));
  auto P2 = wps::unweighted(picard::projective_plane());
  CHECK(wps::k_A(P2).pic == P2.base.canonical);
  auto W = weighted(kDiagonal2);
  auto q = wps::to_qclass(W, wps::times(W, -1, wps::k_A(W)));
  CHECK(q == QDivClass{Q(3, 2), Q(3, 2)});
}

TEST_CASE("Hom sheaf examples") {
  auto W = weighted(kDiagonal2);
  CHECK(wps::hom_sheaf(W, wps::zero(W), io::parse_class(W, "(1,2) + 1/2 D")) == DivClass{1, 2});
  auto a = io::parse_class(W, "(3,-1) + 1/2 D");
  CHECK(wps::hom_sheaf(W, a, a) == DivClass{0, 0});
  auto L = surface_file("p2_four_lines");
  CHECK(wps::hom_sheaf(L, io::parse_class(L, "2H"), wps::times(L, -1, wps::k_A(L))) == DivClass{-3});
}

TEST_CASE("Ext examples on P2 weighted on four lines") {
  auto L = surface_file("p2_four_lines");
  auto mK = wps::times(L, -1, wps::k_A(L));
  CHECK(wps::ext_dims(L, io::parse_class(L, "2H"), mK).h2 == 1);
  auto e = wps::ext_dims(L, mK, mK);
  CHECK(e.h0 == 1);
  CHECK(e.h1 == 0);
  CHECK(e.h2 == 0);
}

TEST_CASE("classification examples") {
  CHECK(wps::classify(surface_file("p2_conic")).type == wps::FanoType::Fano);
  CHECK(wps::classify(surface_file("p1xp1_diagonal_p2")).type == wps::FanoType::Fano);
  CHECK(wps::classify(surface_file("f2")).type == wps::FanoType::AlmostFano);
  CHECK(wps::classify(surface_file("p2")).type == wps::FanoType::Fano);
}

TEST_CASE("Kodaira sign examples") {
  CHECK(wps::kodaira_negative(surface_file("p2_conic")));
  CHECK(wps::kodaira_negative(surface_file("p2")));
  // Three (1,1)-curves of weight 4: K + Delta = (1/4, 1/4).
  auto W = weighted(R"J({"surface": {"kind": "P1xP1"}, "weights": [
      {"class": "(1,1)", "weight": 4, "name": "A"}, {"class": "(1,1)", "weight": 4, "name": "B"},
      {"class": "(1,1)", "weight": 4, "name": "C"}]})J");
  CHECK_FALSE(wps::kodaira_negative(W));
}

TEST_CASE("weight sanity warnings") {
  auto F3 = wps::unweighted(picard::hirzebruch(3));
  auto w = wps::weight_sanity(F3);
  CHECK(std::any_of(w.begin(), w.end(), [](const wps::Warning& x) { return x.code == "anticanonical-not-nef"; }));
  auto F3C = weighted(R"({"surface": {"kind": "F", "s": 3}, "weights": [{"class": "C", "weight": 2, "name": "W"}]})");
  auto w2 = wps::weight_sanity(F3C);
  CHECK(std::any_of(w2.begin(), w2.end(), [](const wps::Warning& x) { return x.code == "weight-bound"; }));
  CHECK(wps::weight_sanity(surface_file("bl6")).empty());
}

TEST_CASE("normalize is idempotent and additive (200 seeded cases per model)") {
  std::mt19937_64 rng(21);
  for (auto& W : models()) {
    for (int k = 0; k < 200; ++k) {
      auto a = random_lclass(rng, W, 4), b = random_lclass(rng, W, 4);
      CHECK(wps::normalize(W, a.pic, a.frac) == a);
      std::vector<i64> raw(a.frac.size());
      for (size_t i = 0; i < raw.size(); ++i) raw[i] = a.frac[i] + b.frac[i];
      CHECK(wps::normalize(W, add(a.pic, b.pic), raw) == wps::plus(W, a, b));
      CHECK(wps::minus(W, wps::plus(W, a, b), b) == a);
    }
  }
}

TEST_CASE("twist invariance of Ext (200 seeded cases per model)") {
  std::mt19937_64 rng(22);
  for (auto& W : models()) {
    cohom::Memo memo;
    for (int k = 0; k < 200; ++k) {
      auto a = random_lclass(rng, W, 2), b = random_lclass(rng, W, 2), g = random_lclass(rng, W, 2);
      CHECK(same(wps::ext_dims(W, a, b, &memo), wps::ext_dims(W, wps::plus(W, a, g), wps::plus(W, b, g), &memo)));
    }
  }
}

TEST_CASE("Serre duality for the order (200 seeded cases per model)") {
  std::mt19937_64 rng(23);
  for (auto& W : models()) {
    cohom::Memo memo;
    const auto K = wps::k_A(W);
    for (int k = 0; k < 200; ++k) {
      auto a = random_lclass(rng, W, 2), b = random_lclass(rng, W, 2);
      auto e = wps::ext_dims(W, a, b, &memo);
      auto d = wps::ext_dims(W, b, wps::plus(W, a, K), &memo);
      CHECK(e.h0 == d.h2);
      CHECK(e.h1 == d.h1);
      CHECK(e.h2 == d.h0);
      CHECK(e.chi == e.h0 - e.h1 + e.h2);
    }
  }
}

TEST_CASE("Fano implies negative Kodaira dimension") {
  for (auto& W : models())
    if (wps::classify(W).type == wps::FanoType::Fano) CHECK(wps::kodaira_negative(W));
}
