#include "glt/skewgroup.hpp"

#include "helpers.hpp"

#include <numeric>

using namespace glt;
using namespace testing;
using skewgroup::CoverModel;

namespace {

DivClass up(const CoverModel& M, const char* text) { return io::parse_divclass(M.upstairs, text); }

std::set<std::string> descriptors(const std::vector<skewgroup::InducedSummand>& v) {
  std::set<std::string> out;
  for (auto& s : v) out.insert(s.descriptor);
  return out;
}

}  // namespace

TEST_CASE("stabilizers and orbits on the conic cover") {
  auto M = skewgroup::builtin_cover("conic_i");
  CHECK(skewgroup::stabilizer(M, up(M, "(1,0)")).size() == 1);
  CHECK(skewgroup::stabilizer(M, up(M, "(1,1)")).size() == 2);
  CHECK(skewgroup::orbit(M, up(M, "(1,0)")) == std::vector<DivClass>{{0, 1}, {1, 0}});
  CHECK(skewgroup::orbit(M, up(M, "(2,2)")).size() == 1);
}

TEST_CASE("induced decomposition examples") {
  auto M = skewgroup::builtin_cover("conic_i");
  auto a = skewgroup::induce_decompose(M, up(M, "(1,0)"));
  REQUIRE(a.size() == 1);
  CHECK(a[0].rank == 2);
  CHECK(a[0].orbit.size() == 2);
  auto b = skewgroup::induce_decompose(M, up(M, "(1,1)"));
  REQUIRE(b.size() == 2);
  CHECK(b[0].rank == 1);
  CHECK(b[0].chi != b[1].chi);
  CHECK(b[0].descriptor != b[1].descriptor);
}

TEST_CASE("isotypic split of H0((1,1)) under the swap is (3,1)") {
  auto M = skewgroup::builtin_cover("conic_i");
  CHECK(skewgroup::isotypic_split(M, up(M, "(1,1)")) == std::vector<i64>{3, 1});
  CHECK(skewgroup::isotypic_split(M, up(M, "0")) == std::vector<i64>{1, 0});
  CHECK_THROWS_AS(skewgroup::isotypic_split(M, up(M, "(1,0)")), Error);
}

TEST_CASE("Hom dimensions between induced summands") {
  auto M = skewgroup::builtin_cover("conic_i");
  const skewgroup::Character triv{0};
  CHECK(skewgroup::induced_hom_dims(M, up(M, "0"), triv, up(M, "0"), triv) == 1);
  CHECK(skewgroup::induced_hom_dims(M, up(M, "0"), triv, up(M, "0"), {1}) == 0);
  CHECK(skewgroup::induced_hom_dims(M, up(M, "0"), triv, up(M, "(1,1)"), triv) == 3);
  CHECK_THROWS_AS(skewgroup::induced_hom_dims(M, up(M, "0"), triv, up(M, "(1,0)"), triv), Error);
  auto o = skewgroup::induce_decompose(M, up(M, "0"));
  auto l = skewgroup::induce_decompose(M, up(M, "(1,0)"));
  REQUIRE(l.size() == 1);
  for (auto& s : o) CHECK(skewgroup::induced_hom_dim(M, s, l[0]) == 2);
}

TEST_CASE("rank bookkeeping and orbit invariance (200 seeded classes per cover)") {
  std::mt19937_64 rng(61);
  for (auto& name : skewgroup::builtin_cover_names()) {
    CAPTURE(name);
    auto M = skewgroup::builtin_cover(name);
    const auto elems = M.group.elements();
    for (int k = 0; k < 200; ++k) {
      auto L = random_class(rng, M.upstairs.rank(), 3);
      auto d = skewgroup::induce_decompose(M, L);
      const i64 total = std::accumulate(d.begin(), d.end(), i64{0},
                                        [](i64 s, const skewgroup::InducedSummand& x) { return s + x.rank; });
      CHECK(total == static_cast<i64>(M.group.size()));
      CHECK(d.size() * d.front().orbit.size() == M.group.size());
      const auto& g = elems[static_cast<size_t>(uniform(rng, 0, static_cast<i64>(elems.size()) - 1))];
      CHECK(descriptors(skewgroup::induce_decompose(M, skewgroup::act(M, g, L))) == descriptors(d));
    }
  }
}

TEST_CASE("isotypic pieces add up to h0 (invariant classes on every cover)") {
  for (auto& name : skewgroup::builtin_cover_names()) {
    CAPTURE(name);
    auto M = skewgroup::builtin_cover(name);
    std::set<DivClass> invariant;
    for (i64 m = 0; m <= 3; ++m) {
      invariant.insert(scale(-m, M.upstairs.canonical));
      for (auto& r : M.ramification) invariant.insert(scale(m, r.upstairs));
    }
    for (auto& D : invariant) {
      if (skewgroup::stabilizer(M, D).size() != M.group.size()) continue;
      auto split = skewgroup::isotypic_split(M, D);
      const i64 sum = std::accumulate(split.begin(), split.end(), i64{0});
      CHECK(sum == cohom::cohomology(M.upstairs, D).h0);
      CHECK(sum == static_cast<i64>(skewgroup::monomials(M, D).size()));
    }
  }
}

TEST_CASE("every builtin cover yields a tilting bundle downstairs") {
  for (auto& name : skewgroup::builtin_cover_names()) {
    CAPTURE(name);
    auto M = skewgroup::builtin_cover(name);
    CHECK(skewgroup::star_condition(M).holds);
    auto R = skewgroup::induced_tilting(M);
    CHECK(R.upstairs.all_pass());
    CHECK(abs(R.det) == 1);
    CHECK(static_cast<i64>(R.summands.size()) == R.expected_rank);
    CHECK(R.all_pass());
    auto j = skewgroup::induced_report_json(M, R);
    CHECK(j.at("all_pass").get<bool>());
  }
}

TEST_CASE("a bundle that is not G-stable is rejected") {
  auto M = skewgroup::builtin_cover("conic_i");
  M.upstairs_bundle = {"0", "(1,0)"};
  try {
    skewgroup::induced_tilting(M);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotGStable);
  }
}

TEST_CASE("non-cyclic stabilizers need an asserted equivariant structure") {
  auto M = skewgroup::builtin_cover("polygon_p2_i0");
  M.equivariant_asserted = false;
  try {
    skewgroup::induce_decompose(M, up(M, "0"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoEquivariantStructure);
  }
}

TEST_CASE("local character condition") {
  auto M = skewgroup::builtin_cover("polygon_p2_i0");
  REQUIRE(M.singular_points.has_value());
  for (auto& p : *M.singular_points)
    for (auto& c : p.characters) c = {1, 0};
  auto s = skewgroup::star_condition(M);
  CHECK_FALSE(s.holds);
  CHECK_FALSE(s.witnesses.empty());
  M.singular_points.reset();
  try {
    skewgroup::star_condition(M);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingData);
  }
}

TEST_CASE("malformed covers fail validation") {
  auto j = skewgroup::builtin_cover_json("conic_i");
  j["pic_images"] = io::json::array({io::json::array({"(1,0)", "(1,1)"})});
  CHECK_THROWS_AS(skewgroup::cover_from_json(j), Error);
  auto k = skewgroup::builtin_cover_json("conic_i");
  k["ramification"][0]["index"] = 3;
  CHECK_THROWS_AS(skewgroup::cover_from_json(k), Error);
}
