#include "helpers.hpp"

using namespace glt;
using namespace testing;
using tilting::Summand;
using tilting::Verdict;

namespace {

struct Loaded {
  wps::WeightedSurface W;
  io::BundleFile bundle;
  std::optional<tilting::GenerationScript> script;
};

Loaded load(const std::string& name) {
  const std::string path = data("bundles/" + name + ".json");
  auto j = io::read_json_file(path);
  auto W = io::weighted_from_json(io::read_json_file(io::resolve(path, j.at("surface").get<std::string>())));
  auto B = io::bundle_from_json(j, W);
  std::optional<tilting::GenerationScript> s;
  if (B.script_path) {
    const std::string sp = io::resolve(path, *B.script_path);
    s = io::script_from_json(io::read_json_file(sp), W, sp);
  }
  return {W, B, s};
}

tilting::TiltingCandidate lines(const wps::WeightedSurface& W, std::initializer_list<const char*> classes) {
  tilting::TiltingCandidate T;
  for (auto* c : classes) T.summands.push_back(Summand::of_line(io::parse_class(W, c)));
  return T;
}

const std::vector<std::string> kReferenceBundles{"p1xp1_a", "p1xp1_b", "f2",        "bl1_dp",      "bl2_dp",
                                             "bl3_dp",    "bl4_dp",    "bl5_dp",      "bl6_dp",      "collinear",
                                             "p1xp1_ramified_p2", "p1xp1_ramified_p3", "f1_ramified_p2", "f1_ramified_p3", "four_lines_mutated"};

}  // namespace

TEST_CASE("partial tilting examples") {
  auto P2 = surface_file("p2");
  tilting::Context C(P2);
  CHECK(tilting::partial_tilting(C, lines(P2, {"0", "H", "2H"})).verdict == Verdict::Pass);
  auto bad = tilting::partial_tilting(C, lines(P2, {"0", "H", "3H"}));
  REQUIRE(bad.verdict == Verdict::Fail);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->from == 2);
  CHECK(bad.witness->to == 0);
  CHECK(bad.witness->degree == 2);
  CHECK(bad.witness->dim == 1);
  auto Q11 = surface_file("p1xp1");
  tilting::Context D(Q11);
  CHECK(tilting::partial_tilting(D, lines(Q11, {"0", "(1,0)", "(0,1)", "(1,1)"})).verdict == Verdict::Pass);
}

TEST_CASE("2-hereditary examples") {
  auto F2 = surface_file("f2");
  tilting::Context C(F2);
  auto h = tilting::two_hereditary(C, lines(F2, {"0", "F", "C + 2F", "C + 3F"}));
  CHECK(h.verdict == Verdict::Pass);
  REQUIRE(h.threshold.has_value());
  CHECK(*h.threshold <= 10);

  auto L = load("four_lines_interval");
  tilting::Context D(L.W);
  auto f = tilting::two_hereditary(D, L.bundle.candidate);
  REQUIRE(f.verdict == Verdict::Fail);
  REQUIRE(f.witness.has_value());
  CHECK(D.name(L.bundle.candidate.summands[f.witness->from]) == "O(2H)");
  CHECK(D.name(L.bundle.candidate.summands[f.witness->to]) == "O(0)");
  CHECK(f.witness->r == 1);
  CHECK(f.witness->degree == 2);
  CHECK(f.witness->dim == 1);

  for (const char* name : {"p2", "p1xp1", "bl3", "p2_four_lines"}) {
    auto W = surface_file(name);
    tilting::Context E(W);
    CHECK(tilting::two_hereditary(E, lines(W, {"0"})).verdict == Verdict::Pass);
  }
}

TEST_CASE("hereditary check needs a nef anticanonical class") {
  auto F3 = wps::unweighted(picard::hirzebruch(3));
  tilting::Context C(F3);
  auto h = tilting::two_hereditary(C, lines(F3, {"0", "F"}));
  CHECK(h.verdict == Verdict::Uncertified);
}

TEST_CASE("degree criterion on del Pezzo bundles") {
  auto L = load("bl6_dp");
  tilting::Context C(L.W);
  REQUIRE(tilting::dp_applicable(C, L.bundle.candidate));
  auto d = tilting::dp_criterion(C, L.bundle.candidate);
  CHECK(d.verdict == Verdict::Pass);
  std::set<std::string> eq;
  for (auto& p : d.equality_cases) {
    CHECK(p.status == "discharged");
    eq.insert(L.W.base.class_str(p.c1));
  }
  CHECK(eq.count("-H") == 1);
  CHECK(eq.count("-2H + E1 + E2 + E3") == 1);

  auto col = load("collinear");
  tilting::Context D(col.W);
  CHECK(tilting::dp_criterion(D, col.bundle.candidate).verdict == Verdict::Pass);

  auto P2 = surface_file("p2");
  tilting::Context E(P2);
  CHECK(tilting::dp_criterion(E, lines(P2, {"0"})).verdict == Verdict::Pass);
}

TEST_CASE("Euler matrix and expected rank") {
  auto p = load("p1xp1_ramified_p2");
  tilting::Context C(p.W);
  auto e = tilting::euler_matrix(C, p.bundle.candidate);
  CHECK(e.size == 6);
  CHECK(e.expected_rank == 6);
  CHECK(e.unimodular());
  auto t = load("bl6_dp");
  tilting::Context D(t.W);
  CHECK(tilting::euler_matrix(D, t.bundle.candidate).size == 9);
  CHECK(tilting::expected_rank(t.W) == 9);
  CHECK(tilting::expected_rank(surface_file("p2_four_lines")) == 17);
}

TEST_CASE("generation scripts") {
  for (const char* name : {"p1xp1_ramified_p2", "bl6_dp"}) {
    auto L = load(name);
    tilting::Context C(L.W);
    REQUIRE(L.script.has_value());
    auto g = tilting::check_generation_script(C, L.bundle.candidate, *L.script);
    CHECK(g.verified);
    CHECK(g.missing.empty());
  }
  auto L = load("p1xp1_ramified_p2");
  tilting::Context C(L.W);
  auto g = tilting::check_generation_script(C, L.bundle.candidate, tilting::GenerationScript{});
  CHECK_FALSE(g.verified);
  CHECK_FALSE(g.missing.empty());
}

TEST_CASE("malformed scripts are rejected") {
  auto W = surface_file("bl1");
  CHECK_THROWS_AS(io::script_from_json(io::json::parse(R"({"moves": [{"move": "Teleport"}]})"), W, "x"), Error);
  try {
    io::script_from_json(io::json::parse(R"({"moves": [{"move": "RestrictionKernel", "twist": "H"}]})"), W, "x");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedScript);
  }
}

TEST_CASE("reference bundles pass every check") {
  for (auto& name : kReferenceBundles) {
    CAPTURE(name);
    auto L = load(name);
    tilting::Context C(L.W);
    auto R = tilting::check(C, L.bundle.candidate, L.script ? &*L.script : nullptr);
    CHECK(R.partial.verdict == Verdict::Pass);
    CHECK(R.hereditary.verdict == Verdict::Pass);
    CHECK(R.euler.unimodular());
    CHECK(R.euler.size_matches());
    CHECK(R.generation.verified);
    if (R.dp) CHECK(R.dp->verdict == Verdict::Pass);
    CHECK(R.all_pass());
  }
}

TEST_CASE("witnesses replay through ext_dims and hereditary implies partial") {
  std::mt19937_64 rng(41);
  for (const char* name : {"p2", "p2_four_lines", "p1xp1_diagonal_p2", "bl2", "f1_line_p2"}) {
    auto W = surface_file(name);
    tilting::Context C(W);
    const auto K = wps::k_A(W);
    for (int k = 0; k < 40; ++k) {
      tilting::TiltingCandidate T;
      std::set<wps::LClass> seen;
      const int n = static_cast<int>(uniform(rng, 1, 4));
      while (static_cast<int>(T.summands.size()) < n) {
        auto a = random_lclass(rng, W, 2);
        if (seen.insert(a).second) T.summands.push_back(Summand::of_line(a));
      }
      auto p = tilting::partial_tilting(C, T);
      auto h = tilting::two_hereditary(C, T, 60);
      if (h.verdict == Verdict::Pass) CHECK(p.verdict == Verdict::Pass);
      for (auto* w : {p.witness ? &*p.witness : nullptr, h.witness ? &*h.witness : nullptr}) {
        if (!w) continue;
        auto a = T.summands[w->from].line;
        auto b = wps::minus(W, T.summands[w->to].line, wps::times(W, w->r, K));
        auto e = wps::ext_dims(W, a, b);
        const i64 dims[3] = {e.h0, e.h1, e.h2};
        CHECK(dims[w->degree] == w->dim);
        CHECK(w->dim > 0);
      }
    }
  }
}

TEST_CASE("search examples") {
  auto F2 = surface_file("f2");
  tilting::Context C(F2);
  tilting::SearchBox box{{{0, 1}, {0, 3}}, {}};
  tilting::SearchOptions opt;
  opt.max_summands = 4;
  auto out = tilting::search(C, box, opt);
  auto target = lines(F2, {"0", "F", "C + 2F", "C + 3F"});
  bool found = false;
  for (auto& r : out.results) found |= r.candidate.summands == target.summands;
  CHECK(found);

  auto L = surface_file("p2_four_lines");
  tilting::Context D(L);
  tilting::SearchOptions o2;
  auto four = tilting::search(D, tilting::SearchBox{{{0, 2}}, {}}, o2);
  CHECK(four.target_size == 17);
  CHECK(four.results.empty());

  auto P2 = surface_file("p2");
  tilting::Context E(P2);
  CHECK(tilting::search(E, tilting::SearchBox{{{1, 0}}, {}}, o2).results.empty());
}

TEST_CASE("search output does not depend on the worker count") {
  auto B = surface_file("bl1");
  auto run = [&](int workers, tilting::SearchBox box) {
    tilting::Context C(B);
    tilting::SearchOptions opt;
    opt.workers = workers;
    opt.require = {wps::zero(B)};
    std::vector<std::vector<wps::LClass>> out;
    for (auto& r : tilting::search(C, box, opt).results) {
      std::vector<wps::LClass> v;
      for (auto& s : r.candidate.summands) v.push_back(s.line);
      out.push_back(v);
    }
    return out;
  };
  tilting::SearchBox box{{{0, 2}, {-1, 1}}, {}};
  auto one = run(1, box);
  CHECK_FALSE(one.empty());
  CHECK(run(3, box) == one);
}
