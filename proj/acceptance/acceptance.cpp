// One pass/fail line per acceptance criterion; exit status 1 if any criterion fails.
#include "glt/anticanon.hpp"
#include "glt/io.hpp"
#include "glt/skewgroup.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

using namespace glt;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

std::string data(const std::string& rel) { return std::string(GLT_DATA_DIR) + "/" + rel; }

wps::WeightedSurface surface_file(const std::string& name) {
  return io::weighted_from_json(io::read_json_file(data("surfaces/" + name + ".json")));
}

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

i64 uniform(std::mt19937_64& rng, i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(rng); }

wps::LClass random_lclass(std::mt19937_64& rng, const wps::WeightedSurface& W, i64 bound) {
  DivClass d(W.base.rank());
  for (auto& x : d) x = uniform(rng, -bound, bound);
  std::vector<i64> raw;
  for (auto& w : W.weighted) raw.push_back(uniform(rng, -2 * w.weight, 2 * w.weight));
  return wps::normalize(W, d, raw);
}

bool same(const cohom::CohomologyVector& a, const cohom::CohomologyVector& b) {
  return a.h0 == b.h0 && a.h1 == b.h1 && a.h2 == b.h2 && a.chi == b.chi;
}

// ---------------------------------------------------------------------------

void oracle_equivalence(Outcome& out) {
  std::vector<picard::SurfaceModel> models;
  for (int n = 1; n <= 6; ++n) models.push_back(picard::blowup_general(n));
  models.push_back(surface_file("bl3_collinear").base);
  std::mt19937_64 rng(1);
  size_t n = 0;
  for (auto& S : models)
    for (int k = 0; k < 200; ++k, ++n) {
      DivClass d(S.rank());
      d[0] = uniform(rng, -6, 6);
      for (size_t i = 1; i < d.size(); ++i) d[i] = uniform(rng, -3, 3);
      out.expect(same(cohom::cohomology(S, d), cohom::cohomology_oracle(S, d, 1000 + k)),
                 S.fingerprint() + " " + S.class_str(d));
    }
  out.detail << n << " classes on " << models.size() << " configurations";
}

void vanishing_cases(Outcome& out) {
  size_t cases = 0;
  auto vanish = [&](const picard::SurfaceModel& S, const DivClass& d) {
    auto v = cohom::cohomology(S, d);
    out.expect(v.h1 == 0 && v.h2 == 0, S.class_str(d));
    ++cases;
  };
  for (int r = 1; r <= 6; ++r) {
    auto S = picard::blowup_general(r);
    const size_t n = S.rank();
    auto e_sum = [&](int s) {
      DivClass d(n, 0);
      for (int i = 1; i <= s; ++i) d[static_cast<size_t>(i)] = 1;
      return d;
    };
    // E_1 + ... + E_s - E_{s+1}
    for (int s = 0; s < r; ++s) {
      DivClass d = e_sum(s);
      d[static_cast<size_t>(s) + 1] = -1;
      vanish(S, d);
    }
    // H - E_1 - ... - E_s, s <= 3
    for (int s = 0; s <= std::min(3, r); ++s) {
      DivClass d = scale(-1, e_sum(s));
      d[0] = 1;
      vanish(S, d);
    }
    // 2H - E_1 - ... - E_s, s <= 6
    for (int s = 0; s <= r; ++s) {
      DivClass d = scale(-1, e_sum(s));
      d[0] = 2;
      vanish(S, d);
    }
    // -tH + E_1 + ... + E_s, t <= 2
    for (int s = 0; s <= r; ++s)
      for (int t = -6; t <= 2; ++t) {
        DivClass d = e_sum(s);
        d[0] = -t;
        vanish(S, d);
      }
  }
  auto F1 = picard::blowup_general(1);
  for (i64 a = -10; a <= 10; ++a)
    for (i64 b = -10; b <= 10; ++b)
      if ((a + b > -1 && b <= 1) || a + b == -1 || (a == -2 && b == 0)) vanish(F1, {a, b});
  out.detail << cases << " cases";
}

void reference_bundles(Outcome& out) {
  const std::vector<std::string> names{"p1xp1_a", "p1xp1_b", "f2",        "bl1_dp",      "bl2_dp",   "bl3_dp",
                                       "bl4_dp",    "bl5_dp",    "bl6_dp",      "collinear", "p1xp1_ramified_p2", "p1xp1_ramified_p3",
                                       "f1_ramified_p2",  "f1_ramified_p3"};
  i64 worst = 0;
  for (auto& name : names) {
    auto L = load(name);
    tilting::Context C(L.W);
    auto R = tilting::check(C, L.bundle.candidate, L.script ? &*L.script : nullptr);
    out.expect(R.partial.verdict == tilting::Verdict::Pass, name + " partial");
    out.expect(R.hereditary.verdict == tilting::Verdict::Pass, name + " hereditary");
    out.expect(R.hereditary.threshold && *R.hereditary.threshold <= 10, name + " r0 <= 10");
    if (R.hereditary.threshold) worst = std::max(worst, *R.hereditary.threshold);
    out.expect(R.euler.unimodular() && R.euler.size_matches(), name + " Euler matrix");
    out.expect(R.generation.verified, name + " generation");
    out.expect(R.all_pass(), name + " all_pass");
  }
  out.detail << names.size() << " bundles, max r0 = " << worst;
}

void negative_controls(Outcome& out) {
  auto L = load("four_lines_interval");
  tilting::Context C(L.W);
  const auto& T = L.bundle.candidate;
  out.expect(tilting::partial_tilting(C, T).verdict == tilting::Verdict::Pass, "[0,2H] partial tilting");
  auto h = tilting::two_hereditary(C, T);
  out.expect(h.verdict == tilting::Verdict::Fail && h.witness.has_value(), "[0,2H] not 2-hereditary");
  if (h.witness) {
    const auto& w = *h.witness;
    out.expect(C.name(T.summands[w.from]) == "O(2H)" && C.name(T.summands[w.to]) == "O(0)", "witness pair (2H, 0)");
    out.expect(w.r == 1 && w.degree == 2 && w.dim == 1, "witness r = 1, degree 2, dimension 1");
    out.detail << "witness Ext^" << w.degree << "(" << C.name(T.summands[w.from]) << ", "
               << C.name(T.summands[w.to]) << " - " << w.r << "K) = " << w.dim << "; ";
  }
  auto P2 = surface_file("p2");
  tilting::Context D(P2);
  tilting::TiltingCandidate bad;
  for (const char* c : {"0", "H", "3H"}) bad.summands.push_back(tilting::Summand::of_line(io::parse_class(P2, c)));
  auto p = tilting::partial_tilting(D, bad);
  out.expect(p.verdict == tilting::Verdict::Fail && p.witness && p.witness->degree == 2 && p.witness->dim == 1,
             "O + O(1) + O(3) fails with Ext^2 = 1");
  out.detail << "O+O(1)+O(3): Ext^2 = " << (p.witness ? p.witness->dim : 0);
}

void four_lines(Outcome& out) {
  auto L = load("four_lines_mutated");
  tilting::Context C(L.W);
  auto R = tilting::check(C, L.bundle.candidate, L.script ? &*L.script : nullptr);
  out.expect(R.all_pass(), "Omega + 15 lines + Xi passes");
  out.expect(R.euler.size == 17 && R.euler.expected_rank == 17, "17 summands = expected rank");
  const i64 window = R.hereditary.window_end;

  auto interval = load("four_lines_interval");
  std::vector<tilting::Summand> lines = interval.bundle.candidate.summands;
  auto is = [&](const tilting::Summand& s, const char* text) {
    return s.line == io::parse_class(L.W, text);
  };
  const auto Om = tilting::Summand::of_presented("Omega"), Xi = tilting::Summand::of_presented("Xi");
  size_t entries = 0;
  for (i64 r = 0; r <= window; ++r) {
    for (auto& D : lines) {
      for (auto& Dp : lines) {
        auto e = C.ext(D, Dp, r);
        const bool special = r == 1 && is(D, "2H") && is(Dp, "0");
        out.expect(e.h1 == 0 && e.h2 == (special ? 1 : 0), "Ext(O(D), O(D' - rK))");
        ++entries;
      }
      auto a = C.ext(Om, D, r), b = C.ext(D, Om, r), c = C.ext(Xi, D, r), d = C.ext(D, Xi, r);
      out.expect(a.h2 == 0 && b.h2 == 0 && c.h2 == 0 && d.h2 == 0, "Ext^2 with Omega or Xi");
      out.expect(a.h1 == ((r == 1 && is(D, "0")) ? 1 : 0), "Ext^1(Omega, O(D - rK))");
      out.expect(b.h1 == ((r == 0 && is(D, "2H")) ? 1 : 0), "Ext^1(O(D), Omega(-rK))");
      out.expect(c.h1 == ((r == 0 && is(D, "0")) ? 1 : 0), "Ext^1(Xi, O(D - rK))");
      out.expect(d.h1 == ((r == 1 && is(D, "2H")) ? 1 : 0), "Ext^1(O(D), Xi(-rK))");
      entries += 4;
    }
    for (auto& [A, B] : std::vector<std::pair<tilting::Summand, tilting::Summand>>{{Om, Om}, {Xi, Xi}, {Om, Xi}, {Xi, Om}}) {
      auto e = C.ext(A, B, r);
      out.expect(e.h1 == 0 && e.h2 == 0, C.name(A) + " vs " + C.name(B));
      ++entries;
    }
    auto lift = coxquiver::xi_omega_liftability(C.engine(), r);
    out.expect(lift.ok(), "syzygy liftability at r = " + std::to_string(r));
  }
  out.detail << entries << " table entries, liftability for r in [0, " << window << "]";
}

using Edge = std::tuple<int, int, std::string>;

void quivers(Outcome& out) {
  struct Case {
    const char* bundle;
    std::multiset<Edge> expected;
  };
  const std::vector<Case> cases{
      {"p1xp1_ramified_p2",
       {{0, 1, "t"}, {0, 3, "x"}, {0, 3, "y"}, {1, 2, "t"}, {1, 4, "x"}, {1, 4, "y"},
        {2, 5, "x"}, {2, 5, "y"}, {3, 2, "u"}, {3, 2, "v"}, {3, 4, "t"}, {4, 5, "t"}}},
      {"f1_ramified_p2",
       {{1, 2, "x"}, {1, 0, "u"}, {2, 3, "x"}, {2, 4, "y"}, {2, 4, "z"}, {0, 3, "y'"},
        {0, 3, "z'"}, {3, 4, "x"}, {3, 5, "y"}, {3, 5, "z"}, {4, 5, "x"}}}};
  for (auto& c : cases) {
    auto L = load(c.bundle);
    tilting::Context C(L.W);
    std::vector<wps::LClass> lines;
    for (auto& s : L.bundle.candidate.summands) lines.push_back(s.line);
    auto q = coxquiver::quiver(C.engine(), lines, L.bundle.vertex_names);
    std::multiset<Edge> got;
    for (auto& a : q.arrows) got.insert({a.from, a.to, a.label});
    out.expect(got == c.expected, std::string(c.bundle) + " arrows");
    out.expect(q.hilbert_ok, std::string(c.bundle) + " Hilbert check");
    auto arrow = [&](int f, int t, const char* l) { return coxquiver::find_arrow(q, f, t, l); };
    if (std::string(c.bundle) == "p1xp1_ramified_p2") {
      // t^2 = ux + vy, and the commutations through (0,1) + 1/2 D
      out.expect(coxquiver::relation_holds(C.engine(), q,
                                           {{{arrow(0, 1, "t"), arrow(1, 2, "t")}, 1},
                                            {{arrow(0, 3, "x"), arrow(3, 2, "u")}, -1},
                                            {{arrow(0, 3, "y"), arrow(3, 2, "v")}, -1}}),
                 "t^2 = ux + vy");
      for (const char* v : {"x", "y"})
        out.expect(coxquiver::relation_holds(C.engine(), q,
                                             {{{arrow(0, 1, "t"), arrow(1, 4, v)}, 1},
                                              {{arrow(0, 3, v), arrow(3, 4, "t")}, -1}}),
                   std::string("xt = tx for ") + v);
    } else {
      // uy'x = xy and uz'x = xz, from 0 to H + 1/2 L
      for (auto [p, s] : {std::pair{"y'", "y"}, std::pair{"z'", "z"}})
        out.expect(coxquiver::relation_holds(C.engine(), q,
                                             {{{arrow(1, 0, "u"), arrow(0, 3, p), arrow(3, 4, "x")}, 1},
                                              {{arrow(1, 2, "x"), arrow(2, 4, s)}, -1}}),
                   std::string("u") + p + "x = x" + s);
      out.expect(coxquiver::relations_text(q).find("uy'x = xy") != std::string::npos, "relation text uy'x = xy");
    }
    out.detail << c.bundle << ": " << q.vertices.size() << " vertices, " << q.arrows.size() << " arrows, "
               << q.relations.size() << " relations; ";
  }
}

void skew_group(Outcome& out) {
  auto ci = skewgroup::builtin_cover("conic_i");
  auto R = skewgroup::induced_tilting(ci);
  std::multiset<i64> ranks;
  for (auto& s : R.summands) ranks.insert(s.rank);
  out.expect(R.summands.size() == 5 && ranks == std::multiset<i64>{1, 1, 1, 1, 2}, "conic i: ranks (1,1,2,1,1)");
  out.expect(R.euler.size() == 5 && abs(R.det) == 1, "conic i: unimodular 5x5");
  out.expect(R.all_pass(), "conic i passes");
  auto cii = skewgroup::induced_tilting(skewgroup::builtin_cover("conic_ii"));
  out.expect(cii.summands.size() == 6 && cii.all_pass(), "conic ii: 6 summands");
  for (int p : {2, 3})
    for (int i = 0; i <= 3; ++i) {
      auto M = skewgroup::builtin_cover("polygon_p" + std::to_string(p) + "_i" + std::to_string(i));
      auto P = skewgroup::induced_tilting(M);
      out.expect(static_cast<int>(P.summands.size()) == p * p * (i + 3) && P.all_pass(),
                 "polygon p=" + std::to_string(p) + " i=" + std::to_string(i));
      out.expect(skewgroup::star_condition(M).holds, "local character condition");
    }
  auto split = skewgroup::isotypic_split(ci, io::parse_divclass(ci.upstairs, "(1,1)"));
  out.expect(split == std::vector<i64>{3, 1}, "isotypic split (3,1)");
  out.detail << "conic i: 5 summands det " << R.det << "; conic ii: 6; polygons p^2(i+3); split (3,1)";
}

void nine_points(Outcome& out) {
  const anticanon::CubicGroupModel gm{anticanon::GroupKind::Gm}, ga{anticanon::GroupKind::Ga};
  picard::PointConfiguration none;
  none.count = 9;
  std::vector<Q> p{2, 3, 5, 7, 11, 13, 17, 19, Q(1, 4849845)};
  out.expect(anticanon::almost_general_9(gm, p, none) == anticanon::Verdict::AlmostGeneral, "Gm product 2");
  p.back() = Q(-1, 9699690);
  out.expect(anticanon::almost_general_9(gm, p, none) == anticanon::Verdict::NotAlmostGeneral, "Gm product -1");
  out.expect(anticanon::almost_general_9(ga, {1, 2, 3, 4, 5, 6, 7, 8, -36}, none) ==
                 anticanon::Verdict::NotAlmostGeneral,
             "Ga sum 0");
  std::mt19937_64 rng(8);
  auto det3 = [](const std::array<Q, 3>& a, const std::array<Q, 3>& b, const std::array<Q, 3>& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
  };
  for (int k = 0; k < 200; ++k) {
    i64 x = 0, y = 0;
    while (x == 0) x = uniform(rng, -9, 9);
    while (y == 0) y = uniform(rng, -9, 9);
    Q a(x, uniform(rng, 1, 7)), b(y, uniform(rng, 1, 7));
    out.expect(det3(anticanon::cubic_point(gm, a), anticanon::cubic_point(gm, b),
                    anticanon::cubic_point(gm, 1 / (a * b))) == 0,
               "collinear triple with product 1");
  }
  out.detail << "3 verdicts, 200 triples";
}

void properties(Outcome& out) {
  std::vector<wps::WeightedSurface> models{surface_file("p2_four_lines"),     surface_file("p1xp1_diagonal_p2"),
                                           surface_file("p1xp1_diagonal_p3"), surface_file("f1_line_p2"),
                                           surface_file("f1_line_p3"),        surface_file("p2_conic"),
                                           surface_file("bl1_conic"),         surface_file("bl6"),
                                           surface_file("f2")};
  std::mt19937_64 rng(9);
  size_t n = 0;
  for (auto& W : models) {
    cohom::Memo memo;
    const auto K = wps::k_A(W);
    for (int k = 0; k < 200; ++k, ++n) {
      auto a = random_lclass(rng, W, 2), b = random_lclass(rng, W, 2), g = random_lclass(rng, W, 2);
      auto e = wps::ext_dims(W, a, b, &memo);
      auto d = wps::ext_dims(W, b, wps::plus(W, a, K), &memo);
      out.expect(e.h0 == d.h2 && e.h1 == d.h1 && e.h2 == d.h0, "Serre duality");
      out.expect(same(e, wps::ext_dims(W, wps::plus(W, a, g), wps::plus(W, b, g), &memo)), "twist invariance");
      out.expect(e.chi == e.h0 - e.h1 + e.h2, "chi");
      out.expect(wps::normalize(W, a.pic, a.frac) == a, "normalize idempotent");
    }
  }
  out.detail << n << " cases on " << models.size() << " models";
}

}  // namespace


int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;  // seconds
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> all{
      {1, "oracle equivalence", 30, oracle_equivalence},
      {2, "vanishing cases", 1, vanishing_cases},
      {3, "reference bundles", 120, reference_bundles},
      {4, "negative controls", 60, negative_controls},
      {5, "four lines with weight 2", 60, four_lines},
      {6, "quivers", 60, quivers},
      {7, "skew group", 120, skew_group},
      {8, "nine points", 60, nine_points},
      {9, "property suites", 120, properties},
  };
  int failures = 0;
  for (auto& c : all) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.ok = false;
      out.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget) {
      out.ok = false;
      out.detail << " (over the " << c.budget << " s budget)";
    }
    failures += !out.ok;
    std::printf("criterion %d %-26s %s  %7.2fs  %s\n", c.id, c.name, out.ok ? "PASS" : "FAIL", secs,
                out.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
