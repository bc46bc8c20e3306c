#include "glt/io.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace glt::io {

using picard::Kind;
using picard::SurfaceModel;
using tilting::FormalObject;
using tilting::Move;
using wps::LClass;
using wps::WeightedSurface;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::ParseError, path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ParseError, path + ": " + e.what());
  }
}

std::string resolve(const std::string& base_file, const std::string& rel) {
  std::filesystem::path p(rel);
  if (p.is_absolute()) return rel;
  return (std::filesystem::path(base_file).parent_path() / p).lexically_normal().string();
}

// ---------------------------------------------------------------------------
// Class expressions

namespace {

struct Term {
  Q coeff = 1;
  std::string atom;
};

std::vector<Term> split_terms(const std::string& text) {
  std::vector<Term> out;
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  require(!s.empty(), ErrorKind::ParseError, "empty class expression");
  size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!out.empty()) {
      fail(ErrorKind::ParseError, "expected + or - in '" + text + "'");
    }
    size_t j = i;
    int depth = 0;
    while (j < s.size() && (depth > 0 || (s[j] != '+' && s[j] != '-'))) {
      if (s[j] == '(') ++depth;
      if (s[j] == ')') --depth;
      ++j;
    }
    std::string body = s.substr(i, j - i);
    require(!body.empty(), ErrorKind::ParseError, "dangling sign in '" + text + "'");
    static const std::regex re(R"(^(\d+(?:/\d+)?)?\*?(.*)$)");
    std::smatch m;
    std::regex_match(body, m, re);
    Term t;
    t.coeff = m[1].matched ? parse_q(m[1].str()) : Q(1);
    t.coeff *= sign;
    t.atom = m[2].str();
    if (t.atom.empty()) {
      require(t.coeff == 0, ErrorKind::ParseError, "bare constant in class expression '" + text + "'");
      t.atom = "0";
    }
    out.push_back(t);
    i = j;
  }
  return out;
}

i64 integral(const Q& q, const std::string& what) {
  require(boost::multiprecision::denominator(q) == 1, ErrorKind::ParseError,
          "non-integral coefficient on " + what);
  return static_cast<i64>(boost::multiprecision::numerator(q));
}

// Adds coeff * atom to (pic, frac); frac counts multiples of 1/p_i.
void add_atom(const WeightedSurface* W, const SurfaceModel& S, const Term& t, DivClass& pic,
              std::vector<i64>& frac) {
  const std::string& a = t.atom;
  if (a == "0") return;
  if (a.front() == '(') {
    require(a.back() == ')', ErrorKind::ParseError, "unbalanced vector literal " + a);
    std::vector<i64> v;
    std::stringstream ss(a.substr(1, a.size() - 2));
    std::string part;
    while (std::getline(ss, part, ',')) {
      try {
        v.push_back(std::stoll(part));
      } catch (...) {
        fail(ErrorKind::ParseError, "bad vector literal " + a);
      }
    }
    require(v.size() == S.rank(), ErrorKind::ParseError, "vector literal " + a + " has the wrong length");
    const i64 k = integral(t.coeff, a);
    for (size_t i = 0; i < v.size(); ++i) pic[i] += k * v[i];
    return;
  }
  if (W)
    for (size_t i = 0; i < W->count(); ++i)
      if (W->weighted[i].name == a) {
        Q units = t.coeff * W->weighted[i].weight;
        frac[i] += integral(units, a + " (multiples of 1/" + std::to_string(W->weighted[i].weight) + ")");
        return;
      }
  for (size_t i = 0; i < S.basis_labels.size(); ++i)
    if (S.basis_labels[i] == a) {
      pic[i] += integral(t.coeff, a);
      return;
    }
  static const std::regex multi(R"(^E([1-9]{2,})$)");
  std::smatch m;
  if (S.kind == Kind::BlowupP2 && std::regex_match(a, m, multi)) {
    const i64 k = integral(t.coeff, a);
    for (char c : m[1].str()) {
      const int idx = c - '0';
      require(idx <= S.config.count, ErrorKind::ParseError, a + " names a point that is not blown up");
      pic[static_cast<size_t>(idx)] += k;
    }
    return;
  }
  fail(ErrorKind::ParseError, "unknown symbol '" + a + "'");
}

}  // namespace

LClass parse_class(const WeightedSurface& W, const std::string& text) {
  DivClass pic = W.base.zero();
  std::vector<i64> frac(W.count(), 0);
  for (auto& t : split_terms(text)) add_atom(&W, W.base, t, pic, frac);
  return wps::normalize(W, pic, frac);
}

DivClass parse_divclass(const SurfaceModel& S, const std::string& text) {
  DivClass pic = S.zero();
  std::vector<i64> frac;
  for (auto& t : split_terms(text)) add_atom(nullptr, S, t, pic, frac);
  return pic;
}

// ---------------------------------------------------------------------------
// Surfaces

namespace {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("field '") + key + "': " + e.what());
  }
}

std::vector<int> zero_based(const json& arr, int count, const char* what) {
  std::vector<int> out;
  for (auto& v : arr) {
    require(v.is_number_integer(), ErrorKind::ParseError, std::string(what) + ": point indices are integers");
    int i = v.get<int>();
    require(i >= 1 && i <= count, ErrorKind::ParseError,
            std::string(what) + ": point index " + std::to_string(i) + " outside 1.." + std::to_string(count));
    out.push_back(i - 1);
  }
  return out;
}

}  // namespace

picard::PointConfiguration points_from_json(const json& j, int count) {
  picard::PointConfiguration c;
  c.count = count;
  require(c.count >= 0 && c.count <= 9, ErrorKind::ParseError, "surface.points must be in 0..9");
  if (j.contains("collinear"))
    for (auto& t : j.at("collinear")) {
      auto v = zero_based(t, c.count, "collinear");
      require(v.size() == 3, ErrorKind::ParseError, "collinear: entries are triples");
      c.collinear_triples.push_back({v[0], v[1], v[2]});
    }
  if (j.contains("conics"))
    for (auto& t : j.at("conics")) {
      auto v = zero_based(t, c.count, "conics");
      require(v.size() == 6, ErrorKind::ParseError, "conics: entries are sextuples");
      c.conic_sextuples.push_back({v[0], v[1], v[2], v[3], v[4], v[5]});
    }
  c.points_general_on_cubic = get_or<bool>(j, "general_on_cubic", true);
  if (j.contains("singular_cubic_nodes"))
    c.singular_cubic_nodes = zero_based(j.at("singular_cubic_nodes"), c.count, "singular_cubic_nodes");
  c.infinitely_near = get_or<bool>(j, "infinitely_near", false);
  return c;
}

SurfaceModel surface_from_json(const json& j) {
  require(j.is_object(), ErrorKind::ParseError, "surface: expected an object");
  const std::string kind = get_or<std::string>(j, "kind", "");
  const int bound = get_or<int>(j, "inventory_bound", 6);
  if (kind == "P2") return picard::projective_plane();
  if (kind == "P1xP1") return picard::p1xp1();
  if (kind == "F") return picard::hirzebruch(get_or<int>(j, "s", 1));
  require(kind == "blowup", ErrorKind::ParseError, "surface.kind must be P2, P1xP1, F or blowup");
  return picard::blowup(points_from_json(j, get_or<int>(j, "points", 0)), bound);
}

WeightedSurface weighted_from_json(const json& j) {
  require(j.is_object() && j.contains("surface"), ErrorKind::ParseError,
          "weighted surface: missing 'surface'");
  SurfaceModel S = surface_from_json(j.at("surface"));
  std::vector<wps::WeightedDivisor> ws;
  if (j.contains("weights"))
    for (auto& w : j.at("weights")) {
      wps::WeightedDivisor d;
      d.cls = parse_divclass(S, get_or<std::string>(w, "class", ""));
      d.weight = get_or<int>(w, "weight", 2);
      d.name = get_or<std::string>(w, "name", "");
      d.rational = get_or<bool>(w, "rational", true);
      d.snc_assumed = get_or<bool>(w, "snc", true);
      for (auto& l : S.basis_labels)
        require(d.name != l, ErrorKind::ParseError, "weighted divisor name '" + d.name + "' clashes with a basis label");
      ws.push_back(d);
    }
  return wps::make_weighted(std::move(S), std::move(ws));
}

json lclass_json(const WeightedSurface& W, const LClass& a) {
  return json{{"pic", a.pic}, {"frac", a.frac}, {"text", wps::to_string(W, a)}};
}

// ---------------------------------------------------------------------------
// Bundles and scripts

BundleFile bundle_from_json(const json& j, const WeightedSurface& W) {
  require(j.is_object() && j.contains("summands"), ErrorKind::ParseError, "bundle: missing 'summands'");
  BundleFile b;
  b.label = get_or<std::string>(j, "name", "");
  for (auto& s : j.at("summands")) {
    if (s.is_string()) {
      b.candidate.summands.push_back(tilting::Summand::of_line(parse_class(W, s.get<std::string>())));
    } else if (s.is_object() && s.contains("presented")) {
      b.candidate.summands.push_back(tilting::Summand::of_presented(s.at("presented").get<std::string>()));
    } else {
      fail(ErrorKind::ParseError, "bundle: summands are class strings or {\"presented\": name}");
    }
  }
  require(!b.candidate.summands.empty(), ErrorKind::ParseError, "bundle: no summands");
  if (j.contains("vertex_names")) {
    b.vertex_names = j.at("vertex_names").get<std::vector<std::string>>();
    require(b.vertex_names.size() == b.candidate.summands.size(), ErrorKind::ParseError,
            "bundle: vertex_names must match the summands");
  }
  if (j.contains("script")) b.script_path = j.at("script").get<std::string>();
  return b;
}

namespace {

int divisor_index(const WeightedSurface& W, const std::string& name) {
  for (size_t i = 0; i < W.count(); ++i)
    if (W.weighted[i].name == name) return static_cast<int>(i);
  fail(ErrorKind::MalformedScript, "unknown weighted divisor " + name);
}

FormalObject object_from_json(const json& o, const WeightedSurface& W) {
  require(o.is_object(), ErrorKind::MalformedScript, "objects are JSON objects");
  FormalObject f;
  if (o.contains("line")) {
    f.kind = FormalObject::Kind::Line;
    f.line = parse_class(W, o.at("line").get<std::string>());
  } else if (o.contains("curve")) {
    f.kind = FormalObject::Kind::Curve;
    f.support = parse_divclass(W.base, o.at("curve").get<std::string>());
    f.degree = get_or<i64>(o, "degree", 0);
  } else if (o.contains("divisor")) {
    f.kind = FormalObject::Kind::Curve;
    const int i = divisor_index(W, o.at("divisor").get<std::string>());
    f.divisors = {i};
    f.support = W.weighted[i].cls;
    f.layers = {get_or<i64>(o, "layer", 0)};
    f.degree = get_or<i64>(o, "degree", 0);
  } else if (o.contains("presented")) {
    f.kind = FormalObject::Kind::Presented;
    f.presented = o.at("presented").get<std::string>();
  } else if (o.contains("points")) {
    f.kind = FormalObject::Kind::Points;
    for (auto& n : o.at("points")) f.divisors.push_back(divisor_index(W, n.get<std::string>()));
    f.layers = get_or<std::vector<i64>>(o, "layers", std::vector<i64>(f.divisors.size(), 0));
    require(f.layers.size() == f.divisors.size(), ErrorKind::MalformedScript, "points: one layer per divisor");
    std::vector<std::pair<int, i64>> z;
    for (size_t k = 0; k < f.divisors.size(); ++k) z.push_back({f.divisors[k], f.layers[k]});
    std::sort(z.begin(), z.end());
    for (size_t k = 0; k < z.size(); ++k) f.divisors[k] = z[k].first, f.layers[k] = z[k].second;
  } else {
    fail(ErrorKind::MalformedScript, "object needs one of line, curve, divisor, points");
  }
  return f;
}

}  // namespace

tilting::GenerationScript script_from_json(const json& j, const WeightedSurface& W,
                                           const std::string& label) {
  require(j.is_object() && j.contains("moves") && j.at("moves").is_array(), ErrorKind::MalformedScript,
          "script: missing 'moves' array");
  tilting::GenerationScript s;
  s.label = label.empty() ? get_or<std::string>(j, "name", "") : label;
  try {
    for (auto& m : j.at("moves")) {
      Move mv;
      const std::string kind = m.at("move").get<std::string>();
      if (kind == "Summand" || kind == "Shift") {
        mv.kind = kind == "Summand" ? Move::Kind::Summand : Move::Kind::Shift;
        mv.objects.push_back(object_from_json(m.at("object"), W));
      } else if (kind == "Cone") {
        mv.kind = Move::Kind::Cone;
        for (auto& o : m.at("objects")) mv.objects.push_back(object_from_json(o, W));
      } else if (kind == "Koszul") {
        mv.kind = Move::Kind::Koszul;
        for (auto& n : m.at("divisors")) mv.subset.push_back(divisor_index(W, n.get<std::string>()));
        mv.twist = parse_class(W, get_or<std::string>(m, "twist", "0"));
      } else if (kind == "UnitTwistCokernel") {
        mv.kind = Move::Kind::UnitTwistCokernel;
        mv.twist = parse_class(W, m.at("twist").get<std::string>());
        mv.index = divisor_index(W, m.at("divisor").get<std::string>());
      } else if (kind == "RestrictionKernel") {
        mv.kind = Move::Kind::RestrictionKernel;
        mv.twist = parse_class(W, m.at("twist").get<std::string>());
        mv.curve = parse_divclass(W.base, m.at("curve").get<std::string>());
      } else if (kind == "Presentation") {
        mv.kind = Move::Kind::Presentation;
        mv.bundle = m.at("bundle").get<std::string>();
      } else {
        fail(ErrorKind::MalformedScript, "unknown move '" + kind + "'");
      }
      s.moves.push_back(std::move(mv));
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::MalformedScript, std::string("script: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) fail(ErrorKind::MalformedScript, e.what());
    throw;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Reports

json cohomology_json(const cohom::CohomologyVector& v) {
  return json{{"h0", v.h0}, {"h1", v.h1}, {"h2", v.h2}, {"chi", v.chi}};
}

namespace {

json witness_json(tilting::Context& C, const tilting::TiltingCandidate& T,
                  const std::optional<tilting::ExtWitness>& w) {
  if (!w) return nullptr;
  return json{{"from", C.name(T.summands[w->from])},
              {"to", C.name(T.summands[w->to])},
              {"from_index", w->from},
              {"to_index", w->to},
              {"r", w->r},
              {"degree", w->degree},
              {"dim", w->dim}};
}

}  // namespace

json report_json(tilting::Context& C, const tilting::TiltingCandidate& T, const tilting::CheckReport& R) {
  using tilting::verdict_name;
  const auto& W = C.surface();
  json summands = json::array();
  for (auto& s : T.summands) {
    json e{{"name", C.name(s)}, {"rank", C.rank(s)}};
    if (s.kind == tilting::Summand::Kind::Line) e["class"] = lclass_json(W, s.line);
    summands.push_back(e);
  }
  json h{{"verdict", verdict_name(R.hereditary.verdict)},
         {"window", {0, R.hereditary.window_end}},
         {"threshold", R.hereditary.threshold ? json(*R.hereditary.threshold) : json(nullptr)},
         {"certificate", R.hereditary.certificate},
         {"witness", witness_json(C, T, R.hereditary.witness)},
         {"reason", R.hereditary.reason}};
  if (R.hereditary.error) h["error"] = error_kind_name(*R.hereditary.error);
  json out{
      {"summands", summands},
      {"partial_tilting",
       {{"verdict", verdict_name(R.partial.verdict)}, {"witness", witness_json(C, T, R.partial.witness)}}},
      {"hereditary", h},
      {"euler",
       {{"matrix", R.euler.matrix},
        {"determinant", R.euler.det.str()},
        {"unimodular", R.euler.unimodular()},
        {"size", R.euler.size},
        {"expected_rank", R.euler.expected_rank},
        {"size_matches", R.euler.size_matches()}}},
      {"generation",
       {{"verified", R.generation.verified},
        {"script", R.generation.script},
        {"trace", R.generation.trace},
        {"first_invalid", R.generation.first_invalid},
        {"missing", R.generation.missing},
        {"note", R.generation.note}}},
      {"all_pass", R.all_pass()}};
  if (R.dp) {
    json eq = json::array(), viol = json::array();
    auto pair_json = [&](const tilting::DpPair& p) {
      return json{{"from", C.name(T.summands[p.from])}, {"to", C.name(T.summands[p.to])},
                  {"c1", W.base.class_str(p.c1)}, {"c1_dot_K", p.c1_dot_k},
                  {"status", p.status}, {"note", p.note}};
    };
    for (auto& p : R.dp->equality_cases) eq.push_back(pair_json(p));
    for (auto& p : R.dp->violations) viol.push_back(pair_json(p));
    out["dp_criterion"] = {{"verdict", verdict_name(R.dp->verdict)},
                           {"K_squared", R.dp->k_squared},
                           {"strict_pairs", R.dp->strict_pairs},
                           {"equality_cases", eq},
                           {"violations", viol}};
  }
  return out;
}

}  // namespace glt::io
