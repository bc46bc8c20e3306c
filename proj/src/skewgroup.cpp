#include "glt/skewgroup.hpp"

#include "glt/linalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace glt::skewgroup {

using picard::SurfaceModel;

namespace {

Q frac_part(const Q& q) {
  Z n = boost::multiprecision::numerator(q), d = boost::multiprecision::denominator(q);
  Z r = n % d;
  if (r < 0) r += d;
  return Q(r, d);
}

i64 mod(i64 a, i64 n) { return ((a % n) + n) % n; }

}  // namespace

// ---------------------------------------------------------------------------
// Groups

size_t FiniteAbelianGroup::size() const {
  size_t n = 1;
  for (i64 o : orders) n *= static_cast<size_t>(o);
  return n;
}

std::vector<Element> FiniteAbelianGroup::elements() const {
  std::vector<Element> out;
  Element g = identity();
  while (true) {
    out.push_back(g);
    size_t k = orders.size();
    while (k > 0) {
      --k;
      if (++g[k] < orders[k]) break;
      g[k] = 0;
      if (k == 0) return out;
    }
    if (orders.empty()) return out;
  }
}

Element FiniteAbelianGroup::reduce(Element a) const {
  for (size_t k = 0; k < orders.size(); ++k) a[k] = mod(a[k], orders[k]);
  return a;
}

Element FiniteAbelianGroup::add(const Element& a, const Element& b) const {
  Element c(orders.size());
  for (size_t k = 0; k < orders.size(); ++k) c[k] = a[k] + b[k];
  return reduce(c);
}

Element FiniteAbelianGroup::neg(const Element& a) const {
  Element c(orders.size());
  for (size_t k = 0; k < orders.size(); ++k) c[k] = -a[k];
  return reduce(c);
}

i64 FiniteAbelianGroup::order_of(const Element& g) const {
  Element x = reduce(g);
  i64 n = 1;
  for (Element y = x; y != identity(); y = add(y, x)) ++n;
  return n;
}

Q FiniteAbelianGroup::pairing(const Character& chi, const Element& g) const {
  Q s = 0;
  for (size_t k = 0; k < orders.size(); ++k) s += Q(chi[k] * g[k], orders[k]);
  return frac_part(s);
}

std::vector<Element> FiniteAbelianGroup::span(const std::vector<Element>& gens) const {
  std::set<Element> seen{identity()};
  std::vector<Element> frontier{identity()};
  while (!frontier.empty()) {
    Element x = frontier.back();
    frontier.pop_back();
    for (auto& g : gens) {
      Element y = add(x, reduce(g));
      if (seen.insert(y).second) frontier.push_back(y);
    }
  }
  return {seen.begin(), seen.end()};
}

bool FiniteAbelianGroup::is_cyclic(const std::vector<Element>& subgroup) const {
  const i64 n = static_cast<i64>(subgroup.size());
  return std::any_of(subgroup.begin(), subgroup.end(), [&](const Element& g) { return order_of(g) == n; });
}

// ---------------------------------------------------------------------------
// Cover models

namespace {

DivClass apply_matrix(const std::vector<std::vector<i64>>& M, const DivClass& L) {
  DivClass out(M.size(), 0);
  for (size_t i = 0; i < M.size(); ++i)
    for (size_t j = 0; j < L.size(); ++j) out[i] += M[i][j] * L[j];
  return out;
}

VariableAction identity_action(size_t n) {
  VariableAction a;
  a.perm.resize(n);
  for (size_t v = 0; v < n; ++v) a.perm[v] = static_cast<int>(v);
  a.phase.assign(n, Q(0));
  return a;
}

// First A, then B.
VariableAction compose(const VariableAction& A, const VariableAction& B) {
  VariableAction c;
  c.perm.resize(A.perm.size());
  c.phase.resize(A.perm.size());
  for (size_t v = 0; v < A.perm.size(); ++v) {
    const int w = A.perm[v];
    c.perm[v] = B.perm[w];
    c.phase[v] = frac_part(A.phase[v] + B.phase[w]);
  }
  return c;
}

bool same_action(const VariableAction& A, const VariableAction& B) {
  if (A.perm != B.perm) return false;
  for (size_t v = 0; v < A.phase.size(); ++v)
    if (frac_part(A.phase[v]) != frac_part(B.phase[v])) return false;
  return true;
}

std::vector<std::vector<i64>> matrix_power_apply_id(const std::vector<std::vector<i64>>& M, i64 n) {
  const size_t r = M.size();
  std::vector<std::vector<i64>> P(r, std::vector<i64>(r, 0));
  for (size_t i = 0; i < r; ++i) P[i][i] = 1;
  for (i64 k = 0; k < n; ++k) {
    std::vector<std::vector<i64>> N(r, std::vector<i64>(r, 0));
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < r; ++j)
        for (size_t l = 0; l < r; ++l) N[i][j] += M[i][l] * P[l][j];
    P = N;
  }
  return P;
}

}  // namespace

DivClass act(const CoverModel& M, const Element& g, const DivClass& L) {
  DivClass out = L;
  for (size_t k = 0; k < g.size(); ++k)
    for (i64 t = 0; t < mod(g[k], M.group.orders[k]); ++t) out = apply_matrix(M.pic_action[k], out);
  return out;
}

VariableAction cox_element_action(const CoverModel& M, const Element& g) {
  VariableAction a = identity_action(M.variables.size());
  for (size_t k = 0; k < g.size(); ++k)
    for (i64 t = 0; t < mod(g[k], M.group.orders[k]); ++t) a = compose(a, M.cox_action[k]);
  return a;
}

void validate(const CoverModel& M) {
  const SurfaceModel& S = M.upstairs;
  const size_t ngen = M.group.orders.size();
  require(ngen > 0, ErrorKind::PreconditionViolated, "cover: the group needs at least one factor");
  for (i64 o : M.group.orders) require(o >= 2, ErrorKind::PreconditionViolated, "cover: factor orders must be >= 2");
  require(M.pic_action.size() == ngen && M.cox_action.size() == ngen, ErrorKind::PreconditionViolated,
          "cover: one Pic matrix and one Cox action per generator");
  const size_t r = S.rank();
  for (size_t k = 0; k < ngen; ++k) {
    const auto& A = M.pic_action[k];
    require(A.size() == r && std::all_of(A.begin(), A.end(), [&](auto& row) { return row.size() == r; }),
            ErrorKind::PreconditionViolated, "cover: Pic matrices must be square of the Picard rank");
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < r; ++j) {
        DivClass ei = S.zero(), ej = S.zero();
        ei[i] = 1;
        ej[j] = 1;
        require(S.dot(apply_matrix(A, ei), apply_matrix(A, ej)) == S.dot(ei, ej), ErrorKind::PreconditionViolated,
                "cover: Pic action of generator " + std::to_string(k + 1) + " does not preserve the form");
      }
    require(apply_matrix(A, S.canonical) == S.canonical, ErrorKind::PreconditionViolated,
            "cover: Pic action of generator " + std::to_string(k + 1) + " moves K");
    auto P = matrix_power_apply_id(A, M.group.orders[k]);
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < r; ++j)
        require(P[i][j] == (i == j ? 1 : 0), ErrorKind::PreconditionViolated,
                "cover: Pic action order does not divide the factor order");
    const auto& c = M.cox_action[k];
    require(c.perm.size() == M.variables.size() && c.phase.size() == M.variables.size(),
            ErrorKind::PreconditionViolated, "cover: Cox action must cover every variable");
    for (size_t v = 0; v < M.variables.size(); ++v) {
      require(c.perm[v] >= 0 && static_cast<size_t>(c.perm[v]) < M.variables.size(),
              ErrorKind::PreconditionViolated, "cover: Cox permutation out of range");
      require(M.variables[c.perm[v]].degree == apply_matrix(A, M.variables[v].degree),
              ErrorKind::PreconditionViolated,
              "cover: generator " + std::to_string(k + 1) + " sends " + M.variables[v].name +
                  " to a variable of the wrong degree");
    }
    VariableAction pw = identity_action(M.variables.size());
    for (i64 t = 0; t < M.group.orders[k]; ++t) pw = compose(pw, c);
    require(same_action(pw, identity_action(M.variables.size())), ErrorKind::PreconditionViolated,
            "cover: Cox action of generator " + std::to_string(k + 1) + " has the wrong order");
    for (size_t l = 0; l < k; ++l)
      require(same_action(compose(c, M.cox_action[l]), compose(M.cox_action[l], c)), ErrorKind::PreconditionViolated,
              "cover: Cox actions of the generators do not commute");
  }
  for (auto& v : M.variables) {
    require(v.degree.size() == r, ErrorKind::PreconditionViolated, "cover: variable degree has the wrong length");
    require(S.dot(v.degree, S.ample_ref) > 0, ErrorKind::PreconditionViolated,
            "cover: variable " + v.name + " is not effective");
  }
  for (auto& ram : M.ramification)
    require(ram.index >= 2 && static_cast<i64>(M.group.size()) % ram.index == 0, ErrorKind::PreconditionViolated,
            "cover: ramification index of " + ram.name + " does not divide |G|");
  if (M.singular_points)
    for (auto& sp : *M.singular_points) {
      for (auto& g : sp.stabilizer)
        require(g.size() == ngen, ErrorKind::PreconditionViolated, "cover: stabilizer element has the wrong length");
      for (auto& c : sp.characters)
        require(c.size() == ngen, ErrorKind::PreconditionViolated, "cover: character has the wrong length");
    }
}

// ---------------------------------------------------------------------------
// JSON

namespace {

std::vector<i64> int_vector(const io::json& j, const char* what) {
  try {
    return j.get<std::vector<i64>>();
  } catch (const io::json::exception&) {
    fail(ErrorKind::ParseError, std::string("cover: ") + what + " must be an integer array");
  }
}

}  // namespace

CoverModel cover_from_json(const io::json& j, const std::string& base_file) {
  require(j.is_object(), ErrorKind::ParseError, "cover: expected an object");
  CoverModel M;
  try {
    M.name = j.value("name", std::string());
    M.upstairs = io::surface_from_json(j.at("upstairs"));
    M.group.orders = int_vector(j.at("group"), "group");
    const SurfaceModel& S = M.upstairs;
    for (auto& gen : j.at("pic_images")) {
      require(gen.size() == S.rank(), ErrorKind::ParseError, "cover: one image per Picard basis element");
      std::vector<std::vector<i64>> A(S.rank(), std::vector<i64>(S.rank(), 0));
      for (size_t col = 0; col < S.rank(); ++col) {
        DivClass img = io::parse_divclass(S, gen[col].get<std::string>());
        for (size_t row = 0; row < S.rank(); ++row) A[row][col] = img[row];
      }
      M.pic_action.push_back(A);
    }
    std::map<std::string, int> index;
    for (auto& v : j.at("variables")) {
      CoxVariable cv{v.at("name").get<std::string>(), io::parse_divclass(S, v.at("degree").get<std::string>())};
      require(index.emplace(cv.name, static_cast<int>(M.variables.size())).second, ErrorKind::ParseError,
              "cover: duplicate variable " + cv.name);
      M.variables.push_back(cv);
    }
    for (auto& a : j.at("cox_action")) {
      VariableAction va = identity_action(M.variables.size());
      if (a.contains("perm")) {
        const auto& perm = a.at("perm");
        require(perm.size() == M.variables.size(), ErrorKind::ParseError, "cover: perm must list every variable");
        for (size_t v = 0; v < perm.size(); ++v) {
          auto it = index.find(perm[v].get<std::string>());
          require(it != index.end(), ErrorKind::ParseError, "cover: unknown variable in perm");
          va.perm[v] = it->second;
        }
      }
      if (a.contains("phase"))
        for (auto& [name, q] : a.at("phase").items()) {
          auto it = index.find(name);
          require(it != index.end(), ErrorKind::ParseError, "cover: unknown variable " + name + " in phase");
          va.phase[it->second] = frac_part(parse_q(q.get<std::string>()));
        }
      M.cox_action.push_back(va);
    }
    for (auto& r : j.value("ramification", io::json::array())) {
      Ramification ram;
      ram.name = r.at("name").get<std::string>();
      ram.index = r.at("index").get<i64>();
      ram.upstairs = io::parse_divclass(S, r.at("upstairs").get<std::string>());
      M.ramification.push_back(ram);
    }
    if (j.contains("singular_points")) {
      std::vector<SingularPoint> pts;
      for (auto& p : j.at("singular_points")) {
        SingularPoint sp;
        sp.label = p.value("label", std::string());
        for (auto& g : p.at("stabilizer")) sp.stabilizer.push_back(int_vector(g, "stabilizer"));
        for (auto& c : p.at("characters")) sp.characters.push_back(int_vector(c, "characters"));
        pts.push_back(sp);
      }
      M.singular_points = pts;
    }
    M.downstairs = io::weighted_from_json(j.at("downstairs"));
    for (auto& ram : M.ramification) {
      auto it = std::find_if(M.downstairs.weighted.begin(), M.downstairs.weighted.end(),
                             [&](const wps::WeightedDivisor& w) { return w.name == ram.name; });
      require(it != M.downstairs.weighted.end(), ErrorKind::ParseError,
              "cover: ramification " + ram.name + " has no weighted divisor downstairs");
      require(it->weight == ram.index, ErrorKind::ParseError,
              "cover: weight of " + ram.name + " differs from its ramification index");
      ram.downstairs = it->cls;
    }
    M.equivariant_asserted = j.value("equivariant_asserted", false);
    if (j.contains("upstairs_bundle")) {
      const auto& b = j.at("upstairs_bundle");
      M.upstairs_bundle = b.at("summands").get<std::vector<std::string>>();
      if (b.contains("script")) M.upstairs_script = io::resolve(base_file, b.at("script").get<std::string>());
    }
  } catch (const io::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("cover: ") + e.what());
  }
  validate(M);
  return M;
}

namespace {

using io::json;

std::string blowup_class(int h, const std::vector<int>& minus, int blown) {
  std::string s = h == 1 ? "H" : std::to_string(h) + "H";
  for (int e : minus)
    if (e <= blown) s += " - E" + std::to_string(e);
  return s;
}

json conic_i_json() {
  return json::parse(R"J({
    "name": "conic_i",
    "upstairs": {"kind": "P1xP1"},
    "group": [2],
    "pic_images": [["(0,1)", "(1,0)"]],
    "variables": [{"name": "x", "degree": "(1,0)"}, {"name": "y", "degree": "(1,0)"},
                  {"name": "x'", "degree": "(0,1)"}, {"name": "y'", "degree": "(0,1)"}],
    "cox_action": [{"perm": ["x'", "y'", "x", "y"]}],
    "ramification": [{"name": "C", "index": 2, "upstairs": "(1,1)"}],
    "singular_points": [],
    "downstairs": {"surface": {"kind": "P2"}, "weights": [{"class": "2H", "weight": 2, "name": "C"}]},
    "upstairs_bundle": {"summands": ["0", "(1,0)", "(0,1)", "(1,1)"]}
  })J");
}

// P1 x P1 blown up at a swapped pair of points, modelled as P^2 blown up at three points with
// (1,0) = H - E1, (0,1) = H - E2 and exceptional pair H - E1 - E2, E3.
json conic_ii_json() {
  return json::parse(R"J({
    "name": "conic_ii",
    "upstairs": {"kind": "blowup", "points": 3},
    "group": [2],
    "pic_images": [["2H - E1 - E2 - E3", "H - E1 - E3", "H - E2 - E3", "H - E1 - E2"]],
    "variables": [{"name": "a", "degree": "H - E2 - E3"}, {"name": "b", "degree": "H - E1 - E3"},
                  {"name": "c", "degree": "H - E1 - E2"}, {"name": "e1", "degree": "E1"},
                  {"name": "e2", "degree": "E2"}, {"name": "e3", "degree": "E3"}],
    "cox_action": [{"perm": ["e2", "e1", "e3", "b", "a", "c"]}],
    "ramification": [{"name": "C", "index": 2, "upstairs": "2H - E1 - E2"}],
    "singular_points": [],
    "downstairs": {"surface": {"kind": "blowup", "points": 1},
                   "weights": [{"class": "2H", "weight": 2, "name": "C"}]},
    "upstairs_bundle": {"summands": ["0", "H - E1", "H - E2", "H - E1 - E2", "E3", "2H - E1 - E2"],
                        "script": "../scripts/conic_ii_upstairs.json"}
  })J");
}

// Z/p x Z/p acting diagonally on P^2 blown up at the first i coordinate points.
json polygon_json(int p, int i) {
  require(p >= 2 && i >= 0 && i <= 3, ErrorKind::UnsupportedConfiguration, "polygon cover needs p >= 2, 0 <= i <= 3");
  json j;
  j["name"] = "polygon_p" + std::to_string(p) + "_i" + std::to_string(i);
  j["upstairs"] = i == 0 ? json{{"kind", "P2"}} : json{{"kind", "blowup"}, {"points", i}};
  j["group"] = {p, p};
  // Toric boundary in cyclic order: rays in the lattice of (x/z, y/z).
  struct Ray {
    std::string var, down, cls;
    i64 a, b;
  };
  std::vector<Ray> rays{{"x", "U", blowup_class(1, {2, 3}, i), 1, 0},
                        {"e3", "F3", "E3", 1, 1},
                        {"y", "V", blowup_class(1, {1, 3}, i), 0, 1},
                        {"e1", "F1", "E1", -1, 0},
                        {"z", "W", blowup_class(1, {1, 2}, i), -1, -1},
                        {"e2", "F2", "E2", 0, -1}};
  rays.erase(std::remove_if(rays.begin(), rays.end(),
                            [&](const Ray& r) { return r.var[0] == 'e' && r.var[1] - '0' > i; }),
             rays.end());
  json images = json::array(), vars = json::array(), ram = json::array(), weights = json::array();
  const int rank = i + 1;
  for (int k = 0; k < rank; ++k) images.push_back(k == 0 ? std::string("H") : "E" + std::to_string(k));
  j["pic_images"] = json::array({images, images});
  for (auto& r : rays) {
    vars.push_back({{"name", r.var}, {"degree", r.cls}});
    ram.push_back({{"name", r.down}, {"index", p}, {"upstairs", r.cls}});
    weights.push_back({{"class", r.cls}, {"weight", p}, {"name", r.down}});
  }
  j["variables"] = vars;
  const std::string q = "1/" + std::to_string(p);
  j["cox_action"] = {{{"phase", {{"x", q}}}}, {{"phase", {{"y", q}}}}};
  j["ramification"] = ram;
  json pts = json::array();
  for (size_t k = 0; k < rays.size(); ++k) {
    const Ray& r = rays[k];
    const Ray& s = rays[(k + 1) % rays.size()];
    const i64 det = r.a * s.b - r.b * s.a;
    // Dual basis: m_r pairs to 1 with r and 0 with s, and vice versa.
    const i64 mr1 = s.b * det, mr2 = -s.a * det;
    const i64 ms1 = -r.b * det, ms2 = r.a * det;
    pts.push_back({{"label", r.down + " n " + s.down},
                   {"stabilizer", {{1, 0}, {0, 1}}},
                   {"characters", {{mod(mr1, p), mod(mr2, p)}, {mod(ms1, p), mod(ms2, p)}}}});
  }
  j["singular_points"] = pts;
  j["downstairs"] = {{"surface", j["upstairs"]}, {"weights", weights}};
  j["equivariant_asserted"] = true;
  json bundle = json::array();
  std::string script;
  switch (i) {
    case 0: bundle = {"0", "H", "2H"}; break;
    case 1: bundle = {"E1", "H", "H + E1", "2H"}; break;
    case 2: bundle = {"E1 + E2", "H + E1", "H + E2", "H + E1 + E2", "2H"}; break;
    default: bundle = {"E123", "H + E23", "H + E13", "H + E12", "H + E123", "2H"}; break;
  }
  j["upstairs_bundle"] = {{"summands", bundle}};
  if (i > 0) j["upstairs_bundle"]["script"] = "../scripts/bl" + std::to_string(i) + "_dp.json";
  return j;
}

}  // namespace

std::vector<std::string> builtin_cover_names() {
  std::vector<std::string> out{"conic_i", "conic_ii"};
  for (int p : {2, 3})
    for (int i = 0; i <= 3; ++i) out.push_back("polygon_p" + std::to_string(p) + "_i" + std::to_string(i));
  return out;
}

io::json builtin_cover_json(const std::string& name) {
  if (name == "conic_i") return conic_i_json();
  if (name == "conic_ii") return conic_ii_json();
  int p = 0, i = 0;
  char tail = 0;
  if (std::sscanf(name.c_str(), "polygon_p%d_i%d%c", &p, &i, &tail) == 2) return polygon_json(p, i);
  fail(ErrorKind::UnsupportedFamily, "unknown builtin cover " + name);
}

CoverModel builtin_cover(const std::string& name) {
  return cover_from_json(builtin_cover_json(name), std::string(GLT_DATA_DIR) + "/covers/" + name + ".json");
}

// ---------------------------------------------------------------------------
// Condition (*), stabilizers, decomposition

StarReport star_condition(const CoverModel& M) {
  require(M.singular_points.has_value(), ErrorKind::MissingData,
          "cover " + M.name + " does not list the singular points of the branch preimage");
  const auto& G = M.group;
  StarReport rep;
  const auto all = G.elements();
  for (auto& sp : *M.singular_points) {
    const auto H = G.span(sp.stabilizer);
    // H^perp together with the listed characters must generate G*.
    std::vector<Character> gens = sp.characters;
    for (auto& chi : all)
      if (std::all_of(H.begin(), H.end(), [&](const Element& h) { return G.pairing(chi, h) == 0; }))
        gens.push_back(chi);
    const auto generated = G.span(gens);
    std::ostringstream os;
    os << (sp.label.empty() ? "point" : sp.label) << ": |H| = " << H.size() << ", characters generate "
       << generated.size() * H.size() / G.size() << " of " << H.size();
    if (generated.size() != G.size()) rep.holds = false;
    rep.witnesses.push_back(os.str());
  }
  return rep;
}

std::vector<Element> stabilizer(const CoverModel& M, const DivClass& L) {
  std::vector<Element> out;
  for (auto& g : M.group.elements())
    if (act(M, g, L) == L) out.push_back(g);
  return out;
}

std::vector<DivClass> orbit(const CoverModel& M, const DivClass& L) {
  std::set<DivClass> s;
  for (auto& g : M.group.elements()) s.insert(act(M, g, L));
  return {s.begin(), s.end()};
}

namespace {

// Canonical representatives of G*/H^perp, i.e. of the characters of H.
std::vector<Character> character_classes(const FiniteAbelianGroup& G, const std::vector<Element>& H) {
  std::map<std::vector<Q>, Character> seen;
  for (auto& chi : G.elements()) {
    std::vector<Q> values;
    for (auto& h : H) values.push_back(G.pairing(chi, h));
    seen.emplace(values, chi);  // elements() is lexicographic, so the first one is the smallest
  }
  std::vector<Character> out;
  for (auto& [k, chi] : seen) out.push_back(chi);
  std::sort(out.begin(), out.end());
  return out;
}

std::string descriptor_text(const CoverModel& M, const std::vector<DivClass>& orb, const Character& chi, size_t h) {
  std::ostringstream os;
  os << "A (x) O(" << M.upstairs.class_str(orb.front()) << ")";
  if (orb.size() > 1) {
    os << " [orbit";
    for (auto& d : orb) os << " " << M.upstairs.class_str(d);
    os << "]";
  }
  if (h > 1) {
    os << " chi=(";
    for (size_t k = 0; k < chi.size(); ++k) os << (k ? "," : "") << chi[k];
    os << ")";
  }
  return os.str();
}

}  // namespace

std::vector<InducedSummand> induce_decompose(const CoverModel& M, const DivClass& L) {
  require(L.size() == M.upstairs.rank(), ErrorKind::PreconditionViolated, "class has the wrong length");
  const auto& G = M.group;
  const auto H = stabilizer(M, L);
  if (!G.is_cyclic(H) && !M.equivariant_asserted)
    fail(ErrorKind::NoEquivariantStructure,
         "stabilizer of " + M.upstairs.class_str(L) + " is not cyclic and no equivariant structure is asserted");
  const auto orb = orbit(M, L);
  std::vector<InducedSummand> out;
  for (auto& chi : character_classes(G, H)) {
    InducedSummand s;
    s.orbit = orb;
    s.line = orb.front();
    s.stabilizer = H;
    s.chi = chi;
    s.rank = static_cast<i64>(G.size() / H.size());
    s.descriptor = descriptor_text(M, orb, chi, H.size());
    out.push_back(s);
  }
  return out;
}

std::vector<std::vector<i64>> monomials(const CoverModel& M, const DivClass& D) {
  const SurfaceModel& S = M.upstairs;
  const size_t n = M.variables.size();
  std::vector<std::vector<i64>> out;
  const i64 total = S.dot(D, S.ample_ref);
  if (total < 0) return out;
  std::vector<i64> w(n);
  for (size_t v = 0; v < n; ++v) w[v] = S.dot(M.variables[v].degree, S.ample_ref);
  std::vector<i64> e(n, 0);
  std::function<void(size_t, DivClass, i64)> rec = [&](size_t v, DivClass rest, i64 budget) {
    if (v == n) {
      if (std::all_of(rest.begin(), rest.end(), [](i64 x) { return x == 0; })) out.push_back(e);
      return;
    }
    for (i64 k = 0; k * w[v] <= budget; ++k) {
      e[v] = k;
      rec(v + 1, rest, budget - k * w[v]);
      rest = sub(rest, M.variables[v].degree);
    }
    e[v] = 0;
  };
  rec(0, D, total);
  return out;
}

namespace {

// Number of K-orbits of monomials of degree D whose K-span contains the character psi
// (multiplicity one each, by Frobenius reciprocity for abelian K).
i64 isotypic_dim(const CoverModel& M, const DivClass& D, const std::vector<Element>& K, const Character& psi) {
  const auto& G = M.group;
  auto mons = monomials(M, D);
  std::vector<VariableAction> acts;
  for (auto& k : K) acts.push_back(cox_element_action(M, k));
  std::set<std::vector<i64>> done;
  i64 count = 0;
  for (auto& m : mons) {
    if (done.count(m)) continue;
    bool matches = true;
    for (size_t t = 0; t < K.size(); ++t) {
      std::vector<i64> img(m.size(), 0);
      Q phase = 0;
      for (size_t v = 0; v < m.size(); ++v) {
        img[acts[t].perm[v]] += m[v];
        phase += acts[t].phase[v] * m[v];
      }
      done.insert(img);
      if (img == m && frac_part(phase) != G.pairing(psi, K[t])) matches = false;
    }
    if (matches) ++count;
  }
  return count;
}

}  // namespace

i64 induced_hom_dim(const CoverModel& M, const InducedSummand& a, const InducedSummand& b) {
  const auto& G = M.group;
  std::vector<Element> K;
  for (auto& h : a.stabilizer)
    if (std::find(b.stabilizer.begin(), b.stabilizer.end(), h) != b.stabilizer.end()) K.push_back(h);
  std::vector<Element> HH;
  for (auto& x : a.stabilizer)
    for (auto& y : b.stabilizer) HH.push_back(G.add(x, y));
  std::sort(HH.begin(), HH.end());
  HH.erase(std::unique(HH.begin(), HH.end()), HH.end());
  // (Hom(L, s*L') (x) chi^-1 chi')^K: monomials on which K acts by chi - chi'.
  Character psi(G.orders.size());
  for (size_t k = 0; k < psi.size(); ++k) psi[k] = a.chi[k] - b.chi[k];
  psi = G.reduce(psi);
  std::set<Element> covered;
  i64 total = 0;
  for (auto& s : G.elements()) {
    if (covered.count(s)) continue;
    for (auto& x : HH) covered.insert(G.add(s, x));
    const DivClass target = act(M, s, b.line);
    total += isotypic_dim(M, sub(target, a.line), K, psi);
  }
  return total;
}

i64 induced_hom_dims(const CoverModel& M, const DivClass& D, const Character& chi, const DivClass& Dp,
                     const Character& chip) {
  const auto all = M.group.elements();
  require(stabilizer(M, D).size() == all.size() && stabilizer(M, Dp).size() == all.size(),
          ErrorKind::NotInvariant, "induced_hom_dims needs G-invariant classes");
  InducedSummand a, b;
  a.line = D;
  a.stabilizer = all;
  a.chi = chi;
  b.line = Dp;
  b.stabilizer = all;
  b.chi = chip;
  return induced_hom_dim(M, a, b);
}

std::vector<i64> isotypic_split(const CoverModel& M, const DivClass& D) {
  const auto all = M.group.elements();
  require(stabilizer(M, D).size() == all.size(), ErrorKind::NotInvariant, "isotypic_split needs a G-invariant class");
  std::vector<i64> out;
  for (auto& chi : all) out.push_back(isotypic_dim(M, D, all, chi));
  return out;
}

// ---------------------------------------------------------------------------
// Induced tilting bundles

bool InducedReport::all_pass() const {
  return upstairs.all_pass() && abs(det) == 1 && static_cast<i64>(summands.size()) == expected_rank;
}

InducedReport induced_tilting(const CoverModel& M, cohom::Memo* memo) {
  (void)memo;
  require(!M.upstairs_bundle.empty(), ErrorKind::MissingData, "cover " + M.name + " has no upstairs bundle");
  const SurfaceModel& S = M.upstairs;
  tilting::Context C(wps::unweighted(S));
  tilting::TiltingCandidate T;
  std::vector<DivClass> lines;
  for (auto& s : M.upstairs_bundle) {
    DivClass d = io::parse_divclass(S, s);
    lines.push_back(d);
    T.summands.push_back(tilting::Summand::of_line(wps::from_pic(C.surface(), d)));
  }
  std::set<DivClass> present(lines.begin(), lines.end());
  for (auto& d : lines)
    for (auto& o : orbit(M, d))
      require(present.count(o) > 0, ErrorKind::NotGStable,
              "orbit of " + S.class_str(d) + " leaves the bundle (missing " + S.class_str(o) + ")");
  InducedReport rep;
  std::optional<tilting::GenerationScript> script;
  if (M.upstairs_script)
    script = io::script_from_json(io::read_json_file(*M.upstairs_script), C.surface(), *M.upstairs_script);
  rep.upstairs = tilting::check(C, T, script ? &*script : nullptr);
  std::set<std::vector<DivClass>> seen;
  for (auto& d : lines) {
    auto orb = orbit(M, d);
    if (!seen.insert(orb).second) continue;
    for (auto& s : induce_decompose(M, d)) rep.summands.push_back(s);
  }
  const size_t n = rep.summands.size();
  rep.euler.assign(n, std::vector<i64>(n, 0));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) rep.euler[a][b] = induced_hom_dim(M, rep.summands[a], rep.summands[b]);
  rep.det = linalg::det(rep.euler);
  rep.expected_rank = tilting::expected_rank(M.downstairs);
  return rep;
}

io::json induced_report_json(const CoverModel& M, const InducedReport& R) {
  tilting::Context C(wps::unweighted(M.upstairs));
  tilting::TiltingCandidate T;
  for (auto& s : M.upstairs_bundle)
    T.summands.push_back(tilting::Summand::of_line(wps::from_pic(C.surface(), io::parse_divclass(M.upstairs, s))));
  json summands = json::array();
  for (auto& s : R.summands) {
    json orb = json::array();
    for (auto& d : s.orbit) orb.push_back(M.upstairs.class_str(d));
    summands.push_back({{"descriptor", s.descriptor},
                        {"orbit", orb},
                        {"stabilizer_order", s.stabilizer.size()},
                        {"character", s.chi},
                        {"rank", s.rank}});
  }
  return json{{"cover", M.name},
              {"group", M.group.orders},
              {"upstairs", io::report_json(C, T, R.upstairs)},
              {"summands", summands},
              {"hom_matrix", R.euler},
              {"determinant", R.det.str()},
              {"size", R.summands.size()},
              {"expected_rank", R.expected_rank},
              {"all_pass", R.all_pass()}};
}

}  // namespace glt::skewgroup
