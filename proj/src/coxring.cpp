#include "glt/coxquiver.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace glt::coxquiver {

// ---------------------------------------------------------------------------
// Polynomials

Poly Poly::constant(size_t nvars, const Q& c) {
  Poly p;
  if (c != 0) p.terms[Monomial(nvars, 0)] = c;
  return p;
}

Poly Poly::monomial(const Monomial& m, const Q& c) {
  Poly p;
  if (c != 0) p.terms[m] = c;
  return p;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r = a;
  for (auto& [m, c] : b.terms) {
    Q v = r.terms[m] + c;
    if (v == 0) r.terms.erase(m);
    else r.terms[m] = v;
  }
  return r;
}

Poly operator*(const Q& c, const Poly& a) {
  Poly r;
  if (c == 0) return r;
  for (auto& [m, v] : a.terms) r.terms[m] = c * v;
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + Q(-1) * b; }

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (auto& [ma, ca] : a.terms)
    for (auto& [mb, cb] : b.terms) {
      Monomial m(ma.size());
      for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      Q v = r.terms[m] + ca * cb;
      if (v == 0) r.terms.erase(m);
      else r.terms[m] = v;
    }
  return r;
}

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Free: return "free";
    case Strategy::HypersurfaceEliminable: return "hypersurface-eliminable";
    case Strategy::LinearAlgebraQuotient: return "linear-algebra-quotient";
  }
  return "free";
}

// ---------------------------------------------------------------------------
// Builtin rings

namespace {

using picard::Kind;

struct Ray {
  std::string name;
  DivClass cls;
};

std::optional<std::vector<Ray>> toric_rays(const picard::SurfaceModel& S) {
  switch (S.kind) {
    case Kind::ProjectivePlane: return std::vector<Ray>{{"x", {1}}, {"y", {1}}, {"z", {1}}};
    case Kind::P1xP1:
      return std::vector<Ray>{{"x", {1, 0}}, {"y", {1, 0}}, {"x'", {0, 1}}, {"y'", {0, 1}}};
    case Kind::Hirzebruch: {
      const i64 s = S.hirzebruch_s;
      return std::vector<Ray>{{"u0", {0, 1}}, {"u1", {0, 1}}, {"c", {1, 0}}, {"d", {1, s}}};
    }
    case Kind::BlowupP2: {
      const auto& c = S.config;
      if (c.count > 3 || !c.collinear_triples.empty() || !c.conic_sextuples.empty()) return std::nullopt;
      const size_t r = S.rank();
      // Coordinate points p1, p2, p3; X = 0 contains p2, p3 etc.
      std::vector<Ray> rays;
      const char* names[3] = {"x", "y", "z"};
      for (int line = 0; line < 3; ++line) {
        DivClass cls(r, 0);
        cls[0] = 1;
        for (int p = 0; p < c.count; ++p)
          if (p != line) cls[static_cast<size_t>(p) + 1] = -1;
        rays.push_back({names[line], cls});
      }
      for (int p = 0; p < c.count; ++p) {
        DivClass cls(r, 0);
        cls[static_cast<size_t>(p) + 1] = 1;
        rays.push_back({"e" + std::to_string(p + 1), cls});
      }
      return rays;
    }
  }
  return std::nullopt;
}

Monomial unit_mono(size_t n, size_t i, int e = 1) {
  Monomial m(n, 0);
  m[i] = e;
  return m;
}

CoxRing toric_ring(const wps::WeightedSurface& W, std::vector<Ray> rays) {
  CoxRing R;
  R.family = "toric";
  R.strategy = Strategy::Free;
  std::vector<int> weight_of(rays.size(), -1);
  for (size_t i = 0; i < W.count(); ++i) {
    bool found = false;
    for (size_t k = 0; k < rays.size() && !found; ++k)
      if (weight_of[k] < 0 && rays[k].cls == W.weighted[i].cls) {
        weight_of[k] = static_cast<int>(i);
        found = true;
      }
    if (!found)
      fail(ErrorKind::UnsupportedFamily,
           "weighted divisor " + W.weighted[i].name + " is not a torus-invariant boundary divisor");
  }
  for (size_t k = 0; k < rays.size(); ++k) {
    LClass d = weight_of[k] >= 0 ? wps::unit(W, static_cast<size_t>(weight_of[k]))
                                 : wps::from_pic(W, rays[k].cls);
    R.gens.push_back({rays[k].name, d});
  }
  // Weighted F_1 on a line: primed names for the fibre coordinates and the composite sections y, z.
  const auto& S = W.base;
  if (S.kind == Kind::BlowupP2 && S.config.count == 1 && W.count() == 1 &&
      W.weighted[0].cls == DivClass{1, 0}) {
    // rays: x (H), y (H-E), z (H-E), e1 (E)
    R.family = "weighted-F1";
    R.gens[0].name = "x";
    R.gens[1].name = "y'";
    R.gens[2].name = "z'";
    R.gens[3].name = "u";
    const size_t n = R.gens.size();
    Poly u = Poly::monomial(unit_mono(n, 3));
    R.aliases.push_back({"y", u * Poly::monomial(unit_mono(n, 1))});
    R.aliases.push_back({"z", u * Poly::monomial(unit_mono(n, 2))});
  }
  return R;
}

}  // namespace

CoxRing builtin_cox(const wps::WeightedSurface& W) {
  const auto& S = W.base;
  // P1 x P1 weighted on a smooth (1,1)-divisor.
  if (S.kind == Kind::P1xP1 && W.count() == 1 && W.weighted[0].cls == DivClass{1, 1}) {
    CoxRing R;
    R.family = "P1xP1-diagonal";
    R.strategy = Strategy::HypersurfaceEliminable;
    R.gens = {{"u", wps::from_pic(W, {1, 0})}, {"v", wps::from_pic(W, {1, 0})},
              {"x", wps::from_pic(W, {0, 1})}, {"y", wps::from_pic(W, {0, 1})},
              {"t", wps::unit(W, 0)}};
    const int p = W.weighted[0].weight;
    Poly tp = Poly::monomial(unit_mono(5, 4, p));
    Poly F = Poly::monomial(Monomial{1, 0, 1, 0, 0}) + Poly::monomial(Monomial{0, 1, 0, 1, 0});
    R.relations.push_back({tp - F, unit_mono(5, 4, p), "t^" + std::to_string(p) + " = F"});
    return R;
  }
  if (S.kind == Kind::ProjectivePlane && W.count() == 4) {
    bool lines = true;
    for (auto& w : W.weighted) lines = lines && w.cls == DivClass{1};
    if (lines) {
      CoxRing R;
      R.family = "P2-four-lines";
      R.strategy = Strategy::HypersurfaceEliminable;
      Poly rel;
      std::string disp;
      for (size_t i = 0; i < 4; ++i) {
        R.gens.push_back({"x" + std::to_string(i + 1), wps::unit(W, i)});
        rel = rel + Poly::monomial(unit_mono(4, i, W.weighted[i].weight));
        disp += (i ? " + " : "") + R.gens[i].name + "^" + std::to_string(W.weighted[i].weight);
      }
      R.relations.push_back({rel, unit_mono(4, 3, W.weighted[3].weight), disp + " = 0"});
      return R;
    }
  }
  if (S.kind == Kind::ProjectivePlane && W.count() == 1 && W.weighted[0].cls == DivClass{2}) {
    CoxRing R;
    R.family = "P2-conic";
    R.strategy = Strategy::HypersurfaceEliminable;
    R.gens = {{"x", wps::from_pic(W, {1})}, {"y", wps::from_pic(W, {1})},
              {"z", wps::from_pic(W, {1})}, {"t", wps::unit(W, 0)}};
    const int p = W.weighted[0].weight;
    Poly Qc = Poly::monomial(Monomial{2, 0, 0, 0}) + Poly::monomial(Monomial{0, 2, 0, 0}) +
              Poly::monomial(Monomial{0, 0, 2, 0});
    R.relations.push_back({Poly::monomial(unit_mono(4, 3, p)) - Qc, unit_mono(4, 3, p),
                           "t^" + std::to_string(p) + " = Q"});
    return R;
  }
  if (auto rays = toric_rays(S)) return toric_ring(W, *rays);
  fail(ErrorKind::UnsupportedFamily, "no builtin Cox ring for this weighted surface");
}

// ---------------------------------------------------------------------------
// Engine

CoxEngine::CoxEngine(wps::WeightedSurface W, CoxRing R) : W_(std::move(W)), R_(std::move(R)) {
  for (auto& g : R_.gens) {
    i64 w = wps::degree(W_, g.degree);
    require(w > 0, ErrorKind::UnsupportedFamily,
            "generator " + g.name + " does not have positive degree");
    gen_weight_.push_back(w);
  }
  for (auto& rel : R_.relations) {
    require(degree_of(rel.poly).has_value(), ErrorKind::PreconditionViolated,
            "relation '" + rel.display + "' is not homogeneous");
    if (rel.lead)
      require(rel.poly.terms.count(*rel.lead) > 0, ErrorKind::PreconditionViolated,
              "relation lead monomial does not occur in the relation");
  }
  if (!R_.relations.empty() && R_.strategy == Strategy::Free)
    R_.strategy = Strategy::LinearAlgebraQuotient;
  if (R_.strategy == Strategy::HypersurfaceEliminable)
    for (auto& rel : R_.relations)
      if (!rel.lead) R_.strategy = Strategy::LinearAlgebraQuotient;
}

LClass CoxEngine::degree_of(const Monomial& m) const {
  DivClass pic = W_.base.zero();
  std::vector<i64> frac(W_.count(), 0);
  for (size_t i = 0; i < m.size(); ++i) {
    if (!m[i]) continue;
    const LClass& d = R_.gens[i].degree;
    for (size_t k = 0; k < pic.size(); ++k) pic[k] += m[i] * d.pic[k];
    for (size_t k = 0; k < frac.size(); ++k) frac[k] += m[i] * d.frac[k];
  }
  return wps::normalize(W_, pic, frac);
}

std::optional<LClass> CoxEngine::degree_of(const Poly& f) const {
  if (f.is_zero()) return std::nullopt;
  std::optional<LClass> d;
  for (auto& [m, c] : f.terms) {
    LClass e = degree_of(m);
    if (d && *d != e) return std::nullopt;
    d = e;
  }
  return d;
}

std::vector<Monomial> CoxEngine::monomials_of_degree(const LClass& d) const {
  std::vector<Monomial> out;
  const i64 target = wps::degree(W_, d);
  if (target < 0) return out;
  const size_t n = R_.nvars();
  Monomial m(n, 0);
  std::function<void(size_t, i64)> rec = [&](size_t i, i64 left) {
    if (i == n) {
      if (left == 0 && degree_of(m) == d) out.push_back(m);
      return;
    }
    for (int e = 0; e * gen_weight_[i] <= left; ++e) {
      m[i] = e;
      rec(i + 1, left - e * gen_weight_[i]);
    }
    m[i] = 0;
  };
  rec(0, target);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

Poly CoxEngine::rewrite(Poly f) const {
  for (int guard = 0; guard < 100000; ++guard) {
    bool changed = false;
    for (auto it = f.terms.begin(); it != f.terms.end() && !changed; ++it) {
      for (auto& rel : R_.relations) {
        const Monomial& lead = *rel.lead;
        bool divisible = true;
        for (size_t i = 0; i < lead.size(); ++i) divisible = divisible && it->first[i] >= lead[i];
        if (!divisible) continue;
        Monomial rest(lead.size());
        for (size_t i = 0; i < lead.size(); ++i) rest[i] = it->first[i] - lead[i];
        Q c = it->second / rel.poly.terms.at(lead);
        Poly sub = c * (Poly::monomial(rest) * rel.poly);
        f = f - sub;
        changed = true;
        break;
      }
    }
    if (!changed) return f;
  }
  fail(ErrorKind::NonTermination, "normal-form rewriting did not terminate");
}

CoxEngine::PieceData& CoxEngine::data(const LClass& d) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = memo_.find(d);
  if (it != memo_.end()) return *it->second;
  auto pd = std::make_unique<PieceData>();
  pd->piece = std::make_shared<GradedPiece>();
  pd->piece->degree = d;
  auto monos = monomials_of_degree(d);
  switch (R_.strategy) {
    case Strategy::Free: pd->piece->basis = monos; break;
    case Strategy::HypersurfaceEliminable:
      for (auto& m : monos) {
        bool reducible = false;
        for (auto& rel : R_.relations) {
          bool div = true;
          for (size_t i = 0; i < m.size(); ++i) div = div && m[i] >= (*rel.lead)[i];
          reducible = reducible || div;
        }
        if (!reducible) pd->piece->basis.push_back(m);
      }
      break;
    case Strategy::LinearAlgebraQuotient: {
      pd->free_monomials = monos;
      for (size_t k = 0; k < monos.size(); ++k) pd->index[monos[k]] = k;
      pd->relations = std::make_unique<linalg::RowSpan>(monos.size());
      for (auto& rel : R_.relations) {
        LClass rd = *degree_of(rel.poly);
        for (auto& mult : monomials_of_degree(wps::minus(W_, d, rd))) {
          Poly prod = Poly::monomial(mult) * rel.poly;
          linalg::Vec v(monos.size(), Q(0));
          for (auto& [m, c] : prod.terms) v[pd->index.at(m)] = c;
          pd->relations->add(v);
        }
      }
      std::vector<bool> pivot(monos.size(), false);
      for (auto p : pd->relations->pivots()) pivot[p] = true;
      for (size_t k = 0; k < monos.size(); ++k)
        if (!pivot[k]) pd->piece->basis.push_back(monos[k]);
      break;
    }
  }
  pd->piece->dim = pd->piece->basis.size();
  if (R_.strategy != Strategy::LinearAlgebraQuotient)
    for (size_t k = 0; k < pd->piece->basis.size(); ++k) pd->index[pd->piece->basis[k]] = k;
  auto& ref = *pd;
  memo_.emplace(d, std::move(pd));
  return ref;
}

std::shared_ptr<const GradedPiece> CoxEngine::piece(const LClass& d) { return data(d).piece; }

linalg::Vec CoxEngine::coords(const Poly& f, const LClass& d) {
  PieceData& pd = data(d);
  linalg::Vec out(pd.piece->dim, Q(0));
  if (f.is_zero()) return out;
  if (R_.strategy == Strategy::LinearAlgebraQuotient) {
    linalg::Vec v(pd.free_monomials.size(), Q(0));
    for (auto& [m, c] : f.terms) {
      auto it = pd.index.find(m);
      require(it != pd.index.end(), ErrorKind::Internal, "monomial of the wrong degree");
      v[it->second] += c;
    }
    v = pd.relations->reduce(v);
    size_t k = 0;
    std::vector<bool> pivot(v.size(), false);
    for (auto p : pd.relations->pivots()) pivot[p] = true;
    for (size_t j = 0; j < v.size(); ++j)
      if (!pivot[j]) out[k++] = v[j];
    return out;
  }
  Poly g = R_.strategy == Strategy::HypersurfaceEliminable ? rewrite(f) : f;
  for (auto& [m, c] : g.terms) {
    auto it = pd.index.find(m);
    require(it != pd.index.end(), ErrorKind::Internal,
            "monomial " + format(m) + " is not of degree " + wps::to_string(W_, d));
    out[it->second] += c;
  }
  return out;
}

linalg::Matrix CoxEngine::mult_matrix(const Poly& f, const LClass& from, const LClass& to) {
  auto src = piece(from);
  auto dst = piece(to);
  linalg::Matrix M = linalg::zeros(dst->dim, src->dim);
  if (f.is_zero()) return M;
  for (size_t j = 0; j < src->dim; ++j) {
    linalg::Vec c = coords(f * Poly::monomial(src->basis[j]), to);
    for (size_t i = 0; i < dst->dim; ++i) M[i][j] = c[i];
  }
  return M;
}

Poly CoxEngine::generator(size_t i) const { return Poly::monomial(unit_mono(R_.nvars(), i)); }

std::optional<Poly> CoxEngine::named(const std::string& name) const {
  for (size_t i = 0; i < R_.gens.size(); ++i)
    if (R_.gens[i].name == name) return generator(i);
  for (auto& [n, p] : R_.aliases)
    if (n == name) return p;
  return std::nullopt;
}

std::string CoxEngine::format(const Monomial& m) const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < m.size(); ++i) {
    if (!m[i]) continue;
    if (!first) os << '*';
    os << R_.gens[i].name;
    if (m[i] > 1) os << '^' << m[i];
    first = false;
  }
  if (first) os << '1';
  return os.str();
}

std::string CoxEngine::format(const Poly& f) const {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = f.terms.rbegin(); it != f.terms.rend(); ++it) {
    Q c = it->second;
    bool neg = c < 0;
    if (neg) c = -c;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    bool unit_mono_term = std::all_of(it->first.begin(), it->first.end(), [](int e) { return e == 0; });
    if (c != 1 || unit_mono_term) {
      os << (boost::multiprecision::denominator(c) == 1 ? boost::multiprecision::numerator(c).str()
                                                         : q_str(c));
      if (!unit_mono_term) os << '*';
    }
    if (!unit_mono_term) os << format(it->first);
    first = false;
  }
  return os.str();
}

Poly CoxEngine::parse(const std::string& text) const {
  // Grammar: term (('+'|'-') term)*, term = factor ('*' factor)*, factor = name['^'n] | rational.
  size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto parse_factor = [&]() -> Poly {
    skip();
    require(pos < text.size(), ErrorKind::ParseError, "unexpected end of polynomial '" + text + "'");
    if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
      size_t start = pos;
      while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
        ++pos;
      return Poly::constant(R_.nvars(), parse_q(text.substr(start, pos - start)));
    }
    if (text[pos] == '(') {
      fail(ErrorKind::ParseError, "parentheses are not supported in '" + text + "'");
    }
    size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                 text[pos] == '_' || text[pos] == '\''))
      ++pos;
    std::string name = text.substr(start, pos - start);
    require(!name.empty(), ErrorKind::ParseError, "bad token in polynomial '" + text + "'");
    auto p = named(name);
    require(p.has_value(), ErrorKind::ParseError, "unknown ring element '" + name + "'");
    Poly r = *p;
    skip();
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      skip();
      size_t s = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      require(pos > s, ErrorKind::ParseError, "missing exponent in '" + text + "'");
      int e = std::stoi(text.substr(s, pos - s));
      Poly base = r;
      r = Poly::constant(R_.nvars(), Q(1));
      for (int k = 0; k < e; ++k) r = r * base;
    }
    return r;
  };
  Poly total;
  skip();
  bool first = true;
  while (pos < text.size()) {
    Q sign = 1;
    skip();
    if (text[pos] == '+' || text[pos] == '-') {
      if (text[pos] == '-') sign = -1;
      ++pos;
    } else {
      require(first, ErrorKind::ParseError, "expected '+' or '-' in '" + text + "'");
    }
    Poly term = parse_factor();
    skip();
    while (pos < text.size() && text[pos] == '*') {
      ++pos;
      term = term * parse_factor();
      skip();
    }
    total = total + sign * term;
    first = false;
    skip();
  }
  return total;
}

}  // namespace glt::coxquiver
