#include "glt/tilting.hpp"

#include "glt/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <set>
#include <sstream>
#include <thread>
#include <variant>

namespace glt::tilting {

using cohom::CohomologyVector;
using coxquiver::Complex;
using coxquiver::PresentedBundle;
using picard::Kind;
using picard::SurfaceModel;

Summand Summand::of_line(LClass c) {
  Summand s;
  s.kind = Kind::Line;
  s.line = std::move(c);
  return s;
}

Summand Summand::of_presented(std::string name) {
  Summand s;
  s.kind = Kind::Presented;
  s.presented = std::move(name);
  return s;
}

// ---------------------------------------------------------------------------
// Context

Context::Context(WeightedSurface W) : W_(std::move(W)) {}

coxquiver::CoxEngine& Context::engine() {
  std::call_once(engine_once_, [&] {
    engine_ = std::make_unique<coxquiver::CoxEngine>(W_, coxquiver::builtin_cox(W_));
  });
  return *engine_;
}

void Context::load_builtin_presented() {
  if (builtin_loaded_) return;
  builtin_loaded_ = true;
  bool four_lines = W_.base.kind == Kind::ProjectivePlane && W_.count() == 4;
  for (auto& w : W_.weighted) four_lines = four_lines && w.weight == 2;
  if (!four_lines) return;
  for (auto& P : coxquiver::four_line_presented(engine())) table_.emplace(P.name, P);
}

void Context::add_presented(PresentedBundle P) {
  check_presented(engine(), P);
  std::lock_guard<std::mutex> lock(table_mu_);
  load_builtin_presented();
  table_[P.name] = std::move(P);
}

bool Context::has_presented(const std::string& name) {
  std::lock_guard<std::mutex> lock(table_mu_);
  load_builtin_presented();
  return table_.count(name) > 0;
}

const PresentedBundle& Context::presented(const std::string& name) {
  std::lock_guard<std::mutex> lock(table_mu_);
  load_builtin_presented();
  auto it = table_.find(name);
  if (it == table_.end()) fail(ErrorKind::PreconditionViolated, "unknown presented bundle " + name);
  return it->second;
}

namespace {

Complex complex_of(Context& C, const Summand& s) {
  if (s.kind == Summand::Kind::Line) return coxquiver::line_complex(s.line);
  return coxquiver::as_complex(C.presented(s.presented));
}

}  // namespace

CohomologyVector Context::ext(const Summand& a, const Summand& b, i64 r) {
  const LClass shift = wps::times(W_, -r, wps::k_A(W_));
  if (a.kind == Summand::Kind::Line && b.kind == Summand::Kind::Line)
    return wps::ext_dims(W_, a.line, wps::plus(W_, b.line, shift), &memo_);
  Complex ca = complex_of(*this, a);
  Complex cb = coxquiver::twist(W_, complex_of(*this, b), shift);
  return coxquiver::les_ext(engine(), ca, cb, &memo_);
}

std::string Context::name(const Summand& s) const {
  if (s.kind == Summand::Kind::Presented) return s.presented;
  return "O(" + wps::to_string(W_, s.line) + ")";
}

i64 Context::rank(const Summand& s) {
  if (s.kind == Summand::Kind::Line) return 1;
  return presented(s.presented).rank();
}

void validate(Context& C, const TiltingCandidate& T) {
  const auto& W = C.surface();
  require(!T.summands.empty(), ErrorKind::PreconditionViolated, "the candidate has no summands");
  std::set<LClass> seen;
  std::set<std::string> seen_presented;
  for (auto& s : T.summands) {
    if (s.kind == Summand::Kind::Line) {
      require(s.line.pic.size() == W.base.rank() && s.line.frac.size() == W.count(),
              ErrorKind::PreconditionViolated, "summand class has the wrong shape");
      require(wps::normalize(W, s.line.pic, s.line.frac) == s.line, ErrorKind::PreconditionViolated,
              "summand class is not normalized");
      require(seen.insert(s.line).second, ErrorKind::PreconditionViolated,
              "repeated line summand " + C.name(s));
    } else {
      require(C.has_presented(s.presented), ErrorKind::PreconditionViolated,
              "unknown presented bundle " + s.presented);
      require(seen_presented.insert(s.presented).second, ErrorKind::PreconditionViolated,
              "repeated presented summand " + s.presented);
    }
  }
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Uncertified: return "uncertified";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "fail";
}

bool CheckReport::all_pass() const {
  return partial.verdict == Verdict::Pass && hereditary.verdict == Verdict::Pass &&
         euler.unimodular() && euler.size_matches() && generation.verified &&
         (!dp || dp->verdict == Verdict::Pass);
}

// ---------------------------------------------------------------------------
// Partial tilting and 2-hereditary checks

namespace {

std::optional<ExtWitness> higher_ext(size_t a, size_t b, i64 r, const CohomologyVector& v) {
  if (v.h1) return ExtWitness{a, b, r, 1, v.h1};
  if (v.h2) return ExtWitness{a, b, r, 2, v.h2};
  return std::nullopt;
}

bool all_lines(const TiltingCandidate& T) {
  return std::all_of(T.summands.begin(), T.summands.end(),
                     [](const Summand& s) { return s.kind == Summand::Kind::Line; });
}

// Whether the integral class N is very ample, by the standard criteria for the base.
bool very_ample(const SurfaceModel& S, const DivClass& N) {
  switch (S.kind) {
    case Kind::ProjectivePlane: return N[0] >= 1;
    case Kind::P1xP1: return N[0] >= 1 && N[1] >= 1;
    case Kind::Hirzebruch: return N[0] >= 1 && N[1] >= N[0] * S.hirzebruch_s + 1;
    case Kind::BlowupP2: {
      if (S.config.count == 0) return N[0] >= 1;
      const DivClass anti = scale(-1, S.canonical);
      if (S.dot(S.canonical, S.canonical) < 3 || !picard::is_ample(S, anti)) return false;
      const i64 n = N[0] / anti[0];
      return n >= 1 && scale(n, anti) == N;
    }
  }
  return false;
}

}  // namespace

PartialReport partial_tilting(Context& C, const TiltingCandidate& T) {
  validate(C, T);
  PartialReport rep;
  for (size_t a = 0; a < T.summands.size(); ++a)
    for (size_t b = 0; b < T.summands.size(); ++b) {
      auto w = higher_ext(a, b, 0, C.ext(T.summands[a], T.summands[b], 0));
      if (w) {
        rep.verdict = Verdict::Fail;
        rep.witness = w;
        return rep;
      }
    }
  return rep;
}

HereditaryReport two_hereditary(Context& C, const TiltingCandidate& T, i64 r_cap) {
  validate(C, T);
  const auto& W = C.surface();
  const SurfaceModel& S = W.base;
  HereditaryReport rep;
  const QDivClass anti = qscale(Q(-1), wps::k_plus_delta(W));
  if (!picard::is_nef(S, anti)) {
    rep.verdict = Verdict::Uncertified;
    rep.error = ErrorKind::Uncertifiable;
    auto bad = picard::nef_witness(S, anti);
    rep.reason = "-(K+Delta) is not nef" + (bad ? " (negative on " + bad->label + ")" : std::string());
    return rep;
  }
  const i64 P = W.period;
  const size_t n = T.summands.size();
  const LClass K = wps::k_A(W);

  // Line pairs: least r0 with c_r - K_X big and nef for all r in [r0, r0 + P - 1].
  std::vector<std::pair<size_t, size_t>> line_pairs;
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      if (T.summands[a].kind == Summand::Kind::Line && T.summands[b].kind == Summand::Kind::Line)
        line_pairs.push_back({a, b});
  // Irreducible rational curves with K_A.C = 0: intersections with c_r do not depend on r.
  // Removing such a C when c.C = -1 preserves h0, chi and the vanishing of h2, hence h1.
  const QDivClass kq = wps::to_qclass(W, K);
  std::vector<DivClass> null_curves;
  for (auto& cv : S.curves)
    if (cv.irreducible && cv.genus == 0 && S.dot(kq, cv.cls) == 0) null_curves.push_back(cv.cls);
  bool used_reduction = false;
  auto kv_ok = [&](i64 r) {
    for (auto [a, b] : line_pairs) {
      const LClass target = wps::plus(W, T.summands[b].line, wps::times(W, -r, K));
      DivClass c = wps::hom_sheaf(W, T.summands[a].line, target);
      for (int step = 0; step < 64; ++step) {
        auto it = std::find_if(null_curves.begin(), null_curves.end(),
                               [&](const DivClass& z) { return S.dot(c, z) == -1; });
        if (it == null_curves.end()) break;
        c = sub(c, *it);
        used_reduction = true;
      }
      if (!picard::is_big_nef(S, sub(c, S.canonical))) return false;
    }
    return true;
  };
  std::vector<char> ok_at;
  auto ok = [&](i64 r) {
    while (static_cast<i64>(ok_at.size()) <= r) ok_at.push_back(kv_ok(static_cast<i64>(ok_at.size())));
    return ok_at[r] != 0;
  };
  i64 r0 = -1;
  for (i64 r = 0; r <= r_cap; ++r) {
    bool all = true;
    for (i64 k = 0; k < P && all; ++k) all = ok(r + k);
    if (all) {
      r0 = r;
      break;
    }
  }
  if (r0 < 0) {
    rep.verdict = Verdict::Uncertified;
    rep.error = ErrorKind::CapExceeded;
    rep.reason = "no Kawamata-Viehweg threshold up to r = " + std::to_string(r_cap);
    return rep;
  }
  rep.threshold = r0;
  rep.certificate = "Kawamata-Viehweg on line pairs for r >= " + std::to_string(r0) +
                    " in every residue mod " + std::to_string(P);
  if (used_reduction) rep.certificate += " after removing K-trivial rational curves with c.C = -1";
  rep.window_end = r0 + P - 1;
  if (!all_lines(T)) {
    LClass Nl = wps::times(W, -P, K);
    const bool integral = std::all_of(Nl.frac.begin(), Nl.frac.end(), [](i64 l) { return l == 0; });
    if (!integral || !very_ample(S, Nl.pic)) {
      rep.verdict = Verdict::Uncertified;
      rep.error = ErrorKind::Uncertifiable;
      rep.reason = "no very-ample certificate for -P K_A = " + S.class_str(Nl.pic);
      return rep;
    }
    rep.window_end = r0 + 2 * P - 1;
    rep.certificate += "; Castelnuovo-Mumford regularity for presented pairs w.r.t. " +
                       S.class_str(Nl.pic) + " (Ext^2 at r0..r0+P-1, Ext^1 at r0+P..r0+2P-1)";
  }
  for (i64 r = 0; r <= rep.window_end; ++r)
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b) {
        auto w = higher_ext(a, b, r, C.ext(T.summands[a], T.summands[b], r));
        if (w) {
          rep.verdict = Verdict::Fail;
          rep.witness = w;
          rep.reason = "higher Ext inside the checked window";
          return rep;
        }
      }
  rep.verdict = Verdict::Pass;
  return rep;
}

// ---------------------------------------------------------------------------
// Euler matrix and the del Pezzo criterion

i64 expected_rank(const WeightedSurface& W) {
  const SurfaceModel& S = W.base;
  i64 total = S.chi_top();
  for (size_t i = 0; i < W.count(); ++i) {
    const auto& w = W.weighted[i];
    require(picard::genus(S, w.cls) == 0, ErrorKind::UnsupportedConfiguration,
            w.name + " is not a rational curve; its derived category has no finite generator count");
    total += (w.weight - 1) * 2;
    for (size_t j = i + 1; j < W.count(); ++j) {
      const i64 meet = S.dot(w.cls, W.weighted[j].cls);
      require(meet >= 0, ErrorKind::UnsupportedConfiguration,
              "weighted divisors " + w.name + " and " + W.weighted[j].name + " share a component");
      total += (w.weight - 1) * (W.weighted[j].weight - 1) * meet;
    }
  }
  return total;
}

EulerReport euler_matrix(Context& C, const TiltingCandidate& T) {
  validate(C, T);
  EulerReport rep;
  rep.size = T.summands.size();
  rep.matrix.assign(rep.size, std::vector<i64>(rep.size, 0));
  for (size_t a = 0; a < rep.size; ++a)
    for (size_t b = 0; b < rep.size; ++b) {
      auto v = C.ext(T.summands[a], T.summands[b], 0);
      rep.matrix[a][b] = v.h0 - v.h1 + v.h2;
    }
  rep.det = linalg::det(rep.matrix);
  rep.expected_rank = expected_rank(C.surface());
  return rep;
}

bool dp_applicable(Context& C, const TiltingCandidate& T) {
  const auto& W = C.surface();
  if (W.count() != 0 || !all_lines(T)) return false;
  return picard::is_big_nef(W.base, scale(-1, W.base.canonical));
}

DpReport dp_criterion(Context& C, const TiltingCandidate& T) {
  validate(C, T);
  require(dp_applicable(C, T), ErrorKind::PreconditionViolated,
          "the del Pezzo criterion needs an unweighted almost Fano surface and line summands");
  const SurfaceModel& S = C.surface().base;
  DpReport rep;
  rep.k_squared = S.dot(S.canonical, S.canonical);
  const bool general = S.kind != Kind::BlowupP2 || S.config.points_general_on_cubic;
  for (size_t a = 0; a < T.summands.size(); ++a)
    for (size_t b = 0; b < T.summands.size(); ++b) {
      if (a == b) continue;
      DpPair p;
      p.from = a;
      p.to = b;
      p.c1 = sub(T.summands[b].line.pic, T.summands[a].line.pic);
      p.c1_dot_k = S.dot(p.c1, S.canonical);
      if (p.c1_dot_k < rep.k_squared) {
        ++rep.strict_pairs;
        continue;
      }
      p.status = "inconclusive";
      if (p.c1_dot_k > rep.k_squared) {
        p.note = "c1.K = " + std::to_string(p.c1_dot_k) + " exceeds K^2";
        rep.violations.push_back(p);
        rep.verdict = Verdict::Inconclusive;
        continue;
      }
      const DivClass shifted = sub(p.c1, S.canonical);
      const CohomologyVector hc = cohom::cohomology(S, p.c1, &C.memo());
      const i64 hs = cohom::cohomology(S, shifted, &C.memo()).h0;
      std::ostringstream note;
      note << "c1 - K = " << S.class_str(shifted) << ", h0(c1 - K) = " << hs
           << ", h0(c1) = " << hc.h0 << ", h1(c1) = " << hc.h1;
      if (!general) {
        note << "; points not flagged general on the anticanonical cubic";
      } else if (hc.h1 != 0) {
        note << "; restriction sequence does not decide the pair";
      } else if (hs > hc.h0) {
        note << "; L restricts to O_C(K) on the anticanonical curve";
      } else {
        p.status = "discharged";
        note << "; L|_C is a nontrivial degree-0 twist of O_C(K)";
      }
      p.note = note.str();
      if (p.status != "discharged") rep.verdict = Verdict::Inconclusive;
      rep.equality_cases.push_back(p);
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Generation scripts

std::string FormalObject::key() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Line: os << "L" << vec_str(line.pic) << vec_str(line.frac); break;
    case Kind::Curve: os << "C" << vec_str(support) << vec_str(DivClass(divisors.begin(), divisors.end()))
                         << vec_str(layers) << degree; break;
    case Kind::Points: os << "P" << vec_str(DivClass(divisors.begin(), divisors.end())) << vec_str(layers); break;
    case Kind::Presented: os << "B" << presented; break;
  }
  return os.str();
}

std::string describe(const WeightedSurface& W, const FormalObject& o) {
  std::ostringstream os;
  switch (o.kind) {
    case FormalObject::Kind::Line: os << "O(" << wps::to_string(W, o.line) << ")"; break;
    case FormalObject::Kind::Curve:
      if (o.divisors.empty()) {
        os << "O_C(" << o.degree << ") on C = " << W.base.class_str(o.support);
      } else {
        const auto& w = W.weighted[o.divisors[0]];
        os << "O_" << w.name;
        if (o.layers[0]) os << "(-" << o.layers[0] << "/" << w.weight << " " << w.name << ")";
        os << " (x) O(" << o.degree << ")";
      }
      break;
    case FormalObject::Kind::Points: {
      os << "O_{";
      for (size_t k = 0; k < o.divisors.size(); ++k)
        os << (k ? " n " : "") << W.weighted[o.divisors[k]].name;
      os << "}";
      std::string tw;
      for (size_t k = 0; k < o.divisors.size(); ++k) {
        const auto& w = W.weighted[o.divisors[k]];
        if (o.layers[k])
          tw += (tw.empty() ? "-" : " - ") + std::to_string(o.layers[k]) + "/" + std::to_string(w.weight) + " " + w.name;
      }
      if (!tw.empty()) os << "(" << tw << ")";
      break;
    }
    case FormalObject::Kind::Presented: os << o.presented; break;
  }
  return os.str();
}

namespace {

FormalObject line_object(const LClass& b) {
  FormalObject o;
  o.kind = FormalObject::Kind::Line;
  o.line = b;
  return o;
}

// O_{D_I} (x) O_A(b), or an explanation of why it is not modeled.
std::variant<FormalObject, std::string> stratum_object(const WeightedSurface& W,
                                                       std::vector<int> I, const LClass& b) {
  const SurfaceModel& S = W.base;
  std::sort(I.begin(), I.end());
  I.erase(std::unique(I.begin(), I.end()), I.end());
  for (int i : I)
    if (i < 0 || static_cast<size_t>(i) >= W.count()) return std::string("weighted divisor index out of range");
  if (I.empty() || I.size() > 2) return std::string("strata of codimension other than 1 or 2 are not modeled");
  FormalObject o;
  o.divisors = I;
  for (int i : I) {
    const i64 p = W.weighted[i].weight, l = b.frac[i];
    o.layers.push_back((p - l) % p);
  }
  if (I.size() == 1) {
    const int i = I[0];
    const auto& D = W.weighted[i];
    if (picard::genus(S, D.cls) != 0) return D.name + " is not rational";
    for (size_t j = 0; j < W.count(); ++j)
      if (static_cast<int>(j) != i && b.frac[j] != 0 && S.dot(W.weighted[j].cls, D.cls) != 0)
        return "twist has a fractional part along " + W.weighted[j].name + ", which meets " + D.name;
    DivClass L = b.pic;
    if (b.frac[i]) L = add(L, D.cls);
    o.kind = FormalObject::Kind::Curve;
    o.support = D.cls;
    o.degree = S.dot(L, D.cls);
    return o;
  }
  if (S.dot(W.weighted[I[0]].cls, W.weighted[I[1]].cls) <= 0)
    return W.weighted[I[0]].name + " and " + W.weighted[I[1]].name + " do not meet";
  o.kind = FormalObject::Kind::Points;
  return o;
}

bool is_listed_curve(const SurfaceModel& S, const DivClass& C) {
  for (auto& c : S.curves)
    if (c.cls == C && c.irreducible) return true;
  return false;
}

FormalObject presented_object(const std::string& name) {
  FormalObject o;
  o.kind = FormalObject::Kind::Presented;
  o.presented = name;
  return o;
}

class Replayer {
 public:
  Replayer(Context& C, const TiltingCandidate& T) : C_(C), W_(C.surface()) {
    for (auto& s : T.summands)
      insert(s.kind == Summand::Kind::Line ? line_object(s.line) : presented_object(s.presented));
  }

  bool available(const FormalObject& o) const { return have_.count(o.key()) > 0; }
  void insert(const FormalObject& o) { have_.emplace(o.key(), o); }
  const std::map<std::string, FormalObject>& objects() const { return have_; }

  // Adds the single missing member of a triangle or resolution; returns a message on failure.
  std::optional<std::string> close(const std::vector<FormalObject>& members, std::string& derived) {
    std::vector<const FormalObject*> missing;
    for (auto& m : members)
      if (!available(m)) missing.push_back(&m);
    if (missing.empty()) {
      derived = "nothing new";
      return std::nullopt;
    }
    if (missing.size() > 1) {
      std::string msg = "needs all but one member; missing";
      for (auto* m : missing) msg += " " + describe(W_, *m) + ";";
      return msg;
    }
    insert(*missing[0]);
    derived = describe(W_, *missing[0]);
    return std::nullopt;
  }

  std::optional<std::string> koszul(std::vector<int> I, const LClass& b, std::string& derived) {
    auto t = stratum_object(W_, I, b);
    if (auto* msg = std::get_if<std::string>(&t)) return *msg;
    std::vector<FormalObject> members{std::get<FormalObject>(t)};
    const auto& divisors = std::get<FormalObject>(t).divisors;
    const size_t m = divisors.size();
    for (size_t mask = 0; mask < (size_t{1} << m); ++mask) {
      LClass c = b;
      for (size_t k = 0; k < m; ++k)
        if (mask >> k & 1) c = wps::minus(W_, c, wps::unit(W_, divisors[k]));
      members.push_back(line_object(c));
    }
    return close(members, derived);
  }

  std::optional<std::string> restriction_members(const LClass& b, const DivClass& curve,
                                                 std::vector<FormalObject>& members) {
    const SurfaceModel& S = W_.base;
    if (curve.size() != S.rank()) return std::string("curve class has the wrong length");
    if (picard::genus(S, curve) != 0) return std::string("curve is not rational");
    bool irreducible = is_listed_curve(S, curve) ||
                       (picard::is_nef(S, curve) && cohom::h0(S, curve) >= 2);
    if (!irreducible) return "no irreducible member known for " + S.class_str(curve);
    for (auto& w : W_.weighted) {
      if (w.cls == curve) return "use a Koszul move for the weighted divisor " + w.name;
      if (S.dot(w.cls, curve) != 0) return "curve meets the weighted divisor " + w.name;
    }
    FormalObject t;
    t.kind = FormalObject::Kind::Curve;
    t.support = curve;
    t.degree = S.dot(b.pic, curve);
    members = {line_object(wps::minus(W_, b, wps::from_pic(W_, curve))), line_object(b), t};
    return std::nullopt;
  }

  // Recognizes {x, y, z} as a restriction or unit-twist triangle.
  std::optional<std::string> cone(const std::vector<FormalObject>& objs, std::string& derived) {
    if (objs.size() != 3) return std::string("Cone takes exactly three objects");
    std::vector<const FormalObject*> lines, torsion;
    for (auto& o : objs) (o.kind == FormalObject::Kind::Line ? lines : torsion).push_back(&o);
    if (lines.size() != 2 || torsion.size() != 1 || torsion[0]->kind != FormalObject::Kind::Curve)
      return std::string("Cone expects two line bundles and one curve-supported object");
    for (int k = 0; k < 2; ++k) {
      const LClass& big = lines[k]->line;
      const FormalObject& t = *torsion[0];
      std::vector<FormalObject> members;
      if (t.divisors.empty()) {
        if (restriction_members(big, t.support, members)) continue;
      } else {
        auto s = stratum_object(W_, t.divisors, big);
        if (std::holds_alternative<std::string>(s)) continue;
        members = {std::get<FormalObject>(s), line_object(wps::minus(W_, big, wps::unit(W_, t.divisors[0]))),
                   line_object(big)};
      }
      std::set<std::string> want, got;
      for (auto& m : members) want.insert(m.key());
      for (auto& o : objs) got.insert(o.key());
      if (want != got) continue;
      if (!available(objs[0]) || !available(objs[1]))
        return std::string("the first two objects of a Cone must already be available");
      insert(objs[2]);
      derived = describe(W_, objs[2]);
      return std::nullopt;
    }
    return std::string("the three objects do not form a known triangle");
  }

  std::optional<std::string> apply(const Move& mv, std::string& derived) {
    switch (mv.kind) {
      case Move::Kind::Summand:
      case Move::Kind::Shift:
        for (auto& o : mv.objects)
          if (!available(o)) return describe(W_, o) + " is not available";
        derived = "nothing new";
        return std::nullopt;
      case Move::Kind::Cone: return cone(mv.objects, derived);
      case Move::Kind::Koszul: return koszul(mv.subset, mv.twist, derived);
      case Move::Kind::UnitTwistCokernel: return koszul({mv.index}, mv.twist, derived);
      case Move::Kind::RestrictionKernel: {
        std::vector<FormalObject> members;
        if (auto msg = restriction_members(mv.twist, mv.curve, members)) return msg;
        return close(members, derived);
      }
      case Move::Kind::Presentation: {
        if (!C_.has_presented(mv.bundle)) return "unknown presented bundle " + mv.bundle;
        const auto& P = C_.presented(mv.bundle);
        std::vector<FormalObject> members{presented_object(P.name)};
        for (auto& a : P.source) members.push_back(line_object(a));
        for (auto& a : P.target) members.push_back(line_object(a));
        return close(members, derived);
      }
    }
    return std::string("unknown move");
  }

  // Targets of the stratified generating set; returns descriptions of what is missing.
  std::vector<std::string> missing_targets() const {
    std::vector<std::string> out;
    if (!base_generated()) out.push_back(base_target_text());
    const SurfaceModel& S = W_.base;
    for (size_t i = 0; i < W_.count(); ++i) {
      const auto& w = W_.weighted[i];
      for (i64 a = 0; a <= w.weight - 2; ++a) {
        bool found = false;
        for (auto& [k, o] : have_) {
          if (o.kind != FormalObject::Kind::Curve || o.divisors != std::vector<int>{static_cast<int>(i)} ||
              o.layers[0] != a)
            continue;
          FormalObject next = o;
          ++next.degree;
          if (available(next)) {
            found = true;
            break;
          }
        }
        if (!found)
          out.push_back("O_" + w.name + "(-" + std::to_string(a) + "/" + std::to_string(w.weight) + " " +
                        w.name + ") (x) O(d) for two consecutive d");
      }
    }
    for (size_t i = 0; i < W_.count(); ++i)
      for (size_t j = i + 1; j < W_.count(); ++j) {
        if (S.dot(W_.weighted[i].cls, W_.weighted[j].cls) <= 0) continue;
        for (i64 a = 0; a <= W_.weighted[i].weight - 2; ++a)
          for (i64 b = 0; b <= W_.weighted[j].weight - 2; ++b) {
            FormalObject o;
            o.kind = FormalObject::Kind::Points;
            o.divisors = {static_cast<int>(i), static_cast<int>(j)};
            o.layers = {a, b};
            if (!available(o)) out.push_back(describe(W_, o));
          }
      }
    return out;
  }

 private:
  bool has_line(const DivClass& pic) const { return available(line_object(wps::from_pic(W_, pic))); }

  bool ruled_pattern(const DivClass& L, const DivClass& F) const {
    const SurfaceModel& S = W_.base;
    if (!has_line(L) || !has_line(add(L, F))) return false;
    for (auto& [k, o] : have_) {
      if (o.kind != FormalObject::Kind::Line) continue;
      if (std::any_of(o.line.frac.begin(), o.line.frac.end(), [](i64 l) { return l != 0; })) continue;
      DivClass Sec = sub(o.line.pic, L);
      if (S.dot(Sec, F) == 1 && has_line(add(o.line.pic, F))) return true;
    }
    return false;
  }

  bool orlov_pattern(const DivClass& L) const {
    const SurfaceModel& S = W_.base;
    DivClass H = S.zero();
    H[0] = 1;
    if (!has_line(L) || !has_line(add(L, H)) || !has_line(add(L, scale(2, H)))) return false;
    for (int i = 1; i <= S.config.count; ++i) {
      FormalObject t;
      t.kind = FormalObject::Kind::Curve;
      t.support = S.zero();
      t.support[i] = 1;
      t.degree = -1 + S.dot(L, t.support);
      if (!available(t)) return false;
    }
    return true;
  }

  bool base_generated() const {
    const SurfaceModel& S = W_.base;
    for (auto& [k, o] : have_) {
      if (o.kind != FormalObject::Kind::Line) continue;
      if (std::any_of(o.line.frac.begin(), o.line.frac.end(), [](i64 l) { return l != 0; })) continue;
      const DivClass& L = o.line.pic;
      switch (S.kind) {
        case Kind::ProjectivePlane:
          if (orlov_pattern(L)) return true;
          break;
        case Kind::P1xP1:
          if (ruled_pattern(L, {1, 0}) || ruled_pattern(L, {0, 1})) return true;
          break;
        case Kind::Hirzebruch:
          if (ruled_pattern(L, {0, 1})) return true;
          break;
        case Kind::BlowupP2:
          if (orlov_pattern(L)) return true;
          if (S.config.count == 1 && ruled_pattern(L, {1, -1})) return true;
          break;
      }
    }
    return false;
  }

  std::string base_target_text() const {
    const SurfaceModel& S = W_.base;
    switch (S.kind) {
      case Kind::ProjectivePlane: return "L, L(H), L(2H) for some line bundle L";
      case Kind::P1xP1:
      case Kind::Hirzebruch: return "L, L(F), L(S), L(S+F) for a fibre F and section class S";
      case Kind::BlowupP2:
        return "L, L(H), L(2H) and O_{E_i}(-1) (x) L for all exceptional curves, for some L";
    }
    return "";
  }

  Context& C_;
  const WeightedSurface& W_;
  std::map<std::string, FormalObject> have_;
};

std::string move_text(const WeightedSurface& W, const Move& mv) {
  if (!mv.text.empty()) return mv.text;
  std::ostringstream os;
  switch (mv.kind) {
    case Move::Kind::Summand: os << "Summand"; break;
    case Move::Kind::Shift: os << "Shift"; break;
    case Move::Kind::Cone: os << "Cone"; break;
    case Move::Kind::Koszul: {
      os << "Koszul({";
      for (size_t k = 0; k < mv.subset.size(); ++k) os << (k ? "," : "") << W.weighted[mv.subset[k]].name;
      os << "}, " << wps::to_string(W, mv.twist) << ")";
      return os.str();
    }
    case Move::Kind::UnitTwistCokernel:
      os << "UnitTwistCokernel(" << wps::to_string(W, mv.twist) << ", " << W.weighted[mv.index].name << ")";
      return os.str();
    case Move::Kind::RestrictionKernel:
      os << "RestrictionKernel(" << wps::to_string(W, mv.twist) << ", " << W.base.class_str(mv.curve) << ")";
      return os.str();
    case Move::Kind::Presentation: return "Presentation(" + mv.bundle + ")";
  }
  os << "(";
  for (size_t k = 0; k < mv.objects.size(); ++k) os << (k ? ", " : "") << describe(W, mv.objects[k]);
  os << ")";
  return os.str();
}

}  // namespace

GenerationReport check_generation_script(Context& C, const TiltingCandidate& T,
                                         const GenerationScript& script) {
  validate(C, T);
  GenerationReport rep;
  rep.script = script.label;
  Replayer R(C, T);
  for (size_t k = 0; k < script.moves.size(); ++k) {
    const Move& mv = script.moves[k];
    const std::string text = move_text(C.surface(), mv);
    std::string derived;
    if (auto msg = R.apply(mv, derived)) {
      rep.first_invalid = "move " + std::to_string(k + 1) + " " + text + ": " + *msg;
      rep.trace.push_back("invalid: " + text + ": " + *msg);
      rep.missing = R.missing_targets();
      return rep;
    }
    rep.trace.push_back(text + " -> " + derived);
  }
  rep.missing = R.missing_targets();
  rep.verified = rep.missing.empty();
  if (!rep.verified) rep.note = "script ran but some generators were not reached";
  return rep;
}

CheckReport check(Context& C, const TiltingCandidate& T, const GenerationScript* script, i64 r_cap) {
  CheckReport rep;
  rep.partial = partial_tilting(C, T);
  rep.hereditary = two_hereditary(C, T, r_cap);
  rep.euler = euler_matrix(C, T);
  if (script) {
    rep.generation = check_generation_script(C, T, *script);
  } else {
    GenerationScript none;
    rep.generation = check_generation_script(C, T, none);
    if (rep.generation.verified) {
      rep.generation.note = "the summands already contain a standard generating set";
    } else {
      rep.generation = GenerationReport{};
      rep.generation.note = "no script: necessary conditions only (rank, unimodularity)";
    }
  }
  if (dp_applicable(C, T)) rep.dp = dp_criterion(C, T);
  return rep;
}

// ---------------------------------------------------------------------------
// Search

bool canonical_less(const WeightedSurface& W, const LClass& a, const LClass& b) {
  const i64 da = wps::degree(W, a), db = wps::degree(W, b);
  if (da != db) return da < db;
  return a < b;
}

SearchOutcome search(Context& C, const SearchBox& box, const SearchOptions& opt) {
  const auto& W = C.surface();
  require(box.pic.size() == W.base.rank(), ErrorKind::PreconditionViolated,
          "box needs one range per Picard coordinate");
  std::vector<std::pair<i64, i64>> frac = box.frac;
  if (frac.empty())
    for (auto& w : W.weighted) frac.push_back({0, w.weight - 1});
  require(frac.size() == W.count(), ErrorKind::PreconditionViolated,
          "box needs one range per weighted divisor");
  for (auto& w : W.weighted)
    require(w.rational, ErrorKind::PreconditionViolated, "search needs rational weighted divisors");

  std::vector<std::pair<i64, i64>> ranges = box.pic;
  ranges.insert(ranges.end(), frac.begin(), frac.end());
  SearchOutcome out;
  double volume = 1;
  for (auto [lo, hi] : ranges) volume *= hi < lo ? 0.0 : static_cast<double>(hi - lo + 1);
  if (volume > static_cast<double>(opt.enumeration_cap))
    fail(ErrorKind::BoxTooLarge, "box has " + std::to_string(static_cast<long long>(volume)) +
                                     " points, cap is " + std::to_string(opt.enumeration_cap));
  std::set<LClass> classes;
  if (volume > 0) {
    std::vector<i64> cur(ranges.size());
    for (size_t k = 0; k < ranges.size(); ++k) cur[k] = ranges[k].first;
    while (true) {
      DivClass pic(cur.begin(), cur.begin() + W.base.rank());
      std::vector<i64> l(cur.begin() + W.base.rank(), cur.end());
      classes.insert(wps::normalize(W, pic, l));
      size_t k = 0;
      while (k < ranges.size() && ++cur[k] > ranges[k].second) cur[k] = ranges[k].first, ++k;
      if (k == ranges.size()) break;
    }
  }
  std::vector<LClass> V(classes.begin(), classes.end());
  std::sort(V.begin(), V.end(), [&](const LClass& a, const LClass& b) { return canonical_less(W, a, b); });
  out.box_size = V.size();
  out.target_size = static_cast<size_t>(expected_rank(W));
  const size_t k = out.target_size;
  if (V.empty() || (opt.max_summands && opt.max_summands < k) || V.size() < k) return out;

  const size_t n = V.size();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = a + 1; b < n; ++b) {
      auto x = C.ext(Summand::of_line(V[a]), Summand::of_line(V[b]), 0);
      auto y = C.ext(Summand::of_line(V[b]), Summand::of_line(V[a]), 0);
      adj[a][b] = adj[b][a] = !x.h1 && !x.h2 && !y.h1 && !y.h2;
    }

  std::vector<size_t> forced;
  for (auto& r : opt.require) {
    auto it = std::find(V.begin(), V.end(), r);
    require(it != V.end(), ErrorKind::PreconditionViolated, "required class " + wps::to_string(W, r) +
                                                                " is outside the box");
    forced.push_back(static_cast<size_t>(it - V.begin()));
  }
  for (size_t a : forced)
    for (size_t b : forced)
      if (a != b && !adj[a][b]) return out;
  if (forced.size() > k) return out;
  std::vector<size_t> pool;
  for (size_t v = 0; v < n; ++v) {
    if (std::find(forced.begin(), forced.end(), v) != forced.end()) continue;
    if (std::all_of(forced.begin(), forced.end(), [&](size_t f) { return adj[v][f]; })) pool.push_back(v);
  }
  const size_t need = k - forced.size();

  const int workers = std::max(1, opt.workers);
  std::vector<std::vector<SearchResult>> found(workers);
  std::atomic<size_t> clique_count{0};
  std::atomic<bool> overflow{false};
  std::atomic<size_t> next_branch{0};
  constexpr size_t kCliqueCap = 200000;

  auto examine = [&](const std::vector<size_t>& chosen, std::vector<SearchResult>& sink) {
    if (++clique_count > kCliqueCap) {
      overflow = true;
      return;
    }
    TiltingCandidate T;
    std::vector<size_t> all = forced;
    all.insert(all.end(), chosen.begin(), chosen.end());
    std::sort(all.begin(), all.end());
    for (size_t v : all) T.summands.push_back(Summand::of_line(V[v]));
    HereditaryReport h = two_hereditary(C, T, opt.r_cap);
    if (h.verdict != Verdict::Pass) return;
    SearchResult res;
    res.candidate = T;
    res.report.partial.verdict = Verdict::Pass;
    res.report.hereditary = h;
    res.report.euler = euler_matrix(C, T);
    res.report.generation = check_generation_script(C, T, GenerationScript{});
    if (res.report.generation.verified) {
      res.report.generation.note = "the summands already contain a standard generating set";
    } else {
      res.report.generation = GenerationReport{};
      res.report.generation.note = "search result: necessary conditions only (rank, unimodularity)";
    }
    if (dp_applicable(C, T)) res.report.dp = dp_criterion(C, T);
    sink.push_back(std::move(res));
  };

  std::function<void(size_t, std::vector<size_t>&, std::vector<SearchResult>&)> extend =
      [&](size_t from, std::vector<size_t>& chosen, std::vector<SearchResult>& sink) {
        if (overflow) return;
        if (chosen.size() == need) {
          examine(chosen, sink);
          return;
        }
        for (size_t t = from; t + (need - chosen.size()) <= pool.size(); ++t) {
          const size_t v = pool[t];
          if (!std::all_of(chosen.begin(), chosen.end(), [&](size_t c) { return adj[v][c]; })) continue;
          chosen.push_back(v);
          extend(t + 1, chosen, sink);
          chosen.pop_back();
        }
      };

  auto run = [&](int w) {
    std::vector<size_t> chosen;
    if (need == 0) {
      if (w == 0) examine(chosen, found[w]);
      return;
    }
    for (size_t t = next_branch++; t < pool.size(); t = next_branch++) {
      chosen = {pool[t]};
      extend(t + 1, chosen, found[w]);
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }
  if (overflow) fail(ErrorKind::CapExceeded, "more than " + std::to_string(kCliqueCap) + " cliques");
  out.cliques = clique_count;
  for (auto& f : found)
    for (auto& r : f) out.results.push_back(std::move(r));
  std::sort(out.results.begin(), out.results.end(), [&](const SearchResult& a, const SearchResult& b) {
    const auto& x = a.candidate.summands;
    const auto& y = b.candidate.summands;
    for (size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
      if (x[i].line == y[i].line) continue;
      return canonical_less(W, x[i].line, y[i].line);
    }
    return x.size() < y.size();
  });
  return out;
}

}  // namespace glt::tilting
