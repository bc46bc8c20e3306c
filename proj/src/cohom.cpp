#include "glt/cohom.hpp"

#include "glt/linalg.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace glt::cohom {

using picard::Kind;
using picard::SurfaceModel;

std::string to_string(const CohomologyVector& v) {
  std::ostringstream os;
  os << "(h0=" << v.h0 << ", h1=" << v.h1 << ", h2=" << v.h2 << ", chi=" << v.chi << ")";
  return os.str();
}

i64 euler_char(const SurfaceModel& S, const DivClass& D) {
  i64 twice = S.dot(D, D) - S.dot(D, S.canonical);
  require(twice % 2 == 0, ErrorKind::Internal, "odd D.(D-K)");
  return 1 + twice / 2;
}

namespace {

i64 p1_h0(i64 a) { return a >= 0 ? a + 1 : 0; }
i64 p1_h1(i64 a) { return a <= -2 ? -a - 1 : 0; }

CohomologyVector finish(i64 h0, i64 h2, i64 chi) {
  CohomologyVector v{h0, h0 + h2 - chi, h2, chi};
  require(v.h1 >= 0, ErrorKind::Internal, "negative h1");
  return v;
}

CohomologyVector plane(i64 d) {
  i64 h0 = d >= 0 ? binom(d + 2, 2) : 0;
  i64 h2 = d <= -3 ? binom(-d - 1, 2) : 0;
  i64 chi = (d + 1) * (d + 2) / 2;
  return finish(h0, h2, chi);
}

CohomologyVector hirzebruch_closed(const SurfaceModel& S, const DivClass& D) {
  const i64 s = S.hirzebruch_s;
  i64 a = D[0], b = D[1];
  if (a == -1) return {0, 0, 0, 0};
  if (a <= -2) {
    DivClass dual = sub(S.canonical, D);
    CohomologyVector v = hirzebruch_closed(S, dual);
    return {v.h2, v.h1, v.h0, euler_char(S, D)};
  }
  CohomologyVector v;
  for (i64 j = 0; j <= a; ++j) {
    v.h0 += p1_h0(b - j * s);
    v.h1 += p1_h1(b - j * s);
  }
  v.chi = v.h0 - v.h1;
  return v;
}

i64 h0_reduce(const SurfaceModel& S, DivClass D) {
  for (int iter = 0; iter < 10000; ++iter) {
    if (S.dot(D, S.ample_ref) < 0) return 0;
    bool moved = false;
    for (const auto& c : S.curves) {
      i64 p = S.dot(D, c.cls);
      if (p >= 0) continue;
      if (c.self_int >= 0) return 0;
      if (!c.irreducible) continue;
      D = sub(D, c.cls);
      moved = true;
      break;
    }
    if (!moved) return euler_char(S, D);
  }
  fail(ErrorKind::NonTermination, "h0 reduction exceeded 10^4 steps");
}

CohomologyVector compute(const SurfaceModel& S, const DivClass& D) {
  require(D.size() == S.rank(), ErrorKind::PreconditionViolated, "class length differs from Picard rank");
  const i64 chi = euler_char(S, D);
  switch (S.kind) {
    case Kind::ProjectivePlane: return plane(D[0]);
    case Kind::P1xP1: {
      i64 a = D[0], b = D[1];
      CohomologyVector v;
      v.h0 = p1_h0(a) * p1_h0(b);
      v.h1 = p1_h0(a) * p1_h1(b) + p1_h1(a) * p1_h0(b);
      v.h2 = p1_h1(a) * p1_h1(b);
      v.chi = chi;
      return v;
    }
    case Kind::Hirzebruch: return hirzebruch_closed(S, D);
    case Kind::BlowupP2: break;
  }
  const int n = S.config.count;
  if (n == 0) return plane(D[0]);
  if (n == 9) {
    // K = (-3, 1, ..., 1): the multiple is read off an exceptional coefficient.
    const i64 r = D[1];
    if (scale(r, S.canonical) != D || !S.anticanonical_torsion_order)
      fail(ErrorKind::OutsideValidityDomain,
           "9-point models support only multiples of K with a known anticanonical restriction");
    return nine_point_multiple_of_k(*S.anticanonical_torsion_order, r);
  }
  if (!picard::is_big_nef(S, scale(-1, S.canonical)))
    fail(ErrorKind::OutsideValidityDomain, "-K is not big and nef on this blowup");
  i64 h0 = h0_reduce(S, D);
  i64 h2 = h0_reduce(S, sub(S.canonical, D));
  return finish(h0, h2, chi);
}

}  // namespace

CohomologyVector nine_point_multiple_of_k(int m, i64 r) {
  // Class rK; -K is the cubic through the points.
  auto h0_anti = [&](i64 k) -> i64 {  // h0(-kK), k >= 0
    if (k < 0) return 0;
    return m == 0 ? 1 : 1 + k / m;
  };
  i64 h0 = r <= 0 ? h0_anti(-r) : 0;
  i64 h2 = r >= 1 ? h0_anti(r - 1) : 0;
  return finish(h0, h2, 1);
}

CohomologyVector cohomology(const SurfaceModel& S, const DivClass& D, Memo* memo) {
  if (!memo) return compute(S, D);
  return memo->get_or_compute(S.fingerprint() + "|" + vec_str(D), [&] { return compute(S, D); });
}

i64 h0(const SurfaceModel& S, const DivClass& D) { return cohomology(S, D).h0; }

// ---------------------------------------------------------------------------
// Oracle

namespace {

using Pt = std::array<Q, 2>;

struct Line {
  Q a, b, c;  // a x + b y + c = 0
};

Line line_through(const Pt& p, const Pt& q) {
  Line l{p[1] - q[1], q[0] - p[0], 0};
  l.c = -(l.a * p[0] + l.b * p[1]);
  return l;
}

std::array<Q, 6> conic_row(const Pt& p) {
  return {p[0] * p[0], p[0] * p[1], p[1] * p[1], p[0], p[1], Q(1)};
}

Q conic_eval(const linalg::Vec& c, const Pt& p) {
  auto r = conic_row(p);
  Q v = 0;
  for (size_t i = 0; i < 6; ++i) v += c[i] * r[i];
  return v;
}

bool collinear(const Pt& p, const Pt& q, const Pt& r) {
  return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]) == 0;
}

bool on_common_conic(const std::vector<Pt>& pts) {
  linalg::Matrix m;
  for (auto& p : pts) {
    auto r = conic_row(p);
    m.emplace_back(r.begin(), r.end());
  }
  return linalg::rank(m) < 6;
}

std::optional<Q> rational_sqrt(const Q& v) {
  if (v < 0) return std::nullopt;
  Z n = boost::multiprecision::numerator(v), d = boost::multiprecision::denominator(v);
  Z sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
  if (sn * sn != n || sd * sd != d) return std::nullopt;
  return Q(sn, sd);
}

class PointGen {
 public:
  PointGen(const picard::PointConfiguration& cfg, std::uint64_t seed)
      : cfg_(cfg), rng_(seed), specials_(picard::merged_special_curves(cfg)) {}

  std::vector<Pt> run() {
    if (!cfg_.singular_cubic_nodes.empty())
      fail(ErrorKind::IncidenceUnrealizable, "singular cubic conditions are not generated");
    std::vector<int> order(static_cast<size_t>(cfg_.count));
    std::iota(order.begin(), order.end(), 0);
    for (int attempt = 0; attempt < 400; ++attempt) {
      if (attempt > 0) std::shuffle(order.begin(), order.end(), rng_);
      std::vector<std::optional<Pt>> pts(static_cast<size_t>(cfg_.count));
      bool ok = true;
      for (int i : order) {
        auto p = place(i, pts);
        if (!p) {
          ok = false;
          break;
        }
        pts[static_cast<size_t>(i)] = p;
      }
      if (!ok) continue;
      std::vector<Pt> out;
      for (auto& p : pts) out.push_back(*p);
      if (verify(out)) return out;
    }
    fail(ErrorKind::IncidenceUnrealizable, "could not realize the declared incidences");
  }

 private:
  Q rand_int(int lo, int hi) { return Q(std::uniform_int_distribution<int>(lo, hi)(rng_)); }
  Q rand_q() {
    Q num = rand_int(-40, 40);
    Q den = rand_int(1, 13);
    return num / den;
  }

  std::optional<Pt> place(int i, const std::vector<std::optional<Pt>>& pts) {
    std::vector<Line> lines;
    std::vector<std::pair<linalg::Vec, Pt>> conics;  // equation and a known point on it
    for (auto& sc : specials_) {
      if (std::find(sc.points.begin(), sc.points.end(), i) == sc.points.end()) continue;
      std::vector<Pt> placed;
      for (int j : sc.points)
        if (pts[static_cast<size_t>(j)]) placed.push_back(*pts[static_cast<size_t>(j)]);
      if (sc.degree == 1 && placed.size() >= 2) lines.push_back(line_through(placed[0], placed[1]));
      if (sc.degree == 2 && placed.size() >= 5) {
        linalg::Matrix m;
        for (size_t k = 0; k < 5; ++k) {
          auto r = conic_row(placed[k]);
          m.emplace_back(r.begin(), r.end());
        }
        auto ker = linalg::kernel(m, 6);
        if (ker.size() != 1) return std::nullopt;
        conics.push_back({ker[0], placed[0]});
      }
    }
    if (conics.size() >= 2) return std::nullopt;
    if (conics.empty()) {
      if (lines.empty()) return Pt{rand_int(-60, 60), rand_int(-60, 60)};
      if (lines.size() == 1) {
        const Line& l = lines[0];
        // Parametrize the line by a point and direction.
        Pt base = l.b != 0 ? Pt{Q(0), -l.c / l.b} : Pt{-l.c / l.a, Q(0)};
        Pt dir{l.b, -l.a};
        Q t = rand_q();
        return Pt{base[0] + t * dir[0], base[1] + t * dir[1]};
      }
      const Line &l1 = lines[0], &l2 = lines[1];
      Q det = l1.a * l2.b - l2.a * l1.b;
      if (det == 0) return std::nullopt;
      return Pt{(l1.b * l2.c - l2.b * l1.c) / det, (l2.a * l1.c - l1.a * l2.c) / det};
    }
    const auto& [eq, known] = conics[0];
    if (lines.size() >= 2) return std::nullopt;
    Pt base, dir;
    if (lines.empty()) {
      base = known;
      dir = rng_() % 7 == 0 ? Pt{Q(0), Q(1)} : Pt{Q(1), rand_q()};
    } else {
      const Line& l = lines[0];
      base = l.b != 0 ? Pt{Q(0), -l.c / l.b} : Pt{-l.c / l.a, Q(0)};
      dir = {l.b, -l.a};
    }
    // q(t) = eq(base + t dir) = A t^2 + B t + C
    auto at = [&](const Q& t) { return conic_eval(eq, Pt{base[0] + t * dir[0], base[1] + t * dir[1]}); };
    Q C = at(0), P1 = at(1), M1 = at(-1);
    Q A = (P1 + M1) / 2 - C, B = (P1 - M1) / 2;
    if (A == 0) return std::nullopt;
    auto disc = rational_sqrt(B * B - 4 * A * C);
    if (!disc) return std::nullopt;
    std::vector<Q> roots{(-B + *disc) / (2 * A), (-B - *disc) / (2 * A)};
    std::shuffle(roots.begin(), roots.end(), rng_);
    for (auto& t : roots) {
      Pt p{base[0] + t * dir[0], base[1] + t * dir[1]};
      bool fresh = true;
      for (auto& q : pts)
        if (q && *q == p) fresh = false;
      if (fresh) return p;
    }
    return std::nullopt;
  }

  bool expected_collinear(const std::vector<int>& idx) const {
    for (auto& sc : specials_) {
      if (sc.degree != 1) continue;
      if (std::includes(sc.points.begin(), sc.points.end(), idx.begin(), idx.end())) return true;
    }
    return false;
  }

  bool expected_conic(const std::vector<int>& idx) const {
    for (auto& sc : specials_) {
      if (sc.degree == 2 &&
          std::includes(sc.points.begin(), sc.points.end(), idx.begin(), idx.end()))
        return true;
      if (sc.degree == 1) {
        std::vector<int> inter;
        std::set_intersection(idx.begin(), idx.end(), sc.points.begin(), sc.points.end(),
                              std::back_inserter(inter));
        if (inter.size() >= 4) return true;
      }
    }
    // Two collinear triples make a reducible conic.
    for (int mask = 0; mask < 64; ++mask) {
      if (__builtin_popcount(static_cast<unsigned>(mask)) != 3 || !(mask & 1)) continue;
      std::vector<int> a, b;
      for (int k = 0; k < 6; ++k) (mask >> k & 1 ? a : b).push_back(idx[static_cast<size_t>(k)]);
      if (expected_collinear(a) && expected_collinear(b)) return true;
    }
    return false;
  }

  bool verify(const std::vector<Pt>& p) const {
    const int n = cfg_.count;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (p[static_cast<size_t>(i)] == p[static_cast<size_t>(j)]) return false;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          bool col = collinear(p[static_cast<size_t>(i)], p[static_cast<size_t>(j)],
                               p[static_cast<size_t>(k)]);
          if (col != expected_collinear({i, j, k})) return false;
        }
    if (n >= 6) {
      std::vector<int> idx(6);
      std::function<bool(int, int)> rec = [&](int start, int depth) -> bool {
        if (depth == 6) {
          std::vector<Pt> sub;
          for (int i : idx) sub.push_back(p[static_cast<size_t>(i)]);
          return on_common_conic(sub) == expected_conic(idx);
        }
        for (int i = start; i < n; ++i) {
          idx[static_cast<size_t>(depth)] = i;
          if (!rec(i + 1, depth + 1)) return false;
        }
        return true;
      };
      if (!rec(0, 0)) return false;
    }
    if (n == 8) {
      for (int i = 0; i < 8; ++i) {
        std::vector<i64> m(8, 1);
        m[static_cast<size_t>(i)] = 2;
        if (interpolation_h0(3, m, p) != 0) return false;
      }
    }
    return true;
  }

  const picard::PointConfiguration& cfg_;
  std::mt19937_64 rng_;
  std::vector<picard::SpecialCurve> specials_;
};

}  // namespace

std::vector<std::array<Q, 2>> realize_points(const picard::PointConfiguration& config,
                                             std::uint64_t seed) {
  PointGen g(config, seed);
  return g.run();
}

i64 interpolation_h0(i64 d, const std::vector<i64>& mult, const std::vector<std::array<Q, 2>>& pts) {
  if (d < 0) return 0;
  std::vector<std::pair<i64, i64>> monos;
  for (i64 p = 0; p <= d; ++p)
    for (i64 q = 0; p + q <= d; ++q) monos.push_back({p, q});
  linalg::RowSpan span(monos.size());
  for (size_t k = 0; k < pts.size(); ++k) {
    const i64 m = mult[k];
    if (m <= 0) continue;
    const Q &a = pts[k][0], &b = pts[k][1];
    std::vector<Q> apow(static_cast<size_t>(d) + 1, Q(1)), bpow(static_cast<size_t>(d) + 1, Q(1));
    for (size_t e = 1; e <= static_cast<size_t>(d); ++e) {
      apow[e] = apow[e - 1] * a;
      bpow[e] = bpow[e - 1] * b;
    }
    for (i64 i = 0; i < m; ++i)
      for (i64 j = 0; i + j < m; ++j) {
        linalg::Vec row(monos.size(), Q(0));
        for (size_t c = 0; c < monos.size(); ++c) {
          auto [p, q] = monos[c];
          if (p < i || q < j) continue;
          row[c] = Q(binom(p, i) * binom(q, j)) * apow[static_cast<size_t>(p - i)] *
                   bpow[static_cast<size_t>(q - j)];
        }
        span.add(row);
        if (span.rank() == monos.size()) return 0;
      }
  }
  return static_cast<i64>(monos.size() - span.rank());
}

CohomologyVector cohomology_oracle(const SurfaceModel& S, const DivClass& D, std::uint64_t seed) {
  require(S.kind == Kind::BlowupP2 || S.kind == Kind::ProjectivePlane,
          ErrorKind::PreconditionViolated, "the oracle works on blowups of P^2");
  auto pts = realize_points(S.config, seed);
  auto h0_of = [&](const DivClass& c) {
    std::vector<i64> m;
    for (size_t i = 1; i < c.size(); ++i) m.push_back(std::max<i64>(-c[i], 0));
    return interpolation_h0(c[0], m, pts);
  };
  i64 h0 = h0_of(D);
  i64 h2 = h0_of(sub(S.canonical, D));
  return finish(h0, h2, euler_char(S, D));
}

}  // namespace glt::cohom
