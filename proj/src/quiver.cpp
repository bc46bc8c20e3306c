#include "glt/coxquiver.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace glt::coxquiver {

// ---------------------------------------------------------------------------
// Complexes and presented bundles

Complex as_complex(const PresentedBundle& P) {
  Complex C;
  const int lo = P.side == PresentedBundle::Side::Kernel ? 0 : -1;
  C.terms[lo] = P.source;
  C.terms[lo + 1] = P.target;
  C.diff[lo] = P.map;
  return C;
}

Complex line_complex(const LClass& a) {
  Complex C;
  C.terms[0] = {a};
  return C;
}

Complex twist(const wps::WeightedSurface& W, const Complex& C, const LClass& by) {
  Complex T = C;
  for (auto& [k, v] : T.terms)
    for (auto& a : v) a = wps::plus(W, a, by);
  return T;
}

void check_presented(CoxEngine& E, const PresentedBundle& P) {
  const auto& W = E.surface();
  require(P.map.size() == P.source.size(), ErrorKind::PreconditionViolated,
          P.name + ": map rows must match the source summands");
  for (size_t i = 0; i < P.source.size(); ++i) {
    require(P.map[i].size() == P.target.size(), ErrorKind::PreconditionViolated,
            P.name + ": map columns must match the target summands");
    for (size_t j = 0; j < P.target.size(); ++j) {
      const Poly& f = P.map[i][j];
      if (f.is_zero()) continue;
      auto d = E.degree_of(f);
      require(d && *d == wps::minus(W, P.target[j], P.source[i]), ErrorKind::PreconditionViolated,
              P.name + ": map entry " + E.format(f) + " has the wrong degree");
    }
  }
}

std::vector<PresentedBundle> four_line_presented(CoxEngine& E) {
  const auto& W = E.surface();
  require(E.ring().family == "P2-four-lines", ErrorKind::UnsupportedFamily,
          "Omega and Xi are defined for P^2 weighted on four lines");
  for (auto& w : W.weighted)
    require(w.weight == 2, ErrorKind::UnsupportedFamily, "Omega and Xi need all weights equal to 2");
  PresentedBundle omega, xi;
  omega.name = "Omega";
  omega.side = PresentedBundle::Side::Kernel;
  xi.name = "Xi";
  xi.side = PresentedBundle::Side::Cokernel;
  LClass H = wps::from_pic(W, {1});
  omega.target = {wps::times(W, 2, H)};
  xi.source = {wps::zero(W)};
  xi.map.assign(1, {});
  for (size_t i = 0; i < 4; ++i) {
    omega.source.push_back(wps::plus(W, H, wps::unit(W, i)));
    omega.map.push_back({E.generator(i)});
    xi.target.push_back(wps::unit(W, i));
    xi.map[0].push_back(E.generator(i));
  }
  check_presented(E, omega);
  check_presented(E, xi);
  return {omega, xi};
}

linalg::Matrix hom_into_kernel(CoxEngine& E, const PresentedBundle& P, const LClass& a) {
  require(P.side == PresentedBundle::Side::Kernel, ErrorKind::PreconditionViolated,
          P.name + ": Hom into a cokernel bundle is not a syzygy space");
  const auto& W = E.surface();
  std::vector<size_t> offset{0};
  for (auto& s : P.source) offset.push_back(offset.back() + E.piece(wps::minus(W, s, a))->dim);
  const size_t cols = offset.back();
  size_t rows = 0;
  for (auto& t : P.target) rows += E.piece(wps::minus(W, t, a))->dim;
  linalg::Matrix M = linalg::zeros(rows, cols);
  size_t row0 = 0;
  for (size_t j = 0; j < P.target.size(); ++j) {
    const LClass to = wps::minus(W, P.target[j], a);
    const size_t h = E.piece(to)->dim;
    for (size_t i = 0; i < P.source.size(); ++i) {
      if (P.map[i][j].is_zero()) continue;
      auto B = E.mult_matrix(P.map[i][j], wps::minus(W, P.source[i], a), to);
      for (size_t r = 0; r < h; ++r)
        for (size_t c = 0; c < offset[i + 1] - offset[i]; ++c) M[row0 + r][offset[i] + c] += B[r][c];
    }
    row0 += h;
  }
  return linalg::kernel(M, cols);
}

SyzygyLift xi_omega_liftability(CoxEngine& E, i64 r) {
  const auto& W = E.surface();
  auto bundles = four_line_presented(E);
  const LClass shift = wps::times(W, -r, wps::k_A(W));
  PresentedBundle omega = bundles[0];
  for (auto& s : omega.source) s = wps::plus(W, s, shift);
  for (auto& t : omega.target) t = wps::plus(W, t, shift);
  const PresentedBundle& xi = bundles[1];
  SyzygyLift out;
  out.r = r;
  const auto base = hom_into_kernel(E, omega, xi.source[0]);
  out.syzygies = base.size();
  size_t dim = 0;
  for (auto& s : omega.source) dim += E.piece(wps::minus(W, s, xi.source[0]))->dim;
  linalg::RowSpan image(dim);
  for (size_t j = 0; j < xi.target.size(); ++j) {
    const LClass a = xi.target[j];
    const Poly& x = xi.map[0][j];
    for (auto& g : hom_into_kernel(E, omega, a)) {
      linalg::Vec f;
      size_t off = 0;
      for (auto& s : omega.source) {
        const LClass from = wps::minus(W, s, a), to = wps::minus(W, s, xi.source[0]);
        const size_t n = E.piece(from)->dim;
        auto B = E.mult_matrix(x, from, to);
        for (size_t row = 0; row < B.size(); ++row) {
          Q v = 0;
          for (size_t c = 0; c < n; ++c) v += B[row][c] * g[off + c];
          f.push_back(v);
        }
        off += n;
      }
      image.add(f);
    }
  }
  out.lifted = image.rank();
  return out;
}

// ---------------------------------------------------------------------------
// Ext via the E1 page of the Hom double complex

namespace {

struct Block {
  int i, j;      // cohomological degrees in P and Q
  size_t a, b;   // summand indices
  size_t offset, dim;
};

}  // namespace

cohom::CohomologyVector les_ext(CoxEngine& E, const Complex& P, const Complex& Qc, cohom::Memo* memo) {
  const auto& W = E.surface();
  const LClass K = wps::k_A(W);
  // Constituent cohomology; H^1 must vanish for the E1 page to be two rows.
  auto sheaf = [&](const LClass& a, const LClass& b) {
    auto h = wps::ext_dims(W, a, b, memo);
    require(h.h1 == 0, ErrorKind::OutsideValidityDomain,
            "a constituent Hom sheaf has H^1; connecting ranks would be ambiguous");
    return h;
  };
  int nmin = 100, nmax = -100;
  for (auto& [i, pa] : P.terms)
    for (auto& [j, qb] : Qc.terms) {
      nmin = std::min(nmin, j - i);
      nmax = std::max(nmax, j - i);
    }
  std::map<int, i64> ext;
  for (int q : {0, 2}) {
    // Column n of row q.
    std::map<int, std::vector<Block>> cols;
    std::map<int, size_t> coldim;
    for (auto& [i, pa] : P.terms)
      for (auto& [j, qb] : Qc.terms)
        for (size_t a = 0; a < pa.size(); ++a)
          for (size_t b = 0; b < qb.size(); ++b) {
            auto h = sheaf(pa[a], qb[b]);
            size_t dim;
            if (q == 0) {
              dim = E.piece(wps::minus(W, qb[b], pa[a]))->dim;
              require(static_cast<i64>(dim) == h.h0, ErrorKind::Internal, "graded piece disagrees with h0");
            } else {
              dim = E.piece(wps::minus(W, wps::plus(W, pa[a], K), qb[b]))->dim;
              require(static_cast<i64>(dim) == h.h2, ErrorKind::Internal, "Serre dual piece disagrees with h2");
            }
            const int n = j - i;
            cols[n].push_back({i, j, a, b, coldim[n], dim});
            coldim[n] += dim;
          }
    auto find_block = [&](int n, int i, int j, size_t a, size_t b) -> const Block& {
      for (auto& blk : cols[n])
        if (blk.i == i && blk.j == j && blk.a == a && blk.b == b) return blk;
      fail(ErrorKind::Internal, "missing block");
    };
    // d: column n -> column n+1
    std::map<int, linalg::Matrix> d;
    for (int n = nmin; n < nmax; ++n) {
      linalg::Matrix M = linalg::zeros(coldim[n + 1], coldim[n]);
      const Q pre_sign = (n % 2 == 0) ? Q(-1) : Q(1);
      auto place = [&](const Block& src, const Block& dst, const linalg::Matrix& blockM, const Q& sign) {
        for (size_t r = 0; r < dst.dim; ++r)
          for (size_t c = 0; c < src.dim; ++c)
            if (blockM[r][c] != 0) M[dst.offset + r][src.offset + c] += sign * blockM[r][c];
      };
      for (auto& src : cols[n]) {
        const LClass& a = P.terms.at(src.i)[src.a];
        const LClass& b = Qc.terms.at(src.j)[src.b];
        // Post-composition with the differential of Q.
        auto dq = Qc.diff.find(src.j);
        if (dq != Qc.diff.end()) {
          const auto& targets = Qc.terms.at(src.j + 1);
          for (size_t b2 = 0; b2 < targets.size(); ++b2) {
            const Poly& e = dq->second[src.b][b2];
            if (e.is_zero()) continue;
            const Block& dst = find_block(n + 1, src.i, src.j + 1, src.a, b2);
            linalg::Matrix bm;
            if (q == 0) {
              bm = E.mult_matrix(e, wps::minus(W, b, a), wps::minus(W, targets[b2], a));
            } else {
              LClass aK = wps::plus(W, a, K);
              bm = linalg::transpose(E.mult_matrix(e, wps::minus(W, aK, targets[b2]), wps::minus(W, aK, b)),
                                     E.piece(wps::minus(W, aK, targets[b2]))->dim);
            }
            place(src, dst, bm, Q(1));
          }
        }
        // Pre-composition with the differential of P.
        auto dp = P.diff.find(src.i - 1);
        if (dp != P.diff.end()) {
          const auto& sources = P.terms.at(src.i - 1);
          for (size_t a2 = 0; a2 < sources.size(); ++a2) {
            const Poly& e = dp->second[a2][src.a];
            if (e.is_zero()) continue;
            const Block& dst = find_block(n + 1, src.i - 1, src.j, a2, src.b);
            linalg::Matrix bm;
            if (q == 0) {
              bm = E.mult_matrix(e, wps::minus(W, b, a), wps::minus(W, b, sources[a2]));
            } else {
              LClass from = wps::minus(W, wps::plus(W, sources[a2], K), b);
              bm = linalg::transpose(E.mult_matrix(e, from, wps::minus(W, wps::plus(W, a, K), b)),
                                     E.piece(from)->dim);
            }
            place(src, dst, bm, pre_sign);
          }
        }
      }
      d[n] = std::move(M);
    }
    for (int n = nmin; n + 1 < nmax; ++n) {
      auto dd = linalg::multiply(d[n + 1], d[n], coldim[n]);
      for (auto& row : dd)
        for (auto& x : row) require(x == 0, ErrorKind::Internal, "d^2 != 0 in the Hom complex");
    }
    for (int n = nmin; n <= nmax; ++n) {
      i64 dim = static_cast<i64>(coldim[n]);
      i64 rk_out = d.count(n) ? static_cast<i64>(linalg::rank(d[n])) : 0;
      i64 rk_in = d.count(n - 1) ? static_cast<i64>(linalg::rank(d[n - 1])) : 0;
      ext[n + q] += dim - rk_out - rk_in;
    }
  }
  for (auto& [n, v] : ext)
    if (n < 0 || n > 2)
      require(v == 0, ErrorKind::PreconditionViolated,
              "complexes are not quasi-isomorphic to sheaves (Ext in degree " + std::to_string(n) + ")");
  cohom::CohomologyVector out;
  out.h0 = ext[0];
  out.h1 = ext[1];
  out.h2 = ext[2];
  out.chi = out.h0 - out.h1 + out.h2;
  return out;
}

// ---------------------------------------------------------------------------
// Quivers

namespace {

using Path = std::vector<int>;

Poly path_element(CoxEngine& E, const Quiver& q, const Path& p) {
  Poly r = Poly::constant(E.ring().nvars(), Q(1));
  for (int a : p) r = r * q.arrows[static_cast<size_t>(a)].element;
  return r;
}

void enumerate_paths(const Quiver& q, int from, int to, std::vector<Path>& out) {
  Path cur;
  std::function<void(int)> rec = [&](int v) {
    if (v == to && !cur.empty()) out.push_back(cur);
    for (size_t k = 0; k < q.arrows.size(); ++k) {
      if (q.arrows[k].from != v) continue;
      cur.push_back(static_cast<int>(k));
      rec(q.arrows[k].to);
      cur.pop_back();
    }
  };
  rec(from);
}

}  // namespace

std::string path_text(const Quiver& q, const std::vector<int>& path) {
  std::ostringstream os;
  for (size_t i = 0; i < path.size();) {
    size_t j = i;
    const auto& label = q.arrows[static_cast<size_t>(path[i])].label;
    while (j < path.size() && q.arrows[static_cast<size_t>(path[j])].label == label) ++j;
    os << q.arrows[static_cast<size_t>(path[i])].label;
    if (j - i > 1) os << '^' << j - i;
    i = j;
  }
  return os.str();
}

namespace {

std::string coeff_text(const Q& c, bool first) {
  std::string s;
  Q a = c < 0 ? Q(-c) : c;
  if (first) s = c < 0 ? "-" : "";
  else s = c < 0 ? " - " : " + ";
  if (a != 1)
    s += (boost::multiprecision::denominator(a) == 1 ? boost::multiprecision::numerator(a).str() : q_str(a)) + " ";
  return s;
}

std::string relation_text(CoxEngine& E, const Quiver& q, const PathRelation& r) {
  // Left side: a power of one label hitting a ring relation's distinguished monomial, else a
  // longest path.
  auto ring_power = [&](const Path& p) -> const Relation* {
    const auto& l0 = q.arrows[static_cast<size_t>(p[0])].label;
    for (int a : p)
      if (q.arrows[static_cast<size_t>(a)].label != l0) return nullptr;
    Poly pe = path_element(E, q, p);
    if (pe.terms.size() != 1) return nullptr;
    for (auto& rel : E.ring().relations)
      if (rel.lead && pe.terms.begin()->first == *rel.lead) return &rel;
    return nullptr;
  };
  size_t lhs = 0;
  const Relation* hit = nullptr;
  for (size_t k = 0; k < r.terms.size(); ++k)
    if (auto rel = ring_power(r.terms[k].first)) {
      lhs = k;
      hit = rel;
      break;
    }
  if (!hit)
    for (size_t k = 1; k < r.terms.size(); ++k)
      if (r.terms[k].first.size() > r.terms[lhs].first.size()) lhs = k;
  const Q lc = r.terms[lhs].second;
  std::ostringstream os;
  std::string left = path_text(q, r.terms[lhs].first);
  std::ostringstream right;
  bool first = true;
  for (size_t k = 0; k < r.terms.size(); ++k) {
    if (k == lhs) continue;
    right << coeff_text(-r.terms[k].second / lc, first) << path_text(q, r.terms[k].first);
    first = false;
  }
  std::string rhs = first ? "0" : right.str();
  if (hit) {
    auto eq = hit->display.find(" = ");
    if (eq != std::string::npos && hit->display.substr(0, eq) == left)
      return hit->display + "  (" + hit->display.substr(eq + 3) + " = " + rhs + ")";
  }
  return left + " = " + rhs;
}

}  // namespace

Quiver quiver(CoxEngine& E, const std::vector<LClass>& T, const std::vector<std::string>& names,
              std::optional<i64> degree_bound) {
  const auto& W = E.surface();
  Quiver q;
  require(names.empty() || names.size() == T.size(), ErrorKind::PreconditionViolated,
          "one vertex name per summand");
  q.vertices = names;
  if (q.vertices.empty())
    for (auto& a : T) q.vertices.push_back("O(" + wps::to_string(W, a) + ")");
  q.degrees = T;
  const int n = static_cast<int>(T.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b)
        require(T[static_cast<size_t>(a)] != T[static_cast<size_t>(b)], ErrorKind::PreconditionViolated,
                "summands must be pairwise distinct");
  auto gap = [&](int a, int b) {
    return wps::degree(W, wps::minus(W, T[static_cast<size_t>(b)], T[static_cast<size_t>(a)]));
  };
  auto hom_deg = [&](int a, int b) { return wps::minus(W, T[static_cast<size_t>(b)], T[static_cast<size_t>(a)]); };
  i64 maxgap = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) maxgap = std::max(maxgap, gap(a, b));
  q.degree_bound = degree_bound ? *degree_bound : 2 * maxgap;
  require(E.piece(wps::zero(W))->dim == 1, ErrorKind::PreconditionViolated, "degree-0 piece must be the field");

  // Arrows: Hom(a,b) modulo products through other vertices.
  std::vector<std::pair<std::string, Poly>> candidates;
  for (size_t i = 0; i < E.ring().nvars(); ++i) candidates.push_back({E.ring().gens[i].name, E.generator(i)});
  for (auto& al : E.ring().aliases) candidates.push_back(al);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || gap(a, b) <= 0) continue;
      LClass d = hom_deg(a, b);
      auto piece = E.piece(d);
      if (piece->dim == 0) continue;
      linalg::RowSpan span(piece->dim);
      for (int c = 0; c < n; ++c) {
        if (c == a || c == b || gap(a, c) <= 0 || gap(c, b) <= 0) continue;
        auto p1 = E.piece(hom_deg(a, c));
        auto p2 = E.piece(hom_deg(c, b));
        for (auto& m1 : p1->basis)
          for (auto& m2 : p2->basis) span.add(E.coords(Poly::monomial(m1) * Poly::monomial(m2), d));
      }
      std::vector<std::pair<std::string, Poly>> local = candidates;
      for (auto& m : piece->basis) local.push_back({E.format(Poly::monomial(m)), Poly::monomial(m)});
      for (auto& [label, f] : local) {
        if (span.rank() == piece->dim) break;
        auto fd = E.degree_of(f);
        if (!fd || *fd != d) continue;
        if (span.add(E.coords(f, d))) q.arrows.push_back({a, b, label, f});
      }
    }

  // Relations, pair by pair in increasing degree.
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && gap(a, b) > 0 && gap(a, b) <= q.degree_bound) pairs.push_back({a, b});
  std::stable_sort(pairs.begin(), pairs.end(),
                   [&](auto& x, auto& y) { return gap(x.first, x.second) < gap(y.first, y.second); });
  q.hilbert_ok = true;
  for (auto [a, b] : pairs) {
    std::vector<Path> paths;
    enumerate_paths(q, a, b, paths);
    std::sort(paths.begin(), paths.end());
    LClass d = hom_deg(a, b);
    const size_t homdim = E.piece(d)->dim;
    if (paths.empty()) {
      if (homdim != 0) q.hilbert_ok = false;
      continue;
    }
    std::map<Path, size_t> index;
    for (size_t k = 0; k < paths.size(); ++k) index[paths[k]] = k;
    linalg::Matrix eval = linalg::zeros(homdim, paths.size());
    for (size_t k = 0; k < paths.size(); ++k) {
      auto v = E.coords(path_element(E, q, paths[k]), d);
      for (size_t r = 0; r < homdim; ++r) eval[r][k] = v[r];
    }
    auto kernel = linalg::rref(linalg::kernel(eval, paths.size())).rows;
    // Ideal generated by relations found at smaller pairs.
    linalg::RowSpan ideal(paths.size());
    for (auto& rel : q.relations) {
      std::vector<Path> pre, post;
      if (rel.from == a) pre.push_back({});
      else enumerate_paths(q, a, rel.from, pre);
      if (rel.to == b) post.push_back({});
      else enumerate_paths(q, rel.to, b, post);
      for (auto& p1 : pre)
        for (auto& p2 : post) {
          linalg::Vec v(paths.size(), Q(0));
          for (auto& [mid, c] : rel.terms) {
            Path full = p1;
            full.insert(full.end(), mid.begin(), mid.end());
            full.insert(full.end(), p2.begin(), p2.end());
            auto it = index.find(full);
            if (it != index.end()) v[it->second] += c;
          }
          ideal.add(v);
        }
    }
    for (auto& kv : kernel) {
      if (!ideal.add(kv)) continue;
      PathRelation r;
      r.from = a;
      r.to = b;
      for (size_t k = 0; k < paths.size(); ++k)
        if (kv[k] != 0) r.terms.push_back({paths[k], kv[k]});
      r.text = relation_text(E, q, r);
      q.relations.push_back(std::move(r));
    }
    if (paths.size() - ideal.rank() != homdim) q.hilbert_ok = false;
  }
  if (!q.hilbert_ok)
    fail(ErrorKind::DegreeBoundTooSmall, "paths modulo relations do not reproduce the Hom dimensions");
  return q;
}

std::string to_dot(const Quiver& q) {
  std::ostringstream os;
  os << "digraph quiver {\n  rankdir=LR;\n";
  for (size_t v = 0; v < q.vertices.size(); ++v)
    os << "  v" << v << " [label=\"" << q.vertices[v] << "\"];\n";
  for (auto& a : q.arrows) os << "  v" << a.from << " -> v" << a.to << " [label=\"" << a.label << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string relations_text(const Quiver& q) {
  std::ostringstream os;
  for (auto& r : q.relations)
    os << q.vertices[static_cast<size_t>(r.from)] << " -> " << q.vertices[static_cast<size_t>(r.to)] << ": "
       << r.text << "\n";
  return os.str();
}

linalg::Vec evaluate_paths(CoxEngine& E, const Quiver& q,
                           const std::vector<std::pair<std::vector<int>, Q>>& terms) {
  require(!terms.empty(), ErrorKind::PreconditionViolated, "empty path combination");
  int from = q.arrows[static_cast<size_t>(terms[0].first.front())].from;
  int to = q.arrows[static_cast<size_t>(terms[0].first.back())].to;
  const auto& W = E.surface();
  LClass d = wps::minus(W, q.degrees[static_cast<size_t>(to)], q.degrees[static_cast<size_t>(from)]);
  Poly total;
  for (auto& [p, c] : terms) {
    require(q.arrows[static_cast<size_t>(p.front())].from == from &&
                q.arrows[static_cast<size_t>(p.back())].to == to,
            ErrorKind::PreconditionViolated, "paths have different endpoints");
    for (size_t k = 0; k + 1 < p.size(); ++k)
      require(q.arrows[static_cast<size_t>(p[k])].to == q.arrows[static_cast<size_t>(p[k + 1])].from,
              ErrorKind::PreconditionViolated, "arrows do not compose");
    total = total + c * path_element(E, q, p);
  }
  return E.coords(total, d);
}

bool relation_holds(CoxEngine& E, const Quiver& q,
                    const std::vector<std::pair<std::vector<int>, Q>>& terms) {
  if (!q.hilbert_ok) return false;
  auto v = evaluate_paths(E, q, terms);
  return std::all_of(v.begin(), v.end(), [](const Q& x) { return x == 0; });
}

int find_arrow(const Quiver& q, int from, int to, const std::string& label) {
  for (size_t k = 0; k < q.arrows.size(); ++k)
    if (q.arrows[k].from == from && q.arrows[k].to == to && q.arrows[k].label == label)
      return static_cast<int>(k);
  return -1;
}

}  // namespace glt::coxquiver
