#include "glt/picard.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace glt::picard {

const char* curve_kind_name(CurveKind k) {
  switch (k) {
    case CurveKind::MinusOne: return "MinusOne";
    case CurveKind::MinusTwo: return "MinusTwo";
    case CurveKind::Fiber: return "Fiber";
    case CurveKind::Section: return "Section";
    case CurveKind::Other: return "Other";
  }
  return "Other";
}

i64 SurfaceModel::dot(const DivClass& a, const DivClass& b) const {
  i64 r = 0;
  for (size_t i = 0; i < form.size(); ++i)
    for (size_t j = 0; j < form.size(); ++j)
      if (form[i][j]) r += a[i] * form[i][j] * b[j];
  return r;
}

Q SurfaceModel::dot(const QDivClass& a, const DivClass& b) const {
  Q r = 0;
  for (size_t i = 0; i < form.size(); ++i)
    for (size_t j = 0; j < form.size(); ++j)
      if (form[i][j] && b[j]) r += a[i] * (form[i][j] * b[j]);
  return r;
}

Q SurfaceModel::dot(const QDivClass& a, const QDivClass& b) const {
  Q r = 0;
  for (size_t i = 0; i < form.size(); ++i)
    for (size_t j = 0; j < form.size(); ++j)
      if (form[i][j]) r += a[i] * form[i][j] * b[j];
  return r;
}

i64 SurfaceModel::chi_top() const {
  switch (kind) {
    case Kind::ProjectivePlane: return 3;
    case Kind::P1xP1:
    case Kind::Hirzebruch: return 4;
    case Kind::BlowupP2: return 3 + config.count;
  }
  return 0;
}

std::string SurfaceModel::fingerprint() const {
  std::ostringstream os;
  os << static_cast<int>(kind) << ':' << hirzebruch_s << ':' << config.count << ':';
  for (auto& t : config.collinear_triples) os << 'l' << t[0] << t[1] << t[2];
  for (auto& c : config.conic_sextuples)
    for (int i : c) os << 'c' << i;
  for (int n : config.singular_cubic_nodes) os << 'n' << n;
  os << ':' << inventory_bound << ':'
     << (anticanonical_torsion_order ? *anticanonical_torsion_order : -1);
  return os.str();
}

std::string SurfaceModel::class_str(const DivClass& d) const {
  std::ostringstream os;
  if (kind == Kind::P1xP1) {
    os << '(' << d[0] << ',' << d[1] << ')';
    return os.str();
  }
  bool first = true;
  for (size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0) continue;
    i64 c = d[i];
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    i64 a = c < 0 ? -c : c;
    if (a != 1) os << a;
    os << basis_labels[i];
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

i64 genus(const SurfaceModel& S, const DivClass& C) {
  i64 v = S.dot(C, C) + S.dot(C, S.canonical);
  return 1 + v / 2;
}

Q intersect(const SurfaceModel& S, const QDivClass& a, const QDivClass& b) { return S.dot(a, b); }

namespace {

void validate_config(const PointConfiguration& c) {
  require(!c.infinitely_near, ErrorKind::UnsupportedConfiguration, "infinitely-near points");
  require(c.count >= 0 && c.count <= 9, ErrorKind::UnsupportedConfiguration,
          "point count must be in 0..9");
  auto check_set = [&](const auto& s, const char* what) {
    std::set<int> seen;
    for (int i : s) {
      require(i >= 0 && i < c.count, ErrorKind::UnsupportedConfiguration,
              std::string(what) + " refers to a point outside 1.." + std::to_string(c.count));
      require(seen.insert(i).second, ErrorKind::UnsupportedConfiguration,
              std::string(what) + " repeats a point");
    }
  };
  for (auto& t : c.collinear_triples) check_set(t, "collinear triple");
  for (auto& t : c.conic_sextuples) check_set(t, "conic sextuple");
  for (int n : c.singular_cubic_nodes) {
    require(c.count == 8, ErrorKind::UnsupportedConfiguration,
            "singular cubic nodes are only meaningful for 8 points");
    require(n >= 0 && n < 8, ErrorKind::UnsupportedConfiguration, "cubic node index out of range");
  }
}

std::vector<std::vector<int>> merge_sets(std::vector<std::vector<int>> sets, size_t share) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < sets.size() && !changed; ++i)
      for (size_t j = i + 1; j < sets.size() && !changed; ++j) {
        std::vector<int> inter;
        std::set_intersection(sets[i].begin(), sets[i].end(), sets[j].begin(), sets[j].end(),
                              std::back_inserter(inter));
        if (inter.size() >= share) {
          std::vector<int> u;
          std::set_union(sets[i].begin(), sets[i].end(), sets[j].begin(), sets[j].end(),
                         std::back_inserter(u));
          sets[i] = u;
          sets.erase(sets.begin() + static_cast<long>(j));
          changed = true;
        }
      }
  }
  std::sort(sets.begin(), sets.end());
  return sets;
}

}  // namespace

std::vector<SpecialCurve> merged_special_curves(const PointConfiguration& config) {
  validate_config(config);
  std::vector<std::vector<int>> lines, conics;
  for (auto& t : config.collinear_triples) {
    std::vector<int> v(t.begin(), t.end());
    std::sort(v.begin(), v.end());
    lines.push_back(v);
  }
  for (auto& t : config.conic_sextuples) {
    std::vector<int> v(t.begin(), t.end());
    std::sort(v.begin(), v.end());
    conics.push_back(v);
  }
  lines = merge_sets(lines, 2);
  conics = merge_sets(conics, 5);
  for (auto& c : conics)
    for (auto& l : lines) {
      std::vector<int> inter;
      std::set_intersection(c.begin(), c.end(), l.begin(), l.end(), std::back_inserter(inter));
      require(inter.size() < 3, ErrorKind::UnsupportedConfiguration,
              "a declared conic contains three collinear points");
    }
  std::vector<SpecialCurve> out;
  for (auto& l : lines) out.push_back({1, l});
  for (auto& c : conics) out.push_back({2, c});
  return out;
}

std::vector<DivClass> minus_one_classes(int n, int bound) {
  std::vector<DivClass> out;
  if (n == 0) return out;
  std::vector<i64> m(static_cast<size_t>(n));
  for (i64 d = -bound; d <= bound; ++d) {
    const i64 target_sum = 3 * d - 1;
    const i64 target_sq = d * d + 1;
    // m non-increasing; permutations generated afterwards.
    std::function<void(int, i64, i64, i64)> dfs = [&](int i, i64 sum_left, i64 sq_left, i64 upper) {
      const i64 k = n - i;
      if (k == 0) {
        if (sum_left != 0 || sq_left != 0) return;
        std::vector<i64> perm(m.begin(), m.end());
        std::sort(perm.begin(), perm.end());
        do {
          DivClass c(static_cast<size_t>(n) + 1);
          c[0] = d;
          for (int j = 0; j < n; ++j) c[static_cast<size_t>(j) + 1] = -perm[static_cast<size_t>(j)];
          out.push_back(c);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return;
      }
      if (sum_left * sum_left > k * sq_left) return;
      for (i64 v = std::min<i64>(upper, bound); v >= -bound; --v) {
        if (v * v > sq_left) continue;
        // Remaining entries are <= v, so their sum is at most k*v.
        if (sum_left > k * v) break;
        m[static_cast<size_t>(i)] = v;
        dfs(i + 1, sum_left - v, sq_left - v * v, v);
      }
    };
    dfs(0, target_sum, target_sq, bound);
  }
  std::sort(out.begin(), out.end(), [](const DivClass& a, const DivClass& b) {
    if (a[0] != b[0]) return a[0] < b[0];
    return a > b;
  });
  return out;
}

namespace {

void finish_curves(SurfaceModel& S) {
  for (auto& c : S.curves) {
    c.self_int = S.dot(c.cls, c.cls);
    c.genus = genus(S, c.cls);
  }
}

bool positive_on_inventory(const SurfaceModel& S, const DivClass& A) {
  if (S.dot(A, A) <= 0) return false;
  for (auto& c : S.curves)
    if (S.dot(A, c.cls) <= 0) return false;
  return true;
}

}  // namespace

SurfaceModel projective_plane() { return build_surface(Kind::ProjectivePlane); }
SurfaceModel p1xp1() { return build_surface(Kind::P1xP1); }
SurfaceModel hirzebruch(int s) { return build_surface(Kind::Hirzebruch, s); }
SurfaceModel blowup(const PointConfiguration& config, int bound) {
  return build_surface(Kind::BlowupP2, 0, config, bound);
}
SurfaceModel blowup_general(int n) {
  PointConfiguration c;
  c.count = n;
  return blowup(c);
}

SurfaceModel build_surface(Kind kind, int s, const PointConfiguration& config, int bound) {
  SurfaceModel S;
  S.kind = kind;
  S.inventory_bound = bound;
  switch (kind) {
    case Kind::ProjectivePlane:
      S.basis_labels = {"H"};
      S.form = {{1}};
      S.canonical = {-3};
      S.ample_ref = {1};
      break;
    case Kind::P1xP1:
      S.basis_labels = {"(1,0)", "(0,1)"};
      S.form = {{0, 1}, {1, 0}};
      S.canonical = {-2, -2};
      S.curves.push_back({{1, 0}, 0, CurveKind::Fiber, 0, true, "(1,0)"});
      S.curves.push_back({{0, 1}, 0, CurveKind::Fiber, 0, true, "(0,1)"});
      S.ample_ref = {1, 1};
      break;
    case Kind::Hirzebruch:
      require(s >= 1, ErrorKind::UnsupportedConfiguration, "Hirzebruch index must be >= 1");
      S.hirzebruch_s = s;
      S.basis_labels = {"C", "F"};
      S.form = {{-s, 1}, {1, 0}};
      S.canonical = {-2, -(s + 2)};
      S.curves.push_back({{1, 0}, 0, CurveKind::Section, 0, true, "C"});
      S.curves.push_back({{0, 1}, 0, CurveKind::Fiber, 0, true, "F"});
      S.ample_ref = {1, s + 1};
      break;
    case Kind::BlowupP2: {
      const int n = config.count;
      S.special_curves = merged_special_curves(config);
      S.config = config;
      S.basis_labels = {"H"};
      for (int i = 1; i <= n; ++i) S.basis_labels.push_back("E" + std::to_string(i));
      const size_t r = static_cast<size_t>(n) + 1;
      S.form.assign(r, std::vector<i64>(r, 0));
      S.form[0][0] = 1;
      for (size_t i = 1; i < r; ++i) S.form[i][i] = -1;
      S.canonical.assign(r, 1);
      S.canonical[0] = -3;
      std::vector<DivClass> negatives;
      for (auto& sc : S.special_curves) {
        DivClass c(r, 0);
        c[0] = sc.degree;
        for (int p : sc.points) c[static_cast<size_t>(p) + 1] = -1;
        i64 self = sc.degree * sc.degree - static_cast<i64>(sc.points.size());
        std::ostringstream label;
        label << (sc.degree == 1 ? "line" : "conic") << " through";
        for (int p : sc.points) label << ' ' << p + 1;
        S.curves.push_back({c, self, self == -2 ? CurveKind::MinusTwo : CurveKind::Other, 0, true,
                            label.str()});
        negatives.push_back(c);
      }
      for (int node : config.singular_cubic_nodes) {
        DivClass c(r, -1);
        c[0] = 3;
        c[static_cast<size_t>(node) + 1] = -2;
        S.curves.push_back({c, -2, CurveKind::MinusTwo, 0, true,
                            "cubic singular at " + std::to_string(node + 1)});
        negatives.push_back(c);
      }
      for (auto& c : minus_one_classes(n, bound)) {
        bool irr = true;
        for (auto& N : negatives)
          if (S.dot(c, N) < 0) irr = false;
        S.curves.push_back({c, -1, CurveKind::MinusOne, 0, irr, ""});
      }
      if (n == 1) S.curves.push_back({{1, -1}, 0, CurveKind::Fiber, 0, true, "H - E1"});
      finish_curves(S);
      for (auto& c : S.curves)
        if (c.label.empty()) c.label = S.class_str(c.cls);
      DivClass anti = scale(-1, S.canonical);
      if (positive_on_inventory(S, anti)) {
        S.ample_ref = anti;
      } else {
        bool found = false;
        for (i64 c = 4; c <= 200 && !found; ++c) {
          DivClass A(r, -1);
          A[0] = c;
          if (positive_on_inventory(S, A)) {
            S.ample_ref = A;
            found = true;
          }
        }
        require(found, ErrorKind::Internal, "no ample reference class found");
      }
      break;
    }
  }
  finish_curves(S);
  return S;
}

bool is_nef(const SurfaceModel& S, const QDivClass& D) {
  if (S.dot(D, S.ample_ref) < 0) return false;
  for (auto& c : S.curves)
    if (S.dot(D, c.cls) < 0) return false;
  return true;
}

bool is_big_nef(const SurfaceModel& S, const QDivClass& D) {
  return is_nef(S, D) && S.dot(D, D) > 0;
}

bool is_ample(const SurfaceModel& S, const QDivClass& D) {
  if (!is_big_nef(S, D)) return false;
  if (S.dot(D, S.ample_ref) <= 0) return false;
  for (auto& c : S.curves)
    if (S.dot(D, c.cls) <= 0) return false;
  return true;
}

bool is_nef(const SurfaceModel& S, const DivClass& D) { return is_nef(S, to_q(D)); }
bool is_big_nef(const SurfaceModel& S, const DivClass& D) { return is_big_nef(S, to_q(D)); }
bool is_ample(const SurfaceModel& S, const DivClass& D) { return is_ample(S, to_q(D)); }

std::optional<CurveClass> nef_witness(const SurfaceModel& S, const QDivClass& D) {
  for (auto& c : S.curves)
    if (S.dot(D, c.cls) < 0) return c;
  return std::nullopt;
}

bool is_general_position(const PointConfiguration& config, int s) {
  require(s < 9, ErrorKind::OutOfRange, "general position is defined for fewer than 9 points");
  require(s == config.count, ErrorKind::PreconditionViolated, "point count mismatch");
  merged_special_curves(config);
  return config.collinear_triples.empty() && config.conic_sextuples.empty() &&
         config.singular_cubic_nodes.empty() && !config.infinitely_near;
}

bool is_almost_general_position(const PointConfiguration& config, int s) {
  require(s < 9, ErrorKind::OutOfRange, "almost general position is defined for fewer than 9 points");
  require(s == config.count, ErrorKind::PreconditionViolated, "point count mismatch");
  if (config.infinitely_near) return false;
  for (auto& sc : merged_special_curves(config)) {
    if (sc.degree == 1 && sc.points.size() > 3) return false;
    if (sc.degree == 2 && sc.points.size() > 6) return false;
  }
  return true;
}

}  // namespace glt::picard
