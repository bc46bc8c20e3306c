#include "glt/anticanon.hpp"

#include <algorithm>
#include <set>

namespace glt::anticanon {

const char* group_kind_name(GroupKind k) { return k == GroupKind::Gm ? "Gm" : "Ga"; }

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::AlmostGeneral: return "AlmostGeneral";
    case Verdict::NotAlmostGeneral: return "NotAlmostGeneral";
    case Verdict::OutsideModel: return "OutsideModel";
  }
  return "OutsideModel";
}

std::array<Q, 3> cubic_point(const CubicGroupModel& model, const Q& u) {
  if (model.kind == GroupKind::Gm) {
    require(u != 0, ErrorKind::PointAtSingularity, "parameter 0 is the node");
    // Line through the node with slope (1+u)/(1-u); u = 1 is the flex at infinity.
    const Q one(1);
    return {4 * u * (one - u), 4 * u * (one + u), (one - u) * (one - u) * (one - u)};
  }
  return {u, Q(1), u * u * u};
}

Q identity(const CubicGroupModel& model) { return model.kind == GroupKind::Gm ? Q(1) : Q(0); }

Q combine(const CubicGroupModel& model, const std::vector<Q>& params) {
  Q g = identity(model);
  for (auto& p : params) {
    if (model.kind == GroupKind::Gm) g *= p;
    else g += p;
  }
  return g;
}

Q nine_point_class(const CubicGroupModel& model, const std::vector<Q>& params) {
  require(params.size() == 9, ErrorKind::PreconditionViolated, "nine parameters required");
  std::set<Q> seen;
  for (auto& p : params) {
    if (model.kind == GroupKind::Gm)
      require(p != 0, ErrorKind::PointAtSingularity, "parameter 0 is the node");
    require(seen.insert(p).second, ErrorKind::DuplicatePoint, "repeated parameter " + q_str(p));
  }
  return combine(model, params);
}

bool is_torsion(const CubicGroupModel& model, const Q& g) {
  if (model.kind == GroupKind::Gm) return g == 1 || g == -1;
  return g == 0;
}

int torsion_order(const CubicGroupModel& model, const Q& g) {
  if (model.kind == GroupKind::Gm) {
    if (g == 1) return 1;
    if (g == -1) return 2;
    return 0;
  }
  return g == 0 ? 1 : 0;
}

picard::PointConfiguration derived_incidences(const CubicGroupModel& model, const std::vector<Q>& params,
                                              const picard::PointConfiguration& declared) {
  picard::PointConfiguration c = declared;
  c.count = static_cast<int>(params.size());
  std::set<std::array<int, 3>> triples(c.collinear_triples.begin(), c.collinear_triples.end());
  const int n = c.count;
  const Q id = identity(model);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (combine(model, {params[i], params[j], params[k]}) == id) triples.insert({i, j, k});
  c.collinear_triples.assign(triples.begin(), triples.end());
  auto collinear = [&](int a, int b, int d) {
    std::array<int, 3> t{a, b, d};
    std::sort(t.begin(), t.end());
    return triples.count(t) > 0;
  };
  std::set<std::array<int, 6>> sext(c.conic_sextuples.begin(), c.conic_sextuples.end());
  std::array<int, 6> idx{};
  for (idx[0] = 0; idx[0] < n; ++idx[0])
    for (idx[1] = idx[0] + 1; idx[1] < n; ++idx[1])
      for (idx[2] = idx[1] + 1; idx[2] < n; ++idx[2])
        for (idx[3] = idx[2] + 1; idx[3] < n; ++idx[3])
          for (idx[4] = idx[3] + 1; idx[4] < n; ++idx[4])
            for (idx[5] = idx[4] + 1; idx[5] < n; ++idx[5]) {
              std::vector<Q> ps;
              for (int i : idx) ps.push_back(params[static_cast<size_t>(i)]);
              if (combine(model, ps) != id) continue;
              // Sections of O(2) through two collinear triples are reducible conics.
              bool reducible = false;
              for (int mask = 0; mask < 64 && !reducible; ++mask) {
                if (__builtin_popcount(static_cast<unsigned>(mask)) != 3 || !(mask & 1)) continue;
                std::vector<int> a, b;
                for (int k = 0; k < 6; ++k) (mask >> k & 1 ? a : b).push_back(idx[static_cast<size_t>(k)]);
                if (collinear(a[0], a[1], a[2]) && collinear(b[0], b[1], b[2])) reducible = true;
              }
              if (!reducible) sext.insert(idx);
            }
  c.conic_sextuples.assign(sext.begin(), sext.end());
  return c;
}

Verdict almost_general_9(const CubicGroupModel& model, const std::vector<Q>& params,
                         const picard::PointConfiguration& config) {
  Q g;
  try {
    g = nine_point_class(model, params);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::PointAtSingularity) return Verdict::OutsideModel;
    throw;
  }
  picard::PointConfiguration all;
  try {
    all = derived_incidences(model, params, config);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UnsupportedConfiguration) return Verdict::OutsideModel;
    throw;
  }
  for (int drop = 0; drop < 9; ++drop) {
    picard::PointConfiguration sub;
    sub.count = 8;
    auto remap = [&](int i) { return i < drop ? i : i - 1; };
    for (auto& t : all.collinear_triples) {
      if (std::find(t.begin(), t.end(), drop) != t.end()) continue;
      sub.collinear_triples.push_back({remap(t[0]), remap(t[1]), remap(t[2])});
    }
    for (auto& s : all.conic_sextuples) {
      if (std::find(s.begin(), s.end(), drop) != s.end()) continue;
      std::array<int, 6> r{};
      for (size_t k = 0; k < 6; ++k) r[k] = remap(s[k]);
      sub.conic_sextuples.push_back(r);
    }
    try {
      if (!picard::is_almost_general_position(sub, 8)) return Verdict::OutsideModel;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::UnsupportedConfiguration) return Verdict::OutsideModel;
      throw;
    }
  }
  return is_torsion(model, g) ? Verdict::NotAlmostGeneral : Verdict::AlmostGeneral;
}

picard::SurfaceModel nine_point_surface(const CubicGroupModel& model, const std::vector<Q>& params,
                                        const picard::PointConfiguration& config) {
  Verdict v = almost_general_9(model, params, config);
  require(v != Verdict::OutsideModel, ErrorKind::OutsideModel,
          "the nine points do not have every 8-subset in almost general position");
  picard::SurfaceModel S = picard::blowup(derived_incidences(model, params, config));
  S.anticanonical_torsion_order = torsion_order(model, nine_point_class(model, params));
  return S;
}

}  // namespace glt::anticanon
