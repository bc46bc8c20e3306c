#include "glt/wps.hpp"

#include <numeric>
#include <sstream>

namespace glt::wps {

using picard::SurfaceModel;

std::string WeightedSurface::fingerprint() const {
  std::ostringstream os;
  os << base.fingerprint();
  for (auto& w : weighted) os << "|w" << vec_str(w.cls) << '/' << w.weight;
  return os.str();
}

WeightedSurface make_weighted(SurfaceModel base, std::vector<WeightedDivisor> weighted) {
  WeightedSurface W;
  W.base = std::move(base);
  W.period = 1;
  for (auto& w : weighted) {
    require(w.weight >= 2, ErrorKind::PreconditionViolated, "weights must be at least 2");
    require(w.cls.size() == W.base.rank(), ErrorKind::PreconditionViolated,
            "weighted divisor class has the wrong length");
    W.period = std::lcm(W.period, w.weight);
  }
  W.weighted = std::move(weighted);
  for (size_t i = 0; i < W.weighted.size(); ++i) {
    auto& w = W.weighted[i];
    if (w.name.empty()) w.name = "D" + std::to_string(i + 1);
    try {
      require(cohom::h0(W.base, w.cls) >= 1, ErrorKind::PreconditionViolated,
              "weighted divisor " + w.name + " has no effective representative");
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::OutsideValidityDomain) throw;
    }
  }
  return W;
}

WeightedSurface unweighted(SurfaceModel base) { return make_weighted(std::move(base), {}); }

LClass normalize(const WeightedSurface& W, DivClass pic, std::vector<i64> raw) {
  raw.resize(W.count(), 0);
  for (size_t i = 0; i < W.count(); ++i) {
    const i64 p = W.weighted[i].weight;
    i64 q = raw[i] / p, r = raw[i] % p;
    if (r < 0) {
      r += p;
      --q;
    }
    raw[i] = r;
    if (q)
      for (size_t k = 0; k < pic.size(); ++k) pic[k] += q * W.weighted[i].cls[k];
  }
  return {std::move(pic), std::move(raw)};
}

LClass from_pic(const WeightedSurface& W, const DivClass& pic) { return normalize(W, pic, {}); }
LClass zero(const WeightedSurface& W) { return from_pic(W, W.base.zero()); }

LClass unit(const WeightedSurface& W, size_t i) {
  std::vector<i64> l(W.count(), 0);
  l[i] = 1;
  return normalize(W, W.base.zero(), l);
}

LClass plus(const WeightedSurface& W, const LClass& a, const LClass& b) {
  std::vector<i64> l(W.count());
  for (size_t i = 0; i < l.size(); ++i) l[i] = a.frac[i] + b.frac[i];
  return normalize(W, add(a.pic, b.pic), l);
}

LClass minus(const WeightedSurface& W, const LClass& a, const LClass& b) {
  std::vector<i64> l(W.count());
  for (size_t i = 0; i < l.size(); ++i) l[i] = a.frac[i] - b.frac[i];
  return normalize(W, sub(a.pic, b.pic), l);
}

LClass times(const WeightedSurface& W, i64 k, const LClass& a) {
  std::vector<i64> l(W.count());
  for (size_t i = 0; i < l.size(); ++i) l[i] = k * a.frac[i];
  return normalize(W, scale(k, a.pic), l);
}

LClass k_A(const WeightedSurface& W) {
  std::vector<i64> l(W.count());
  for (size_t i = 0; i < l.size(); ++i) l[i] = W.weighted[i].weight - 1;
  return normalize(W, W.base.canonical, l);
}

QDivClass to_qclass(const WeightedSurface& W, const LClass& a) {
  QDivClass q = to_q(a.pic);
  for (size_t i = 0; i < W.count(); ++i)
    if (a.frac[i])
      q = qadd(q, qscale(Q(a.frac[i], W.weighted[i].weight), to_q(W.weighted[i].cls)));
  return q;
}

QDivClass k_plus_delta(const WeightedSurface& W) { return to_qclass(W, k_A(W)); }

i64 degree(const WeightedSurface& W, const LClass& a) {
  Q v = W.base.dot(to_qclass(W, a), W.base.ample_ref) * W.period;
  require(boost::multiprecision::denominator(v) == 1, ErrorKind::Internal, "non-integral degree");
  return static_cast<i64>(boost::multiprecision::numerator(v));
}

DivClass hom_sheaf(const WeightedSurface& W, const LClass& a, const LClass& b) {
  return minus(W, b, a).pic;
}

cohom::CohomologyVector ext_dims(const WeightedSurface& W, const LClass& a, const LClass& b,
                                 cohom::Memo* memo) {
  return cohom::cohomology(W.base, hom_sheaf(W, a, b), memo);
}

std::string to_string(const WeightedSurface& W, const LClass& a) {
  std::string s = W.base.class_str(a.pic);
  bool zero_pic = s == "0";
  std::ostringstream os;
  if (!zero_pic) os << s;
  bool any = !zero_pic;
  for (size_t i = 0; i < W.count(); ++i) {
    if (!a.frac[i]) continue;
    if (any) os << " + ";
    os << a.frac[i] << "/" << W.weighted[i].weight << " " << W.weighted[i].name;
    any = true;
  }
  if (!any) os << "0";
  return os.str();
}

const char* fano_type_name(FanoType t) {
  switch (t) {
    case FanoType::Fano: return "Fano";
    case FanoType::AlmostFano: return "AlmostFano";
    case FanoType::NefNotBig: return "NefNotBig";
    case FanoType::NotNef: return "NotNef";
  }
  return "NotNef";
}

Classification classify(const WeightedSurface& W) {
  const SurfaceModel& S = W.base;
  QDivClass N = qscale(Q(-1), k_plus_delta(W));
  Classification c;
  c.square = S.dot(N, N);
  if (auto bad = picard::nef_witness(S, N)) {
    c.type = FanoType::NotNef;
    c.witness = "-(K+Delta).(" + bad->label + ") = " + q_str(S.dot(N, bad->cls));
    return c;
  }
  if (S.dot(N, S.ample_ref) < 0) {
    c.type = FanoType::NotNef;
    c.witness = "negative on the ample reference class";
    return c;
  }
  if (c.square <= 0) {
    c.type = FanoType::NefNotBig;
    c.witness = "(K+Delta)^2 = " + q_str(c.square);
    return c;
  }
  if (picard::is_ample(S, N)) {
    c.type = FanoType::Fano;
    c.witness = "(K+Delta)^2 = " + q_str(c.square);
    return c;
  }
  c.type = FanoType::AlmostFano;
  for (auto& cur : S.curves)
    if (S.dot(N, cur.cls) == 0) {
      c.witness = "-(K+Delta).(" + cur.label + ") = 0";
      break;
    }
  return c;
}

bool kodaira_negative(const WeightedSurface& W, int cap_multiplier) {
  QDivClass N = qscale(Q(-1), k_plus_delta(W));
  if (picard::is_big_nef(W.base, N)) return true;
  const LClass K = k_A(W);
  for (int k = 1; k <= cap_multiplier; ++k) {
    LClass rk = times(W, static_cast<i64>(k) * W.period, K);
    try {
      if (cohom::h0(W.base, rk.pic) > 0) return false;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::OutsideValidityDomain)
        fail(ErrorKind::Inconclusive, "section count outside the cohomology engine's domain");
      throw;
    }
  }
  fail(ErrorKind::Inconclusive, "no positivity certificate and no section up to the cap");
}

std::vector<Warning> weight_sanity(const WeightedSurface& W) {
  const SurfaceModel& S = W.base;
  std::vector<Warning> out;
  for (auto& w : W.weighted) {
    i64 self = S.dot(w.cls, w.cls);
    if (w.rational && picard::genus(S, w.cls) == 0 && self <= -3) {
      const i64 s = -self;
      if (2 * w.weight >= s) {
        std::ostringstream os;
        os << w.name << ": rational curve with self-intersection " << self << " and weight "
           << w.weight << " has 2p = " << 2 * w.weight << " >= " << s
           << "; the bound 2p < s fails, so -K_X need not be nef";
        out.push_back({"weight-bound", os.str()});
      }
    }
  }
  DivClass anti = scale(-1, S.canonical);
  for (auto& c : S.curves) {
    i64 v = S.dot(anti, c.cls);
    if (v < 0) {
      out.push_back({"anticanonical-not-nef",
                     "-K_X.(" + c.label + ") = " + std::to_string(v)});
      break;
    }
  }
  i64 k2 = S.dot(S.canonical, S.canonical);
  if (k2 < 0) out.push_back({"negative-K-squared", "K_X^2 = " + std::to_string(k2)});
  QDivClass N = qscale(Q(-1), k_plus_delta(W));
  if (!W.weighted.empty())
    for (auto& c : S.curves) {
      Q v = S.dot(N, c.cls);
      if (v < 0) {
        out.push_back({"weighted-anticanonical-not-nef",
                       "-(K+Delta).(" + c.label + ") = " + q_str(v)});
        break;
      }
    }
  return out;
}

}  // namespace glt::wps
