#pragma once

#include "glt/cohom.hpp"
#include "glt/picard.hpp"

#include <compare>
#include <string>
#include <vector>

namespace glt::wps {

struct WeightedDivisor {
  DivClass cls;
  int weight = 2;
  bool rational = true;
  bool snc_assumed = true;
  std::string name;
};

struct WeightedSurface {
  picard::SurfaceModel base;
  std::vector<WeightedDivisor> weighted;
  int period = 1;

  size_t count() const { return weighted.size(); }
  std::string fingerprint() const;
};

WeightedSurface make_weighted(picard::SurfaceModel base, std::vector<WeightedDivisor> weighted);
WeightedSurface unweighted(picard::SurfaceModel base);

struct LClass {
  DivClass pic;
  std::vector<i64> frac;
  auto operator<=>(const LClass&) const = default;
};

LClass normalize(const WeightedSurface& W, DivClass pic, std::vector<i64> raw);
LClass from_pic(const WeightedSurface& W, const DivClass& pic);
LClass zero(const WeightedSurface& W);
// The class (1/p_i) D_i.
LClass unit(const WeightedSurface& W, size_t i);
LClass plus(const WeightedSurface& W, const LClass& a, const LClass& b);
LClass minus(const WeightedSurface& W, const LClass& a, const LClass& b);
LClass times(const WeightedSurface& W, i64 k, const LClass& a);

LClass k_A(const WeightedSurface& W);
QDivClass to_qclass(const WeightedSurface& W, const LClass& a);
QDivClass k_plus_delta(const WeightedSurface& W);
// Integer-valued ample functional scaled by the period: P * (a . ample_ref).
i64 degree(const WeightedSurface& W, const LClass& a);

DivClass hom_sheaf(const WeightedSurface& W, const LClass& a, const LClass& b);
cohom::CohomologyVector ext_dims(const WeightedSurface& W, const LClass& a, const LClass& b,
                                 cohom::Memo* memo = nullptr);

std::string to_string(const WeightedSurface& W, const LClass& a);

enum class FanoType { Fano, AlmostFano, NefNotBig, NotNef };
const char* fano_type_name(FanoType t);

struct Classification {
  FanoType type = FanoType::NotNef;
  Q square;
  std::string witness;
};

Classification classify(const WeightedSurface& W);
// Throws Error(Inconclusive) when no certificate is found up to cap_multiplier * period.
bool kodaira_negative(const WeightedSurface& W, int cap_multiplier = 12);

struct Warning {
  std::string code;
  std::string message;
};
std::vector<Warning> weight_sanity(const WeightedSurface& W);

}  // namespace glt::wps
