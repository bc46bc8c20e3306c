#pragma once

#include "glt/picard.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <string>

namespace glt::cohom {

struct CohomologyVector {
  i64 h0 = 0, h1 = 0, h2 = 0, chi = 0;
  bool operator==(const CohomologyVector&) const = default;
};

std::string to_string(const CohomologyVector& v);

i64 euler_char(const picard::SurfaceModel& S, const DivClass& D);

// Transparent cache keyed by (surface fingerprint, class); get-or-compute is atomic.
class Memo {
 public:
  template <class F>
  CohomologyVector get_or_compute(const std::string& key, F&& compute) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;
    CohomologyVector v = compute();
    table_.emplace(key, v);
    return v;
  }
  size_t size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return table_.size();
  }

 private:
  mutable std::mutex mu_;
  std::map<std::string, CohomologyVector> table_;
};

CohomologyVector cohomology(const picard::SurfaceModel& S, const DivClass& D, Memo* memo = nullptr);
i64 h0(const picard::SurfaceModel& S, const DivClass& D);

// Independent check on P^2 blowups: interpolation conditions at random rational points.
CohomologyVector cohomology_oracle(const picard::SurfaceModel& S, const DivClass& D,
                                   std::uint64_t seed);

// Affine coordinates (z = 1) of points realizing the declared incidences and nothing more.
std::vector<std::array<Q, 2>> realize_points(const picard::PointConfiguration& config,
                                             std::uint64_t seed);

// h^0 of the plane curves of degree d with multiplicity >= m_i at the given points.
i64 interpolation_h0(i64 d, const std::vector<i64>& mult, const std::vector<std::array<Q, 2>>& pts);

// h^i(O(rK)) on a blowup at 9 points whose anticanonical class restricts with the given
// torsion order (0 = non-torsion) on the cubic.
CohomologyVector nine_point_multiple_of_k(int torsion_order, i64 r);

}  // namespace glt::cohom
