#pragma once

#include "glt/io.hpp"

#include <doctest.h>

#include <random>
#include <string>

namespace testing {

using namespace glt;

inline std::string data(const std::string& rel) { return std::string(GLT_DATA_DIR) + "/" + rel; }

inline wps::WeightedSurface weighted(const std::string& json_text) {
  return io::weighted_from_json(io::json::parse(json_text));
}

inline wps::WeightedSurface surface_file(const std::string& name) {
  return io::weighted_from_json(io::read_json_file(data("surfaces/" + name + ".json")));
}

inline DivClass cls(const picard::SurfaceModel& S, const std::string& text) { return io::parse_divclass(S, text); }

inline i64 uniform(std::mt19937_64& rng, i64 lo, i64 hi) {
  return std::uniform_int_distribution<i64>(lo, hi)(rng);
}

inline DivClass random_class(std::mt19937_64& rng, size_t rank, i64 bound) {
  DivClass d(rank);
  for (auto& x : d) x = uniform(rng, -bound, bound);
  return d;
}

// Blowup class dH - sum m_i E_i with |d| <= dmax and |m_i| <= mmax.
inline DivClass random_blowup_class(std::mt19937_64& rng, size_t rank, i64 dmax, i64 mmax) {
  DivClass d(rank);
  d[0] = uniform(rng, -dmax, dmax);
  for (size_t i = 1; i < rank; ++i) d[i] = uniform(rng, -mmax, mmax);
  return d;
}

inline wps::LClass random_lclass(std::mt19937_64& rng, const wps::WeightedSurface& W, i64 bound) {
  std::vector<i64> raw;
  for (auto& w : W.weighted) raw.push_back(uniform(rng, -2 * w.weight, 2 * w.weight));
  return wps::normalize(W, random_class(rng, W.base.rank(), bound), raw);
}

}  // namespace testing
