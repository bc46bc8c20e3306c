#pragma once

#include "glt/core.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace glt::picard {

enum class Kind { ProjectivePlane, P1xP1, Hirzebruch, BlowupP2 };

// Point indices are 0-based internally.
struct PointConfiguration {
  int count = 0;
  std::vector<std::array<int, 3>> collinear_triples;
  std::vector<std::array<int, 6>> conic_sextuples;
  bool points_general_on_cubic = true;
  // Points q_i at which a cubic through all eight points is singular.
  std::vector<int> singular_cubic_nodes;
  bool infinitely_near = false;
};

enum class CurveKind { MinusOne, MinusTwo, Fiber, Section, Other };
const char* curve_kind_name(CurveKind k);

struct CurveClass {
  DivClass cls;
  i64 self_int = 0;
  CurveKind kind = CurveKind::Other;
  i64 genus = 0;
  // Declared or certified irreducible; only these drive the h0 reduction.
  bool irreducible = true;
  std::string label;
};

// A line or conic through a set of points (merged from declared incidences).
struct SpecialCurve {
  int degree = 1;
  std::vector<int> points;
};

struct SurfaceModel {
  Kind kind = Kind::ProjectivePlane;
  int hirzebruch_s = 0;
  PointConfiguration config;
  std::vector<std::string> basis_labels;
  std::vector<std::vector<i64>> form;
  DivClass canonical;
  std::vector<CurveClass> curves;
  std::vector<SpecialCurve> special_curves;
  DivClass ample_ref;
  int inventory_bound = 6;
  // For 9-point models: order of O_{C}(K) in Pic^0 (0 = non-torsion), when known.
  std::optional<int> anticanonical_torsion_order;

  size_t rank() const { return basis_labels.size(); }
  i64 dot(const DivClass& a, const DivClass& b) const;
  Q dot(const QDivClass& a, const DivClass& b) const;
  Q dot(const QDivClass& a, const QDivClass& b) const;
  i64 chi_top() const;
  DivClass zero() const { return DivClass(rank(), 0); }
  std::string fingerprint() const;
  std::string class_str(const DivClass& d) const;
};

SurfaceModel build_surface(Kind kind, int hirzebruch_s = 0, const PointConfiguration& config = {},
                           int inventory_bound = 6);
SurfaceModel projective_plane();
SurfaceModel p1xp1();
SurfaceModel hirzebruch(int s);
SurfaceModel blowup(const PointConfiguration& config, int inventory_bound = 6);
// Blowup at n points with no declared incidences.
SurfaceModel blowup_general(int n);

Q intersect(const SurfaceModel& S, const QDivClass& a, const QDivClass& b);

bool is_nef(const SurfaceModel& S, const QDivClass& D);
bool is_big_nef(const SurfaceModel& S, const QDivClass& D);
bool is_ample(const SurfaceModel& S, const QDivClass& D);
bool is_nef(const SurfaceModel& S, const DivClass& D);
bool is_big_nef(const SurfaceModel& S, const DivClass& D);
bool is_ample(const SurfaceModel& S, const DivClass& D);
// First inventory curve with D.C < 0, if any.
std::optional<CurveClass> nef_witness(const SurfaceModel& S, const QDivClass& D);

bool is_general_position(const PointConfiguration& config, int s);
bool is_almost_general_position(const PointConfiguration& config, int s);

// Lines and conics obtained by merging declared triples and sextuples.
std::vector<SpecialCurve> merged_special_curves(const PointConfiguration& config);

// All (-1)-classes dH - sum m_i E_i on a blowup at n points with |coefficients| <= bound.
std::vector<DivClass> minus_one_classes(int n, int bound);

i64 genus(const SurfaceModel& S, const DivClass& C);

}  // namespace glt::picard
