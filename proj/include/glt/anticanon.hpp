#pragma once

#include "glt/picard.hpp"

#include <array>
#include <vector>

namespace glt::anticanon {

// Nodal cubic y^2 z = x^2 (x + z) (group Gm) or cuspidal cubic y^2 z = x^3 (group Ga),
// parametrized so that three smooth points are collinear iff their parameters combine to
// the identity.
enum class GroupKind { Gm, Ga };

struct CubicGroupModel {
  GroupKind kind = GroupKind::Gm;
};

const char* group_kind_name(GroupKind k);

std::array<Q, 3> cubic_point(const CubicGroupModel& model, const Q& param);
Q combine(const CubicGroupModel& model, const std::vector<Q>& params);
Q identity(const CubicGroupModel& model);

Q nine_point_class(const CubicGroupModel& model, const std::vector<Q>& params);
bool is_torsion(const CubicGroupModel& model, const Q& g);
// 0 when g has infinite order.
int torsion_order(const CubicGroupModel& model, const Q& g);

enum class Verdict { AlmostGeneral, NotAlmostGeneral, OutsideModel };
const char* verdict_name(Verdict v);

// Collinear triples and conic sextuples forced by the group law, merged with declared ones.
picard::PointConfiguration derived_incidences(const CubicGroupModel& model, const std::vector<Q>& params,
                                              const picard::PointConfiguration& declared);

Verdict almost_general_9(const CubicGroupModel& model, const std::vector<Q>& params,
                         const picard::PointConfiguration& config);

// Blowup at the nine points with the anticanonical torsion order recorded.
picard::SurfaceModel nine_point_surface(const CubicGroupModel& model, const std::vector<Q>& params,
                                        const picard::PointConfiguration& config);

}  // namespace glt::anticanon
