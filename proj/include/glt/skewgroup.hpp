#pragma once

#include "glt/io.hpp"
#include "glt/tilting.hpp"

#include <optional>
#include <string>
#include <vector>

namespace glt::skewgroup {

using Element = std::vector<i64>;    // exponent vector
using Character = std::vector<i64>;  // dual exponent vector

struct FiniteAbelianGroup {
  std::vector<i64> orders;  // cyclic factor orders, each >= 2

  size_t size() const;
  std::vector<Element> elements() const;  // lexicographic order
  Element identity() const { return Element(orders.size(), 0); }
  Element add(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element reduce(Element a) const;
  i64 order_of(const Element& g) const;
  // chi(g) in Q/Z, as a rational in [0, 1).
  Q pairing(const Character& chi, const Element& g) const;
  // Subgroup generated by the given elements, sorted.
  std::vector<Element> span(const std::vector<Element>& gens) const;
  bool is_cyclic(const std::vector<Element>& subgroup) const;
};

struct CoxVariable {
  std::string name;
  DivClass degree;
};

// Action of one group element on the Cox ring: x_v -> exp(2 pi i phase[v]) x_{perm[v]}.
struct VariableAction {
  std::vector<int> perm;
  std::vector<Q> phase;
};

struct Ramification {
  std::string name;
  i64 index = 2;
  DivClass upstairs;    // reduced preimage
  DivClass downstairs;  // branch divisor
};

struct SingularPoint {
  std::string label;
  std::vector<Element> stabilizer;      // generators
  std::vector<Character> characters;    // of O(-D_i) at the point, one per branch through it
};

struct CoverModel {
  std::string name;
  picard::SurfaceModel upstairs;
  FiniteAbelianGroup group;
  std::vector<std::vector<std::vector<i64>>> pic_action;  // one matrix per generator (columns = images)
  std::vector<CoxVariable> variables;
  std::vector<VariableAction> cox_action;  // one per generator
  std::vector<Ramification> ramification;
  std::optional<std::vector<SingularPoint>> singular_points;
  wps::WeightedSurface downstairs;
  bool equivariant_asserted = false;
  std::vector<std::string> upstairs_bundle;  // class expressions on the upstairs surface
  std::optional<std::string> upstairs_script;
};

// Checks group orders, that the Pic action preserves the form and K, that the Cox action is a
// genuine commuting action compatible with degrees, and that ramification indices divide |G|.
void validate(const CoverModel& M);

CoverModel cover_from_json(const io::json& j, const std::string& base_file = "");
// Builtin descriptions in the cover-file schema.
io::json builtin_cover_json(const std::string& name);
CoverModel builtin_cover(const std::string& name);
// "conic_i", "conic_ii", "polygon_p<p>_i<i>".
std::vector<std::string> builtin_cover_names();

DivClass act(const CoverModel& M, const Element& g, const DivClass& L);
VariableAction cox_element_action(const CoverModel& M, const Element& g);

struct StarReport {
  bool holds = true;
  std::vector<std::string> witnesses;
};
StarReport star_condition(const CoverModel& M);

std::vector<Element> stabilizer(const CoverModel& M, const DivClass& L);
std::vector<DivClass> orbit(const CoverModel& M, const DivClass& L);  // sorted

struct InducedSummand {
  std::vector<DivClass> orbit;      // sorted G-orbit of the line bundle
  DivClass line;                    // representative used for the construction
  std::vector<Element> stabilizer;  // H
  Character chi;                    // canonical representative of the class in G*/H^perp
  i64 rank = 1;                     // [G : H]
  std::string descriptor;
};

// A (x) L splits into |H| indecomposables of rank [G:H], indexed by H*.
std::vector<InducedSummand> induce_decompose(const CoverModel& M, const DivClass& L);

// Monomials of the Cox ring in degree D (exponent vectors).
std::vector<std::vector<i64>> monomials(const CoverModel& M, const DivClass& D);

// dim Hom_A between two induced summands (Mackey decomposition and isotypic counting).
i64 induced_hom_dim(const CoverModel& M, const InducedSummand& a, const InducedSummand& b);
// dim Hom_A(O(D) (x) chi, O(D') (x) chi') for G-invariant D, D'.
i64 induced_hom_dims(const CoverModel& M, const DivClass& D, const Character& chi, const DivClass& Dp,
                     const Character& chip);
// Isotypic dimensions of H0(O(D)) for G-invariant D, one per character (in elements() order).
std::vector<i64> isotypic_split(const CoverModel& M, const DivClass& D);

struct InducedReport {
  tilting::CheckReport upstairs;
  std::vector<InducedSummand> summands;  // basic list
  std::vector<std::vector<i64>> euler;   // Hom dims; higher Ext vanish by the upstairs check
  Z det;
  i64 expected_rank = 0;
  bool all_pass() const;
};

InducedReport induced_tilting(const CoverModel& M, cohom::Memo* memo = nullptr);

io::json induced_report_json(const CoverModel& M, const InducedReport& R);

}  // namespace glt::skewgroup
