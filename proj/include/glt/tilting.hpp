#pragma once

#include "glt/coxquiver.hpp"
#include "glt/wps.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace glt::tilting {

using wps::LClass;
using wps::WeightedSurface;

struct Summand {
  enum class Kind { Line, Presented };
  Kind kind = Kind::Line;
  LClass line;
  std::string presented;  // key into the context's presented-bundle table

  static Summand of_line(LClass c);
  static Summand of_presented(std::string name);
  bool operator==(const Summand&) const = default;
};

struct TiltingCandidate {
  std::vector<Summand> summands;
};

// Shared state for checks on one weighted surface: cohomology memo, Cox engine (built on
// first use) and the table of presented bundles.
class Context {
 public:
  explicit Context(WeightedSurface W);

  const WeightedSurface& surface() const { return W_; }
  cohom::Memo& memo() { return memo_; }
  coxquiver::CoxEngine& engine();

  void add_presented(coxquiver::PresentedBundle P);
  bool has_presented(const std::string& name);
  const coxquiver::PresentedBundle& presented(const std::string& name);

  // dim Ext^i(a, b (x) omega^{-r}) for i = 0, 1, 2.
  cohom::CohomologyVector ext(const Summand& a, const Summand& b, i64 r = 0);
  std::string name(const Summand& s) const;
  i64 rank(const Summand& s);

 private:
  void load_builtin_presented();

  WeightedSurface W_;
  cohom::Memo memo_;
  std::once_flag engine_once_;
  std::unique_ptr<coxquiver::CoxEngine> engine_;
  std::mutex table_mu_;
  bool builtin_loaded_ = false;
  std::map<std::string, coxquiver::PresentedBundle> table_;
};

void validate(Context& C, const TiltingCandidate& T);

enum class Verdict { Pass, Fail, Uncertified, Inconclusive };
const char* verdict_name(Verdict v);

struct ExtWitness {
  size_t from = 0, to = 0;  // summand indices
  i64 r = 0;
  int degree = 0;
  i64 dim = 0;
};

struct PartialReport {
  Verdict verdict = Verdict::Pass;
  std::optional<ExtWitness> witness;
};

struct HereditaryReport {
  Verdict verdict = Verdict::Pass;
  i64 window_end = 0;            // every r in [0, window_end] checked directly
  std::optional<i64> threshold;  // r0
  std::string certificate;
  std::optional<ExtWitness> witness;
  std::optional<ErrorKind> error;
  std::string reason;
};

struct EulerReport {
  std::vector<std::vector<i64>> matrix;
  Z det;
  size_t size = 0;
  i64 expected_rank = 0;
  bool unimodular() const { return abs(det) == 1; }
  bool size_matches() const { return static_cast<i64>(size) == expected_rank; }
};

struct DpPair {
  size_t from = 0, to = 0;
  DivClass c1;
  i64 c1_dot_k = 0;
  std::string status;  // "discharged" or "inconclusive"
  std::string note;
};

struct DpReport {
  Verdict verdict = Verdict::Pass;
  i64 k_squared = 0;
  size_t strict_pairs = 0;
  std::vector<DpPair> equality_cases;
  std::vector<DpPair> violations;
};

struct GenerationReport {
  bool verified = false;
  std::string script;  // path or label; empty when none was supplied
  std::vector<std::string> trace;
  std::string first_invalid;
  std::vector<std::string> missing;
  std::string note;
};

struct CheckReport {
  PartialReport partial;
  HereditaryReport hereditary;
  EulerReport euler;
  GenerationReport generation;
  std::optional<DpReport> dp;
  bool all_pass() const;
};

PartialReport partial_tilting(Context& C, const TiltingCandidate& T);
HereditaryReport two_hereditary(Context& C, const TiltingCandidate& T, i64 r_cap = 1000);
i64 expected_rank(const WeightedSurface& W);
EulerReport euler_matrix(Context& C, const TiltingCandidate& T);
DpReport dp_criterion(Context& C, const TiltingCandidate& T);
// Whether dp_criterion's preconditions hold.
bool dp_applicable(Context& C, const TiltingCandidate& T);

// Generation scripts: formal objects are line bundles O_A(b) and torsion objects supported on
// a curve (with layer and degree data) or on the points of D_i n D_j, plus named presented bundles.
struct FormalObject {
  enum class Kind { Line, Curve, Points, Presented };
  Kind kind = Kind::Line;
  LClass line;
  DivClass support;              // curve class (Curve)
  std::vector<int> divisors;     // weighted divisor indices (Curve on a D_i, Points)
  std::vector<i64> layers;       // a_i in O_{D_I}(-sum a_i/p_i D_i)
  i64 degree = 0;                // degree on the curve
  std::string presented;         // Presented
  std::string key() const;
};

std::string describe(const WeightedSurface& W, const FormalObject& o);

struct Move {
  enum class Kind { Summand, Shift, Cone, Koszul, UnitTwistCokernel, RestrictionKernel, Presentation };
  Kind kind = Kind::Summand;
  std::vector<int> subset;           // Koszul
  LClass twist;                      // Koszul, UnitTwistCokernel, RestrictionKernel
  int index = 0;                     // UnitTwistCokernel
  DivClass curve;                    // RestrictionKernel
  std::string bundle;                // Presentation: its defining short exact sequence
  std::vector<FormalObject> objects; // Summand, Shift, Cone (the last one is the result)
  std::string text;
};

struct GenerationScript {
  std::string label;
  std::vector<Move> moves;
};

GenerationReport check_generation_script(Context& C, const TiltingCandidate& T,
                                         const GenerationScript& script);

CheckReport check(Context& C, const TiltingCandidate& T, const GenerationScript* script = nullptr,
                  i64 r_cap = 1000);

struct SearchBox {
  std::vector<std::pair<i64, i64>> pic;   // inclusive ranges per Picard coordinate
  std::vector<std::pair<i64, i64>> frac;  // per weighted divisor; empty = full [0, p-1]
};

struct SearchOptions {
  size_t max_summands = 0;
  std::vector<LClass> require;
  int workers = 1;
  i64 r_cap = 1000;
  size_t enumeration_cap = 4096;
};

struct SearchResult {
  TiltingCandidate candidate;
  CheckReport report;
};

struct SearchOutcome {
  size_t box_size = 0;
  size_t target_size = 0;
  size_t cliques = 0;
  std::vector<SearchResult> results;
};

SearchOutcome search(Context& C, const SearchBox& box, const SearchOptions& opt);

// Canonical order on line classes: by degree, then lexicographically.
bool canonical_less(const WeightedSurface& W, const LClass& a, const LClass& b);

}  // namespace glt::tilting
