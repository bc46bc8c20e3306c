#pragma once

#include "glt/linalg.hpp"
#include "glt/wps.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace glt::coxquiver {

using wps::LClass;
using Monomial = std::vector<int>;

struct Poly {
  std::map<Monomial, Q> terms;
  bool is_zero() const { return terms.empty(); }
  static Poly constant(size_t nvars, const Q& c);
  static Poly monomial(const Monomial& m, const Q& c = 1);
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(const Q& c, const Poly& a);

struct Generator {
  std::string name;
  LClass degree;
};

// poly == 0; when `lead` is set, lead is rewritten as lead - poly/lead_coeff.
struct Relation {
  Poly poly;
  std::optional<Monomial> lead;
  std::string display;
};

enum class Strategy { Free, HypersurfaceEliminable, LinearAlgebraQuotient };
const char* strategy_name(Strategy s);

struct CoxRing {
  std::string family;
  std::vector<Generator> gens;
  std::vector<Relation> relations;
  std::vector<std::pair<std::string, Poly>> aliases;
  Strategy strategy = Strategy::Free;

  size_t nvars() const { return gens.size(); }
};

CoxRing builtin_cox(const wps::WeightedSurface& W);

struct GradedPiece {
  LClass degree;
  std::vector<Monomial> basis;
  size_t dim = 0;
};

// Graded-piece linear algebra over a fixed ring; piece computations are memoized.
class CoxEngine {
 public:
  CoxEngine(wps::WeightedSurface W, CoxRing R);

  const wps::WeightedSurface& surface() const { return W_; }
  const CoxRing& ring() const { return R_; }

  LClass degree_of(const Monomial& m) const;
  std::optional<LClass> degree_of(const Poly& f) const;  // nullopt for zero or inhomogeneous
  std::shared_ptr<const GradedPiece> piece(const LClass& d);
  // Coordinates of a homogeneous element of degree d in the basis of piece(d).
  linalg::Vec coords(const Poly& f, const LClass& d);
  // M[i][j] = coefficient of basis(to)[i] in f * basis(from)[j].
  linalg::Matrix mult_matrix(const Poly& f, const LClass& from, const LClass& to);

  Poly parse(const std::string& text) const;
  std::string format(const Poly& f) const;
  std::string format(const Monomial& m) const;
  Poly generator(size_t i) const;
  std::optional<Poly> named(const std::string& name) const;

 private:
  struct PieceData {
    std::shared_ptr<GradedPiece> piece;
    std::vector<Monomial> free_monomials;   // LinearAlgebraQuotient only
    std::unique_ptr<linalg::RowSpan> relations;
    std::map<Monomial, size_t> index;       // basis (or free monomial) positions
  };
  PieceData& data(const LClass& d);
  std::vector<Monomial> monomials_of_degree(const LClass& d) const;
  Poly rewrite(Poly f) const;

  wps::WeightedSurface W_;
  CoxRing R_;
  std::vector<i64> gen_weight_;
  std::mutex mu_;
  std::map<LClass, std::unique_ptr<PieceData>> memo_;
};

// Two-term complexes of sums of line bundles; differential entries are ring elements.
struct Complex {
  std::map<int, std::vector<LClass>> terms;
  // diff[k][i][j]: from terms[k][i] to terms[k+1][j].
  std::map<int, std::vector<std::vector<Poly>>> diff;
};

struct PresentedBundle {
  enum class Side { Kernel, Cokernel };
  std::string name;
  Side side = Side::Kernel;
  std::vector<LClass> source, target;
  std::vector<std::vector<Poly>> map;  // map[i][j]: source i -> target j
  i64 rank() const {
    const i64 d = static_cast<i64>(source.size()) - static_cast<i64>(target.size());
    return side == Side::Kernel ? d : -d;
  }
};

Complex as_complex(const PresentedBundle& P);
Complex line_complex(const LClass& a);
Complex twist(const wps::WeightedSurface& W, const Complex& C, const LClass& by);
void check_presented(CoxEngine& E, const PresentedBundle& P);

// The kernel bundle Omega and cokernel bundle Xi on P^2 weighted on four lines.
std::vector<PresentedBundle> four_line_presented(CoxEngine& E);

// Hom(O_A(a), P) for a kernel bundle P, as syzygies: basis vectors in the concatenated
// coordinates of the pieces source_i - a.
linalg::Matrix hom_into_kernel(CoxEngine& E, const PresentedBundle& P, const LClass& a);

// Surjectivity of Hom(iota, Omega(-rK_A)): every syzygy f with f . x^T = 0 in the relevant
// degree is a combination sum_j x_j f_j of syzygies f_j.
struct SyzygyLift {
  i64 r = 0;
  size_t syzygies = 0;  // dim Hom(O_A, Omega(-rK_A))
  size_t lifted = 0;    // dim of the image of Hom(iota, Omega(-rK_A))
  bool ok() const { return syzygies == lifted; }
};
SyzygyLift xi_omega_liftability(CoxEngine& E, i64 r);

// dim Ext^n(P, Q) for n = 0, 1, 2 via the hypercohomology spectral sequence of Hom(P, Q).
cohom::CohomologyVector les_ext(CoxEngine& E, const Complex& P, const Complex& Q,
                                cohom::Memo* memo = nullptr);

struct Arrow {
  int from = 0, to = 0;
  std::string label;
  Poly element;
};

struct PathRelation {
  int from = 0, to = 0;
  std::vector<std::pair<std::vector<int>, Q>> terms;  // arrow sequences with coefficients
  std::string text;
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<LClass> degrees;
  std::vector<Arrow> arrows;
  std::vector<PathRelation> relations;
  i64 degree_bound = 0;
  bool hilbert_ok = false;
};

Quiver quiver(CoxEngine& E, const std::vector<LClass>& summands,
              const std::vector<std::string>& names, std::optional<i64> degree_bound = std::nullopt);
std::string to_dot(const Quiver& q);
std::string relations_text(const Quiver& q);
std::string path_text(const Quiver& q, const std::vector<int>& path);
// Evaluates a linear combination of paths in Hom(from, to).
linalg::Vec evaluate_paths(CoxEngine& E, const Quiver& q,
                           const std::vector<std::pair<std::vector<int>, Q>>& terms);
// Whether the combination lies in the ideal generated by the extracted relations
// (equivalently, evaluates to zero when the Hilbert check passed).
bool relation_holds(CoxEngine& E, const Quiver& q,
                    const std::vector<std::pair<std::vector<int>, Q>>& terms);
// Arrow index by endpoints and label, or -1.
int find_arrow(const Quiver& q, int from, int to, const std::string& label);

}  // namespace glt::coxquiver
