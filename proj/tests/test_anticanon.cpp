#include "glt/anticanon.hpp"

#include "helpers.hpp"

#include <algorithm>

using namespace glt;
using namespace testing;
using anticanon::CubicGroupModel;
using anticanon::GroupKind;
using anticanon::Verdict;

namespace {

const CubicGroupModel kGm{GroupKind::Gm};
const CubicGroupModel kGa{GroupKind::Ga};

Q det3(const std::array<Q, 3>& a, const std::array<Q, 3>& b, const std::array<Q, 3>& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

Q random_nonzero(std::mt19937_64& rng) {
  i64 n = 0;
  while (n == 0) n = uniform(rng, -9, 9);
  return Q(n, uniform(rng, 1, 7));
}

std::vector<Q> primes_with_last(const Q& last) {
  std::vector<Q> p{2, 3, 5, 7, 11, 13, 17, 19};
  p.push_back(last);
  return p;
}

int brute_order(const CubicGroupModel& m, const Q& g) {
  Q x = g;
  for (int n = 1; n <= 24; ++n) {
    if (x == anticanon::identity(m)) return n;
    x = anticanon::combine(m, {x, g});
  }
  return 0;
}

}  // namespace

TEST_CASE("nine-point class examples") {
  CHECK(anticanon::nine_point_class(kGm, {2, 3, 5, 7, 11, 13, 17, 19, Q(1, 4849845)}) == 2);
  CHECK(anticanon::nine_point_class(kGa, {1, 2, 3, 4, 5, 6, 7, 8, -36}) == 0);
  CHECK_THROWS_AS(anticanon::nine_point_class(kGm, {0, 2, 3, 4, 5, 6, 7, 8, 9}), Error);
  CHECK_THROWS_AS(anticanon::nine_point_class(kGm, {2, 2, 3, 4, 5, 6, 7, 8, 9}), Error);
}

TEST_CASE("torsion examples") {
  CHECK_FALSE(anticanon::is_torsion(kGm, 2));
  CHECK(anticanon::is_torsion(kGm, -1));
  CHECK_FALSE(anticanon::is_torsion(kGa, 5));
  CHECK(anticanon::torsion_order(kGm, -1) == 2);
}

TEST_CASE("almost general position verdicts") {
  picard::PointConfiguration none;
  none.count = 9;
  CHECK(anticanon::almost_general_9(kGm, primes_with_last(Q(1, 4849845)), none) == Verdict::AlmostGeneral);
  CHECK(anticanon::almost_general_9(kGm, primes_with_last(Q(-1, 9699690)), none) == Verdict::NotAlmostGeneral);
  CHECK(anticanon::almost_general_9(kGm, primes_with_last(Q(1, 9699690)), none) == Verdict::NotAlmostGeneral);
  CHECK(anticanon::almost_general_9(kGa, {1, 2, 3, 4, 5, 6, 7, 8, -36}, none) == Verdict::NotAlmostGeneral);
  // Four collinear points among the nine.
  picard::PointConfiguration four = none;
  four.collinear_triples = {{0, 1, 2}, {0, 1, 3}};
  CHECK(anticanon::almost_general_9(kGm, primes_with_last(Q(1, 4849845)), four) == Verdict::OutsideModel);
}

TEST_CASE("collinearity on the nodal cubic (200 seeded triples)") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 200; ++k) {
    Q a = random_nonzero(rng), b = random_nonzero(rng);
    Q c = 1 / (a * b);
    CHECK(det3(anticanon::cubic_point(kGm, a), anticanon::cubic_point(kGm, b), anticanon::cubic_point(kGm, c)) == 0);
    Q d = random_nonzero(rng);
    if (a * b * d != 1 && a != b && b != d && a != d)
      CHECK(det3(anticanon::cubic_point(kGm, a), anticanon::cubic_point(kGm, b), anticanon::cubic_point(kGm, d)) != 0);
  }
}

TEST_CASE("collinearity on the cuspidal cubic (200 seeded triples)") {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 200; ++k) {
    Q a = random_nonzero(rng), b = random_nonzero(rng);
    if (a == b || a == -a - b || b == -a - b) continue;
    CHECK(det3(anticanon::cubic_point(kGa, a), anticanon::cubic_point(kGa, b), anticanon::cubic_point(kGa, -a - b)) ==
          0);
  }
}

TEST_CASE("torsion agrees with brute-force order search up to 24") {
  std::mt19937_64 rng(33);
  std::vector<Q> samples{1, -1, 2, Q(-1, 2), Q(3, 4), 0, 5, -7};
  for (int k = 0; k < 200; ++k) samples.push_back(Q(uniform(rng, -6, 6), uniform(rng, 1, 4)));
  for (auto& g : samples) {
    CHECK(anticanon::torsion_order(kGa, g) == brute_order(kGa, g));
    if (g != 0) CHECK(anticanon::torsion_order(kGm, g) == brute_order(kGm, g));
  }
}

TEST_CASE("verdict is invariant under permuting the nine points (200 seeded permutations)") {
  std::mt19937_64 rng(34);
  picard::PointConfiguration none;
  none.count = 9;
  for (const Q& last : {Q(1, 4849845), Q(-1, 9699690)}) {
    auto p = primes_with_last(last);
    const Verdict v = anticanon::almost_general_9(kGm, p, none);
    for (int k = 0; k < 100; ++k) {
      std::shuffle(p.begin(), p.end(), rng);
      CHECK(anticanon::almost_general_9(kGm, p, none) == v);
    }
  }
}

TEST_CASE("nine-point surfaces record the torsion order of K on the cubic") {
  picard::PointConfiguration none;
  none.count = 9;
  auto S = anticanon::nine_point_surface(kGm, primes_with_last(Q(-1, 9699690)), none);
  REQUIRE(S.anticanonical_torsion_order.has_value());
  CHECK(*S.anticanonical_torsion_order == 2);
  auto v = cohom::cohomology(S, scale(-2, S.canonical));
  CHECK(v.h0 >= 1);
}
