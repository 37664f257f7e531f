#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "ccroots/ccgen.hpp"
#include "ccroots/errors.hpp"
#include "ccroots/lp.hpp"
#include "ccroots/polytope.hpp"
#include "ccroots/solve.hpp"

using namespace ccroots;

namespace {

std::vector<IntPoint> simplex(int n, long long r = 1) {
  std::vector<IntPoint> pts{IntPoint(n, 0)};
  for (int i = 0; i < n; ++i) {
    IntPoint e(n, 0);
    e[i] = r;
    pts.push_back(e);
  }
  return pts;
}

std::vector<IntPoint> cube(int n) {
  std::vector<IntPoint> pts;
  for (int m = 0; m < (1 << n); ++m) {
    IntPoint p(n);
    for (int i = 0; i < n; ++i) p[i] = (m >> i) & 1;
    pts.push_back(p);
  }
  return pts;
}

// the fifteen listed generators of the first 2-in-4 Newton polytope
const std::vector<IntPoint> kNew23{{0, 0, 0, 0, 0}, {1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0},
                                   {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}, {1, 0, 0, 1, 0}, {0, 1, 1, 0, 0},
                                   {2, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 0, 1, 0, 0}, {1, 0, 0, 1, 0},
                                   {1, 0, 0, 0, 1}, {2, 0, 0, 1, 0}, {1, 1, 1, 0, 0}};

}  // namespace

TEST_CASE("exact convex combinations") {
  const std::vector<IntPoint> sq{{0, 0}, {2, 0}, {0, 2}, {2, 2}};
  auto w = convex_combination(sq, RationalPoint{Rational(1), Rational(1, 2)});
  REQUIRE(w);
  Rational sum(0), x(0), y(0);
  for (std::size_t k = 0; k < sq.size(); ++k) {
    CHECK((*w)[k] >= 0);
    sum += (*w)[k];
    x += (*w)[k] * Rational(sq[k][0]);
    y += (*w)[k] * Rational(sq[k][1]);
  }
  CHECK(sum == 1);
  CHECK(x == 1);
  CHECK(y == Rational(1, 2));
  CHECK_FALSE(in_convex_hull(sq, IntPoint{3, 0}));
  CHECK_FALSE(in_convex_hull(sq, RationalPoint{Rational(2), Rational(201, 100)}));
  std::vector<IntPoint> tri{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0, 0}};
  CHECK(is_extremal(tri, 3));
  std::vector<IntPoint> mid{{0, 0}, {2, 0}, {1, 0}};
  CHECK_FALSE(is_extremal(mid, 2));
}

TEST_CASE("hulls of small polytopes") {
  const auto sq = convex_hull(cube(2));
  CHECK(sq.vertices().size() == 4);
  CHECK(sq.facets().size() == 4);

  // simplex plus an interior point scaled to integers
  auto pts = simplex(3, 4);
  pts.push_back({1, 1, 1});
  const auto P = convex_hull(pts);
  CHECK(P.vertices().size() == 4);
  CHECK(std::find(P.vertices().begin(), P.vertices().end(), IntPoint{1, 1, 1}) == P.vertices().end());

  const auto flat = convex_hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
  CHECK(flat.dim() == 2);
  CHECK(flat.equations().size() == 1);

  const auto N = convex_hull(kNew23);
  CHECK(N.vertices().size() == 12);
  CHECK(N.dim() == 5);
}

TEST_CASE("f-vectors") {
  CHECK(f_vector(convex_hull(cube(3))).counts == std::vector<long long>{8, 12, 6});
  CHECK(f_vector(convex_hull(simplex(5))).counts == std::vector<long long>{6, 15, 20, 15, 6});
  const auto fv = f_vector(convex_hull(kNew23));
  CHECK(fv.counts == std::vector<long long>{12, 33, 42, 28, 9});
  CHECK(fv.euler_holds());
  CHECK(f_vector(convex_hull(cube(4))).euler_holds());
}

TEST_CASE("facet intersection graphs") {
  const auto s = facet_intersection_graph(convex_hull(simplex(4)));
  CHECK(s.nodes == 5);
  CHECK(s.edges.size() == 10);
  for (const auto& e : s.edges) CHECK(e.dim == 2);

  const auto P = convex_hull(cube(3));
  const auto g = facet_intersection_graph(P);
  CHECK(g.edges.size() == 12);  // each facet meets the four non-opposite ones
  for (const auto& e : g.edges) {
    const auto& a = P.facets()[e.a].normal;
    const auto& b = P.facets()[e.b].normal;
    bool parallel = true;
    for (std::size_t k = 0; k < a.size(); ++k) parallel = parallel && a[k] == -b[k];
    CHECK_FALSE(parallel);
  }

  const auto G = facet_intersection_graph(convex_hull(kNew23));
  CHECK(G.nodes == 9);
  // ridges (dim 3) dominate, a few facet pairs meet in 2-faces, nothing lower
  int ridges = 0, planes = 0;
  for (const auto& e : G.edges) (e.dim == 3 ? ridges : planes) += 1;
  for (const auto& e : G.edges) CHECK(e.dim >= 2);
  CHECK(ridges == 28);
  CHECK(planes == 6);
}

TEST_CASE("volumes") {
  CHECK(volume(convex_hull(simplex(3, 2))) == Rational(8, 6));
  CHECK(volume(convex_hull(simplex(5, 4))) == Rational(1024, 120));
  CHECK(volume(convex_hull(cube(3))) == 1);
  CHECK(volume(convex_hull({{1, 2, 3}})) == 0);
  CHECK(normalized_volume(convex_hull(simplex(4))) == 1);
}

TEST_CASE("Minkowski sums") {
  const auto P = convex_hull(simplex(2, 3));
  const auto Z = convex_hull({{0, 0}});
  CHECK(minkowski_sum(P, Z).vertices() == P.vertices());
  const auto sq = minkowski_sum(convex_hull({{0, 0}, {1, 0}}), convex_hull({{0, 0}, {0, 1}}));
  CHECK(sq.vertices().size() == 4);
  CHECK(volume(sq) == 1);

  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> u(-3, 3);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<IntPoint> a, b;
    for (int k = 0; k < 6; ++k) {
      a.push_back({u(rng), u(rng), u(rng)});
      b.push_back({u(rng), u(rng), u(rng)});
    }
    const auto A = convex_hull(a), B = convex_hull(b);
    const auto S = minkowski_sum(A, B);
    std::set<IntPoint> sums;
    for (const auto& v : A.vertices())
      for (const auto& w : B.vertices()) sums.insert({v[0] + w[0], v[1] + w[1], v[2] + w[2]});
    for (const auto& v : S.vertices()) CHECK(sums.count(v));
  }
}

TEST_CASE("mixed volumes") {
  for (int n : {2, 3, 4}) {
    std::vector<LatticePolytope> ps(n, convex_hull(simplex(n)));
    CHECK(mixed_volume(ps) == 1);
  }
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> u(0, 3);
  for (int n : {2, 3})
    for (int rep = 0; rep < 5; ++rep) {
      std::vector<IntPoint> pts = simplex(n);
      for (int k = 0; k < 4; ++k) {
        IntPoint p(n);
        for (auto& x : p) x = u(rng);
        pts.push_back(p);
      }
      const auto P = convex_hull(pts);
      CHECK(mixed_volume(std::vector<LatticePolytope>(n, P)) == normalized_volume(P));
    }
  // Bezout: degrees 2 and 3 in the plane
  CHECK(mixed_volume({convex_hull(simplex(2, 2)), convex_hull(simplex(2, 3))}) == 6);
  CHECK_THROWS(mixed_volume({convex_hull(simplex(2)), convex_hull(simplex(3))}));
  CHECK_THROWS_AS(mixed_volume(std::vector<LatticePolytope>(7, convex_hull(simplex(7)))), CapacityError);
}

TEST_CASE("2-in-4 CCSD mixed volume") {
  const auto H = random_rational_hamiltonian_2in4(1);
  const auto sys = generate_residual_system(H, TruncationScheme::ccsd());
  std::vector<LatticePolytope> ps;
  for (const auto& f : sys.equations) ps.push_back(newton_polytope(f));
  CHECK(mixed_volume(ps) == 50);
}

TEST_CASE("membership") {
  const auto N = convex_hull(kNew23);
  for (const auto& v : N.vertices()) CHECK(contains(N, v));
  CHECK(contains(N, IntPoint{0, 0, 0, 0, 0}));
  CHECK_FALSE(contains(N, IntPoint{3, 0, 0, 0, 0}));
  CHECK(contains(N, RationalPoint{Rational(1, 2), Rational(1, 2), Rational(0), Rational(0), Rational(0)}));
  // the V-only fallback answers through the LP
  const auto V = LatticePolytope::from_generators(simplex(11));
  CHECK_FALSE(V.has_hrep());
  CHECK(contains(V, IntPoint(11, 0)));
  CHECK_FALSE(contains(V, IntPoint(11, 1)));
  CHECK(newton_polytope(Polynomial<double>::constant(3, 2.0)).vertices() == std::vector<IntPoint>{{0, 0, 0}});
}
