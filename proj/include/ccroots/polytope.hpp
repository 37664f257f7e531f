#pragma once

// Exact lattice polytopes: beneath-beyond convex hull with integer hyperplanes,
// face lattice counts, facet graphs, volumes, Minkowski sums, mixed volumes.

#include <string>
#include <vector>

#include "ccroots/errors.hpp"
#include "ccroots/lp.hpp"
#include "ccroots/scalar.hpp"

namespace ccroots {

/// Largest ambient dimension accepted by the hull.
inline constexpr int kMaxHullDimension = 10;
/// Largest facet count for face-lattice enumeration.
inline constexpr int kMaxFaceLatticeFacets = 64;
/// Largest polytope count for inclusion-exclusion mixed volumes.
inline constexpr int kMaxMixedVolumeArity = 6;

/// offset + normal . x >= 0, normal primitive and pointing inward. For affine
/// hull equations the relation is an equality.
struct Facet {
  long long offset = 0;
  std::vector<long long> normal;

  long long evaluate(const IntPoint& x) const;
  Rational evaluate(const RationalPoint& x) const;
  /// Homogeneous vector (offset, normal...).
  std::vector<long long> homogeneous() const;

  auto operator<=>(const Facet&) const = default;
};

class LatticePolytope {
 public:
  /// V-only polytope: generators kept, no hull computed. Used when the ambient
  /// dimension exceeds the hull cap; membership then falls back to LP.
  static LatticePolytope from_generators(std::vector<IntPoint> points);

  int ambient_dim() const { return ambient_; }
  /// Affine dimension; -1 when no hull was computed.
  int dim() const { return dim_; }
  bool has_hrep() const { return has_hrep_; }

  const std::vector<IntPoint>& generators() const { return generators_; }
  const std::vector<IntPoint>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  /// Affine-hull equations (empty when full-dimensional).
  const std::vector<Facet>& equations() const { return equations_; }
  /// Vertex indices lying on each facet.
  const std::vector<std::vector<int>>& facet_vertices() const { return facet_vertices_; }
  /// Euclidean volume in the ambient space (zero unless full-dimensional).
  const Rational& volume() const { return volume_; }

 private:
  friend LatticePolytope convex_hull(const std::vector<IntPoint>& points);

  int ambient_ = 0;
  int dim_ = -1;
  bool has_hrep_ = false;
  std::vector<IntPoint> generators_;
  std::vector<IntPoint> vertices_;
  std::vector<Facet> facets_;
  std::vector<Facet> equations_;
  std::vector<std::vector<int>> facet_vertices_;
  Rational volume_{0};
};

LatticePolytope convex_hull(const std::vector<IntPoint>& points);

struct FVector {
  std::vector<long long> counts;  // f_0 .. f_{d-1}

  bool euler_holds() const;
  std::string to_string() const;
};

FVector f_vector(const LatticePolytope& P);

struct FacetGraph {
  struct Edge {
    int a;
    int b;
    int dim;  // affine dimension of the shared face
  };
  int nodes = 0;
  std::vector<Edge> edges;
};

FacetGraph facet_intersection_graph(const LatticePolytope& P);

/// Affine dimension of a finite point set (-1 for the empty set).
int affine_dimension(const std::vector<IntPoint>& points);

Rational volume(const LatticePolytope& P);

LatticePolytope minkowski_sum(const LatticePolytope& P, const LatticePolytope& Q);

/// Mixed volume of n polytopes in R^n by inclusion-exclusion over Minkowski-sum
/// volumes, normalized so MV(P, ..., P) = n! Vol(P).
BigInt mixed_volume(const std::vector<LatticePolytope>& polytopes);

bool contains(const LatticePolytope& P, const RationalPoint& q);
bool contains(const LatticePolytope& P, const IntPoint& q);

/// n! Vol(P) as an integer (normalized lattice volume).
BigInt normalized_volume(const LatticePolytope& P);

}  // namespace ccroots
