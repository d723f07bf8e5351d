#pragma once

// Exact convex geometry in the internal spaces E-perp, E' and E''.
//
// A subspace V = image(P) of R^k (P an orthogonal projector) is handled in
// "chart" coordinates: the entries of a vector v in V at a fixed set of
// independent rows of P. The map v -> v[rows] is injective on V, so polytopes
// in V become full-dimensional objects in Q(sqrt5)^dim V.

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "quasilattice/exact_linalg.hpp"

namespace quasilattice {

enum class Membership { outside, boundary, inside };

const char* to_string(Membership m);

/// lower <= <normal, x> <= upper; lower == upper encodes an equality.
struct Halfspace {
  GoldenVector normal;
  GoldenScalar lower;
  GoldenScalar upper;
  bool is_equality() const { return lower == upper; }
};

struct HalfspaceRep {
  Index ambient_dimension = 0;
  std::vector<Halfspace> slabs;
};

/// Three-valued: boundary means no violated slab and at least one tight one.
Membership contains(const HalfspaceRep& h, const GoldenVector& p);

struct CoordinateChart {
  GoldenMatrix projector;   // k x k
  std::vector<Index> rows;  // independent rows of the projector
  Index dimension() const { return static_cast<Index>(rows.size()); }
  Index ambient_dimension() const { return projector.rows(); }
  /// Chart coordinates of a vector already lying in the subspace.
  GoldenVector coordinates(const GoldenVector& v) const;
  /// Chart coordinates of P x for arbitrary x.
  GoldenVector project(const GoldenVector& x) const;
  /// Rows of P at the chart rows (dim x k): project(x) = restricted() * x.
  GoldenMatrix restricted() const;
};

CoordinateChart make_chart(const GoldenMatrix& projector);

/// base + sum_i [0,1] * generators.col(i).
struct Zonotope {
  GoldenMatrix generators;  // m x N
  GoldenVector base;        // m
  Index ambient_dimension() const { return generators.rows(); }
};

/// P([0,1]^k + shift) in chart coordinates of image(P).
Zonotope projected_cube(const CoordinateChart& chart, const GoldenVector& shift);

/// Tight slab representation; one slab per facet-normal direction.
HalfspaceRep zonotope_facets(const Zonotope& z);
Membership zonotope_contains(const HalfspaceRep& h, const GoldenVector& p);

/// A compact convex polytope in E', stored by its extreme points.
struct AtomicSurface {
  CoordinateChart chart;
  std::vector<GoldenVector> vertices;        // full k-vectors, sorted
  std::vector<GoldenVector> chart_vertices;  // same order
  int dim = -1;                              // affine dimension, -1 if empty
  HalfspaceRep hrep;                         // in chart coordinates
  bool empty() const { return vertices.empty(); }
  bool has_interior() const { return dim == chart.dimension(); }
};

/// Convex hull of full k-vectors lying in image(chart.projector).
AtomicSurface make_surface(const CoordinateChart& chart,
                           const std::vector<GoldenVector>& points);

/// Vertices of ([0,1]^k + shift) cut by {x : P'' x = offset} for a fixed
/// rational projector P''. A vertex has k - d coordinates on cube facets
/// (d = rank P''); the remaining d are solved from the slice equations. The
/// invertible d x d column blocks are found once, at construction.
class CubeSlicer {
 public:
  explicit CubeSlicer(const GoldenMatrix& pi_dprime);

  Index rank() const { return static_cast<Index>(rows_.size()); }
  std::vector<GoldenVector> vertices(const GoldenVector& offset,
                                     const GoldenVector& shift) const;

 private:
  struct Block {
    std::vector<Index> free;   // solved coordinates
    std::vector<Index> fixed;  // coordinates at 0 or 1
    RationalMatrix inverse;    // of A restricted to free columns
    Eigen::MatrixXd inverse_d;
    Eigen::MatrixXd step_d;  // inverse_d times the fixed columns of A
  };
  Index k_ = 0;
  std::vector<Index> rows_;
  RationalMatrix a_;  // independent rows of P''
  Eigen::MatrixXd a_d_;
  std::vector<Block> blocks_;
};

std::vector<GoldenVector> cube_slice_vertices(const GoldenMatrix& pi_dprime,
                                              const GoldenVector& offset,
                                              const GoldenVector& shift);

/// pi'( ([0,1]^k + shift) cut by pi'' x = offset ).
AtomicSurface slice_and_project(const CubeSlicer& slicer,
                                const CoordinateChart& prime_chart,
                                const GoldenVector& offset,
                                const GoldenVector& shift);
AtomicSurface slice_and_project(const GoldenMatrix& pi_dprime,
                                const CoordinateChart& prime_chart,
                                const GoldenVector& offset,
                                const GoldenVector& shift);

/// p given in the chart coordinates of s.chart.
Membership surface_contains(const AtomicSurface& s, const GoldenVector& p);

AtomicSurface scale_surface(const AtomicSurface& s, const GoldenScalar& lambda);
AtomicSurface negate_surface(const AtomicSurface& s);

/// Exact equality of vertex sets (both are kept sorted).
bool same_vertices(const AtomicSurface& a, const AtomicSurface& b);

/// Calls f for each r-subset of {0..n-1} in lexicographic order.
void for_each_combination(int n, int r,
                          const std::function<void(const std::vector<int>&)>& f);

/// Structural order on exact vectors (entries compared by (a, b) parts).
struct StructuralLess {
  bool operator()(const GoldenVector& x, const GoldenVector& y) const;
};

}  // namespace quasilattice
