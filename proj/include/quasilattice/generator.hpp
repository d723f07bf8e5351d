#pragma once

// Pattern generation on the unit lattice Z^k.
//
// A point x is accepted when pi_perp x lies in the window
// pi_perp([0,1]^k + shift) and |pi x| <= R, with R measured in units of the
// first cluster vector |e_1|. The physical position of x is sum_i x_i e_i.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quasilattice/exact_predicate.hpp"
#include "quasilattice/scheme.hpp"

namespace quasilattice {

using LatticePoint = std::vector<long>;

struct PatternPoint {
  LatticePoint lattice;
  bool boundary = false;
};

struct Pattern {
  std::string cluster;
  int k = 0;
  int n = 0;
  GoldenVector shift;
  Rational radius;
  double kappa = 0;
  Eigen::MatrixXd embedding;         // k x n
  std::vector<PatternPoint> points;  // sorted by lattice coordinates

  std::size_t size() const { return points.size(); }
  std::size_t boundary_count() const;
  Eigen::VectorXd phys(std::size_t i) const;
  /// Index of x in points, or -1.
  long find(const LatticePoint& x) const;
  void canonicalize();
};

/// The strip projection setup for one cluster and shift.
struct StripScheme {
  ClusterSpec cluster;
  ProjectorSet projectors;
  GoldenVector shift;
  CoordinateChart perp_chart;
  HalfspaceRep window;  // pi_perp([0,1]^k + shift), chart coordinates
  CompiledPolytope compiled;

  static StripScheme build(const ClusterSpec& cluster, const GoldenVector& shift);
  static StripScheme build(const ClusterSpec& cluster,
                           const ProjectorSet& projectors,
                           const GoldenVector& shift);
  int k() const { return cluster.k; }
  /// Fast exact window test.
  Membership accepts(const long* x) const { return compiled.test(x); }
  /// x^T gram x <= R^2 gram(0,0), i.e. |pi x| <= R edges.
  CompiledQuadratic radius_test(const Rational& radius) const;
  /// pi_perp(1/2 + shift), the center of the window, as floats.
  Eigen::VectorXd window_center() const;
  /// |pi x|^2 on the unit lattice for |pi x| = R edges.
  double radius_sq_internal(const Rational& radius) const;
  Pattern empty_pattern(const Rational& radius) const;
};

/// Exact window test straight from the H-representation.
Membership strip_accepts(const StripScheme& s, const IntVector& x);

/// (r_1, ..., r_k) with r_i the reciprocal of the i-th prime other than 2, 5.
GoldenVector generic_shift(int k);
GoldenVector zero_shift(int k);

class SeedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Brute-force oracle: every integer point of the ball that can satisfy both
/// conditions, partitioned over workers by the first coordinate.
Pattern generate_box(const StripScheme& s, const Rational& radius,
                     int workers = 1);

/// First accepted point of [-2,2]^k within the radius, lexicographic order.
std::optional<LatticePoint> find_seed(const StripScheme& s, const Rational& radius);

/// Breadth-first closure under x -> x +- eps_i. The search may leave the
/// ball by explore_margin edges so that components joined just outside it
/// are still found; only points within the radius are returned.
Pattern generate_bfs(const StripScheme& s, const Rational& radius,
                     std::optional<LatticePoint> seed = std::nullopt,
                     const Rational& explore_margin = Rational(2));

/// Union over coset slices of {y in z_i + L : |pi y| <= R, pi' y in K_i}.
Pattern generate_baake_moody(const StripScheme& s, const ReducedScheme& r,
                             const Rational& radius, int workers = 1);

struct NeighborEdge {
  std::size_t from;  // x
  std::size_t to;    // x + eps_label
  int label;         // 1..k
};

struct NeighborGraph {
  std::vector<NeighborEdge> edges;
  std::vector<int> degree;  // occupied neighbors among x +- eps_i
};

NeighborGraph neighbor_graph(const Pattern& p);

/// Largest deviation of an edge's physical difference from e_label.
double max_edge_deviation(const Pattern& p, const NeighborGraph& g);

struct OccupancyStats {
  Rational radius;
  std::vector<std::size_t> histogram;  // by number of occupied neighbors
  std::size_t counted = 0;
  Rational fully_occupied_fraction;
  std::vector<std::vector<int>> shells;  // orbits of cluster indices
  std::vector<Rational> shell_full_fraction;
};

/// Smallest integer m with |e_i| <= m |e_1| for all i.
Rational occupancy_margin(const ClusterSpec& c);

/// Statistics over points within radius; the pattern must have been
/// generated at radius + occupancy_margin or more.
OccupancyStats occupancy_stats(const StripScheme& s, const Pattern& p,
                               const NeighborGraph& g, const Rational& radius);

struct EquivalenceReport {
  bool equal = false;
  std::vector<LatticePoint> only_first;
  std::vector<LatticePoint> only_second;
  /// All differing points carry the boundary flag.
  bool boundary_only = false;
};

EquivalenceReport equivalence_check(const Pattern& a, const Pattern& b);

struct SymmetryReport {
  bool ok = true;
  std::size_t checked = 0;  // points inside the centered ball
  std::vector<std::pair<int, LatticePoint>> failures;  // (generator, point)
};

/// For shift 0: the accepted set within the ball of radius R about
/// pi(1/2, ..., 1/2) is mapped to itself by every generator acting on the
/// cube as x -> g x + cube_offset(g).
SymmetryReport symmetry_check(const StripScheme& s, const Rational& radius,
                              int workers = 1);

/// Orbits of {0..k-1} under the generators, signs ignored.
std::vector<std::vector<int>> index_orbits(const ClusterSpec& c);

}  // namespace quasilattice
