#pragma once

// Superspace projectors of a G-cluster and the reduction of the strip
// projection pattern to a cut-and-project scheme in E + E' with one atomic
// surface per coset of L.
//
// Everything is expressed on the unit lattice Z^k with the cube [0,1]^k; the
// irrational scale kappa = 1/rho only enters floating output.

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "quasilattice/cluster.hpp"
#include "quasilattice/geometry.hpp"
#include "quasilattice/lattice.hpp"

namespace quasilattice {

class IdempotenceFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConjugateNotProjector : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RationalityFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProjectorSet {
  GoldenMatrix pi;         // onto E (physical)
  GoldenMatrix pi_perp;    // I - pi
  GoldenMatrix pi_prime;   // Galois conjugate of pi
  GoldenMatrix pi_dprime;  // I - pi - pi', rational
  GoldenScalar rho_sq;
  GoldenScalar kappa_sq;
  int n = 0;
  int s = 0;
  int d = 0;
  int k() const { return static_cast<int>(pi.rows()); }
  double kappa() const;
};

/// pi = rho^2 gram with rho^2 = n / trace(gram), checked by idempotence.
ProjectorSet build_projectors(const ClusterSpec& cluster);

/// Idempotence, symmetry, orthogonality, completeness, traces, Galois
/// relation and rationality, each reported separately.
ValidationReport check_projector_algebra(const ProjectorSet& p);

/// g pi = pi g (and for pi', pi'') for every generator g.
ValidationReport check_invariance(const ClusterSpec& cluster,
                                  const ProjectorSet& p);

/// kappa pi eps_i, read in the physical frame, equals e_i within tol.
ValidationReport check_embedding(const ClusterSpec& cluster,
                                 const ProjectorSet& p, double tol = 1e-9);

struct CosetSlice {
  IntVector t;           // coordinates of the offset in the pi''(Z^k) basis
  IntVector z;           // integer representative, pi'' z = offset
  GoldenVector offset;   // pi'' z
  AtomicSurface surface; // pi'(cube slice), in E'
  bool has_interior = false;
};

struct ReducedScheme {
  ProjectorSet projectors;
  GoldenVector shift;
  CoordinateChart prime_chart;   // E'
  CoordinateChart dprime_chart;  // E''
  ImageLattice calL;             // (pi + pi')(Z^k)
  IntegerLatticeBasis L;         // Z^k intersected with ker pi''
  BigInt index;                  // [calL : L] at common scale
  std::vector<CosetSlice> cosets;
  int m = 0;                     // cosets whose surface has interior
};

/// Enumerates every coset slice meeting [0,1]^k + shift and builds its
/// atomic surface.
ReducedScheme reduce(const ProjectorSet& p, const GoldenVector& shift);

/// Integer points t with |B t - center|^2 <= radius_sq (Fincke-Pohst on the
/// Cholesky factor of B^T B), sorted lexicographically. The radius carries a
/// small relative margin; callers filter exactly.
std::vector<std::vector<long>> lattice_points_in_ellipsoid(
    const Eigen::MatrixXd& basis, const Eigen::VectorXd& center,
    double radius_sq);

}  // namespace quasilattice
