#include "quasilattice/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace quasilattice {

namespace {

bool is_idempotent(const GoldenMatrix& p) { return equal(mat_mul(p, p), p); }

bool is_symmetric(const GoldenMatrix& p) {
  return equal(p, GoldenMatrix(p.transpose()));
}

int integer_trace(const GoldenMatrix& p, const char* what) {
  const GoldenScalar t = trace(p);
  if (!t.is_rational() ||
      boost::multiprecision::denominator(t.rational_part()) != 1)
    throw IdempotenceFailure(std::string("trace of ") + what + " is not an integer");
  return boost::multiprecision::numerator(t.rational_part()).convert_to<int>();
}

GoldenVector to_golden(const IntVector& v) {
  GoldenVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = GoldenScalar(Rational(v(i)));
  return out;
}

}  // namespace

double ProjectorSet::kappa() const { return std::sqrt(kappa_sq.to_double()); }

ProjectorSet build_projectors(const ClusterSpec& cluster) {
  if (cluster.gram.rows() != cluster.k || cluster.gram.cols() != cluster.k)
    throw ShapeMismatch("gram is not k x k");
  const Index k = cluster.k;
  ProjectorSet p;
  const GoldenScalar tr = trace(cluster.gram);
  p.rho_sq = GoldenScalar(cluster.n) / tr;
  p.kappa_sq = tr / GoldenScalar(cluster.n);
  p.pi = cluster.gram * p.rho_sq;
  if (!is_idempotent(p.pi))
    throw IdempotenceFailure(cluster.name +
                             ": rho^2 * gram is not idempotent (representation "
                             "on E is not irreducible)");
  const GoldenMatrix id = identity<GoldenScalar>(k);
  p.pi_perp = id - p.pi;
  p.pi_prime = conjugate(p.pi);
  if (!is_zero_matrix(mat_mul(p.pi, p.pi_prime)))
    throw ConjugateNotProjector(cluster.name +
                                ": conjugate projector is not orthogonal to pi");
  p.pi_dprime = p.pi_perp - p.pi_prime;
  if (!is_rational(p.pi_dprime))
    throw RationalityFailure(cluster.name + ": pi'' has irrational entries");
  p.n = integer_trace(p.pi, "pi");
  p.s = integer_trace(p.pi_prime, "pi'");
  p.d = integer_trace(p.pi_dprime, "pi''");
  return p;
}

ValidationReport check_projector_algebra(const ProjectorSet& p) {
  ValidationReport rep;
  const Index k = p.pi.rows();
  const std::pair<const char*, const GoldenMatrix*> named[] = {
      {"pi", &p.pi}, {"pi_perp", &p.pi_perp}, {"pi'", &p.pi_prime},
      {"pi''", &p.pi_dprime}};
  for (const auto& [name, m] : named) {
    if (!is_idempotent(*m)) rep.issues.push_back(std::string(name) + " is not idempotent");
    if (!is_symmetric(*m)) rep.issues.push_back(std::string(name) + " is not symmetric");
  }
  if (!is_zero_matrix(mat_mul(p.pi, p.pi_perp))) rep.issues.push_back("pi pi_perp != 0");
  if (!is_zero_matrix(mat_mul(p.pi, p.pi_prime))) rep.issues.push_back("pi pi' != 0");
  if (!is_zero_matrix(mat_mul(p.pi, p.pi_dprime))) rep.issues.push_back("pi pi'' != 0");
  if (!is_zero_matrix(mat_mul(p.pi_prime, p.pi_dprime)))
    rep.issues.push_back("pi' pi'' != 0");
  if (!equal(GoldenMatrix(p.pi + p.pi_prime + p.pi_dprime), identity<GoldenScalar>(k)))
    rep.issues.push_back("pi + pi' + pi'' != I");
  if (!equal(GoldenMatrix(p.pi + p.pi_perp), identity<GoldenScalar>(k)))
    rep.issues.push_back("pi + pi_perp != I");
  if (!(trace(p.pi) == GoldenScalar(p.n))) rep.issues.push_back("trace(pi) != n");
  if (!(trace(p.pi_prime) == GoldenScalar(p.s))) rep.issues.push_back("trace(pi') != s");
  if (!(trace(p.pi_dprime) == GoldenScalar(p.d))) rep.issues.push_back("trace(pi'') != d");
  if (p.n + p.s + p.d != k) rep.issues.push_back("n + s + d != k");
  if (!equal(conjugate(p.pi), p.pi_prime)) rep.issues.push_back("pi' != conj(pi)");
  if (!is_rational(p.pi_dprime)) rep.issues.push_back("pi'' is not rational");
  if (!equal(conjugate(p.pi_dprime), p.pi_dprime))
    rep.issues.push_back("pi'' is not Galois invariant");
  return rep;
}

ValidationReport check_invariance(const ClusterSpec& cluster,
                                  const ProjectorSet& p) {
  ValidationReport rep;
  for (std::size_t i = 0; i < cluster.generators.size(); ++i) {
    const GoldenMatrix g = cluster.generators[i].matrix<GoldenScalar>();
    const std::pair<const char*, const GoldenMatrix*> named[] = {
        {"pi", &p.pi}, {"pi'", &p.pi_prime}, {"pi''", &p.pi_dprime}};
    for (const auto& [name, m] : named)
      if (!equal(mat_mul(g, *m), mat_mul(*m, g)))
        rep.issues.push_back("generator " + std::to_string(i + 1) +
                             " does not commute with " + name);
  }
  return rep;
}

ValidationReport check_embedding(const ClusterSpec& cluster,
                                 const ProjectorSet& p, double tol) {
  ValidationReport rep;
  if (!cluster.embedding) {
    rep.issues.push_back("cluster has no embedding");
    return rep;
  }
  const Eigen::MatrixXd& e = *cluster.embedding;
  const Eigen::MatrixXd pi = to_double(p.pi);
  // The physical frame is r = rho E^T y for y in E; for y = kappa pi eps_i
  // the factors rho and kappa cancel.
  for (Index i = 0; i < cluster.k; ++i) {
    const Eigen::VectorXd phys = e.transpose() * pi.col(i);
    const double err = (phys - e.row(i).transpose()).cwiseAbs().maxCoeff();
    if (err > tol)
      rep.issues.push_back("e_" + std::to_string(i + 1) + " off by " +
                           std::to_string(err));
  }
  return rep;
}

std::vector<std::vector<long>> lattice_points_in_ellipsoid(
    const Eigen::MatrixXd& basis, const Eigen::VectorXd& center,
    double radius_sq) {
  const Index r = basis.cols();
  std::vector<std::vector<long>> out;
  if (r == 0) {
    if (center.squaredNorm() <= radius_sq * (1 + 1e-9) + 1e-9) out.emplace_back();
    return out;
  }
  const Eigen::MatrixXd q = basis.transpose() * basis;
  const Eigen::LLT<Eigen::MatrixXd> llt(q);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("ellipsoid enumeration: dependent basis");
  const Eigen::MatrixXd u = llt.matrixU();
  const Eigen::VectorXd t0 = llt.solve(basis.transpose() * center);
  const double residual = (basis * t0 - center).squaredNorm();
  const double budget = radius_sq - residual + 1e-9 * (1 + radius_sq);
  if (budget < 0) return out;
  std::vector<long> t(static_cast<std::size_t>(r));
  std::function<void(Index, double)> rec = [&](Index i, double remaining) {
    double tail = 0;
    for (Index j = i + 1; j < r; ++j)
      tail += u(i, j) * (static_cast<double>(t[static_cast<std::size_t>(j)]) - t0(j));
    const double c = t0(i) - tail / u(i, i);
    const double w = std::sqrt(std::max(0.0, remaining)) / u(i, i);
    for (long v = static_cast<long>(std::ceil(c - w));
         v <= static_cast<long>(std::floor(c + w)); ++v) {
      const double term = u(i, i) * (static_cast<double>(v) - c);
      t[static_cast<std::size_t>(i)] = v;
      if (i == 0)
        out.push_back(t);
      else
        rec(i - 1, remaining - term * term);
    }
  };
  rec(r - 1, budget);
  std::sort(out.begin(), out.end());
  return out;
}

ReducedScheme reduce(const ProjectorSet& p, const GoldenVector& shift) {
  const Index k = p.pi.rows();
  if (shift.size() != k) throw ShapeMismatch("reduce: shift has wrong length");
  ReducedScheme r;
  r.projectors = p;
  r.shift = shift;
  r.prime_chart = make_chart(p.pi_prime);
  r.dprime_chart = make_chart(p.pi_dprime);
  r.calL = image_lattice(GoldenMatrix(p.pi + p.pi_prime));
  r.L = integer_kernel(p.pi_dprime);
  r.index = lattice_index(r.L, r.calL.lattice);

  const ImageLattice offsets = image_lattice(p.pi_dprime);
  const IntMatrix& h = offsets.lattice.basis();
  const Rational inv_den(BigInt(1), offsets.lattice.denominator());
  const Index d = h.cols();

  // Offsets c = pi'' y for y in the shifted cube lie within sqrt(k)/2 of the
  // image of the cube center.
  GoldenVector center_exact = shift;
  for (Index i = 0; i < k; ++i) center_exact(i) += GoldenScalar(Rational(1, 2));
  const Eigen::VectorXd center = to_double(p.pi_dprime) *
      center_exact.unaryExpr([](const GoldenScalar& x) { return x.to_double(); });
  Eigen::MatrixXd basis(k, d);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < d; ++j)
      basis(i, j) = (Rational(h(i, j)) * inv_den).convert_to<double>();

  const CubeSlicer slicer(p.pi_dprime);
  const HalfspaceRep window =
      zonotope_facets(projected_cube(r.dprime_chart, shift));
  for (const auto& tv : lattice_points_in_ellipsoid(basis, center, k / 4.0)) {
    IntVector t(d);
    for (Index j = 0; j < d; ++j) t(j) = tv[static_cast<std::size_t>(j)];
    IntVector z = IntVector::Zero(k);
    if (d > 0) z = offsets.preimages * t;
    // pi'' z = h t / D, since pi'' maps the preimages onto the scaled basis
    const IntVector ht = d > 0 ? IntVector(h * t) : IntVector(IntVector::Zero(k));
    GoldenVector offset(k);
    for (Index i = 0; i < k; ++i) offset(i) = GoldenScalar(Rational(ht(i)) * inv_den);
    if (contains(window, r.dprime_chart.coordinates(offset)) == Membership::outside)
      continue;
    CosetSlice slice;
    slice.t = t;
    slice.z = z;
    slice.offset = offset;
    slice.surface = slice_and_project(slicer, r.prime_chart, offset, shift);
    if (slice.surface.empty()) continue;
    slice.has_interior = slice.surface.has_interior();
    if (slice.has_interior) ++r.m;
    r.cosets.push_back(std::move(slice));
  }
  return r;
}

}  // namespace quasilattice
