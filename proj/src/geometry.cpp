#include "quasilattice/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <set>

namespace quasilattice {

namespace {

int compare_rational(const Rational& a, const Rational& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}

GoldenScalar dot_prefix(const GoldenVector& u, const GoldenVector& v) {
  GoldenScalar s;
  for (Index i = 0; i < u.size(); ++i)
    if (!u(i).is_zero() && !v(i).is_zero()) s += u(i) * v(i);
  return s;
}

Eigen::VectorXd to_double(const GoldenVector& v) {
  Eigen::VectorXd out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = v(i).to_double();
  return out;
}

// Fixed spread of directions; only used to guess extreme points.
const std::vector<Eigen::VectorXd>& probe_directions(int s) {
  static std::map<int, std::vector<Eigen::VectorXd>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(s);
  if (it != cache.end()) return it->second;
  std::vector<Eigen::VectorXd> dirs;
  for (int i = 0; i < s; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(s);
    e(i) = 1;
    dirs.push_back(e);
    dirs.push_back(-e);
  }
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> g;
  for (int i = 0; i < 96 * s; ++i) {
    Eigen::VectorXd u(s);
    for (int j = 0; j < s; ++j) u(j) = g(rng);
    dirs.push_back(u.normalized());
  }
  return cache.emplace(s, std::move(dirs)).first->second;
}

RationalMatrix rational_inverse(const RationalMatrix& m) {
  const Index n = m.rows();
  RationalMatrix aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = identity<Rational>(n);
  const auto ech = row_echelon(aug);
  return ech.reduced.rightCols(n);
}

// Normal of the hyperplane spanned by the rows of m (m has dim-1 independent
// rows); std::nullopt when the rows are dependent.
std::optional<GoldenVector> hyperplane_normal(const GoldenMatrix& rows) {
  const GoldenMatrix ker = kernel_basis(rows);
  if (ker.cols() != 1) return std::nullopt;
  return canonical_direction(ker.col(0));
}

}  // namespace

const char* to_string(Membership m) {
  switch (m) {
    case Membership::outside: return "outside";
    case Membership::boundary: return "boundary";
    case Membership::inside: return "inside";
  }
  return "?";
}

bool StructuralLess::operator()(const GoldenVector& x,
                                const GoldenVector& y) const {
  if (x.size() != y.size()) return x.size() < y.size();
  for (Index i = 0; i < x.size(); ++i) {
    if (int c = compare_rational(x(i).rational_part(), y(i).rational_part()))
      return c < 0;
    if (int c = compare_rational(x(i).sqrt5_part(), y(i).sqrt5_part()))
      return c < 0;
  }
  return false;
}

void for_each_combination(int n, int r,
                          const std::function<void(const std::vector<int>&)>& f) {
  if (r < 0 || r > n) return;
  std::vector<int> idx(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    f(idx);
    int i = r - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - r + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

Membership contains(const HalfspaceRep& h, const GoldenVector& p) {
  if (p.size() != h.ambient_dimension)
    throw ShapeMismatch("membership: point has wrong dimension");
  bool tight = false;
  for (const auto& s : h.slabs) {
    const GoldenScalar v = dot_prefix(s.normal, p);
    const int lo = (v - s.lower).sign();
    const int hi = (s.upper - v).sign();
    if (lo < 0 || hi < 0) return Membership::outside;
    if (lo == 0 || hi == 0) tight = true;
  }
  return tight ? Membership::boundary : Membership::inside;
}

GoldenVector CoordinateChart::coordinates(const GoldenVector& v) const {
  GoldenVector out(dimension());
  for (Index i = 0; i < dimension(); ++i) out(i) = v(rows[static_cast<std::size_t>(i)]);
  return out;
}

GoldenVector CoordinateChart::project(const GoldenVector& x) const {
  if (x.size() != ambient_dimension())
    throw ShapeMismatch("chart projection: wrong vector length");
  GoldenVector out(dimension());
  for (Index i = 0; i < dimension(); ++i) {
    GoldenScalar s;
    const Index r = rows[static_cast<std::size_t>(i)];
    for (Index j = 0; j < x.size(); ++j)
      if (!x(j).is_zero() && !projector(r, j).is_zero()) s += projector(r, j) * x(j);
    out(i) = s;
  }
  return out;
}

GoldenMatrix CoordinateChart::restricted() const {
  GoldenMatrix out(dimension(), ambient_dimension());
  for (Index i = 0; i < dimension(); ++i)
    out.row(i) = projector.row(rows[static_cast<std::size_t>(i)]);
  return out;
}

CoordinateChart make_chart(const GoldenMatrix& projector) {
  return {projector, independent_rows(projector)};
}

Zonotope projected_cube(const CoordinateChart& chart, const GoldenVector& shift) {
  return {chart.restricted(), chart.project(shift)};
}

HalfspaceRep zonotope_facets(const Zonotope& z) {
  const Index m = z.ambient_dimension();
  const Index n = z.generators.cols();
  HalfspaceRep h;
  h.ambient_dimension = m;
  if (m == 0) return h;
  if (rank(z.generators) != m)
    throw std::invalid_argument("zonotope generators do not span the space");
  std::vector<GoldenVector> normals;
  if (m == 1) {
    normals.push_back(GoldenVector::Constant(1, GoldenScalar(1)));
  } else {
    std::set<GoldenVector, StructuralLess> seen;
    for_each_combination(static_cast<int>(n), static_cast<int>(m - 1),
                         [&](const std::vector<int>& subset) {
      GoldenMatrix rows(m - 1, m);
      for (std::size_t i = 0; i < subset.size(); ++i)
        rows.row(static_cast<Index>(i)) = z.generators.col(subset[i]).transpose();
      auto u = hyperplane_normal(rows);
      if (u && seen.insert(*u).second) normals.push_back(*u);
    });
  }
  for (const auto& u : normals) {
    const GoldenScalar b = dot_prefix(u, z.base);
    GoldenScalar lo = b, hi = b;
    for (Index i = 0; i < n; ++i) {
      const GoldenScalar v = dot_prefix(u, z.generators.col(i));
      if (v.sign() > 0) hi += v;
      else lo += v;
    }
    h.slabs.push_back({u, lo, hi});
  }
  return h;
}

Membership zonotope_contains(const HalfspaceRep& h, const GoldenVector& p) {
  return contains(h, p);
}

namespace {

// Hull of points given in chart coordinates; full_of(i) is the ambient vector
// of coords[i], asked for only for the vertices that are kept.
AtomicSurface build_surface(const CoordinateChart& chart,
                            const std::vector<GoldenVector>& coords,
                            const std::function<GoldenVector(std::size_t)>& full_of) {
  AtomicSurface out;
  out.chart = chart;
  const Index s = chart.dimension();
  out.hrep.ambient_dimension = s;

  std::map<GoldenVector, std::size_t, StructuralLess> unique;
  for (std::size_t i = 0; i < coords.size(); ++i) unique.emplace(coords[i], i);
  if (unique.empty()) return out;
  std::vector<GoldenVector> pts;
  std::vector<std::size_t> src;
  for (const auto& [c, i] : unique) {
    pts.push_back(c);
    src.push_back(i);
  }
  const Index np = static_cast<Index>(pts.size());

  GoldenMatrix diffs(np - 1, s);
  for (Index i = 1; i < np; ++i) diffs.row(i - 1) = (pts[static_cast<std::size_t>(i)] - pts[0]).transpose();
  const Index h = np > 1 ? rank(diffs) : 0;
  out.dim = static_cast<int>(h);

  // Affine hull: normals orthogonal to every difference.
  const GoldenMatrix eq = kernel_basis(diffs);
  std::vector<GoldenVector> eq_normals;
  for (Index c = 0; c < eq.cols(); ++c) {
    GoldenVector u = canonical_direction(eq.col(c));
    const GoldenScalar v = dot_prefix(u, pts[0]);
    out.hrep.slabs.push_back({u, v, v});
    eq_normals.push_back(u);
  }

  // Facets within the hull: hyperplanes through h affinely independent points
  // that leave every point on one side.
  std::vector<Halfspace> facets;
  if (h >= 1) {
    std::vector<Eigen::VectorXd> pd;
    for (const auto& p : pts) pd.push_back(to_double(p));
    Eigen::MatrixXd eq_d(static_cast<Index>(eq_normals.size()), s);
    for (std::size_t i = 0; i < eq_normals.size(); ++i)
      eq_d.row(static_cast<Index>(i)) = to_double(eq_normals[i]).transpose();
    double pd_scale = 1;
    for (const auto& q : pd) pd_scale = std::max(pd_scale, q.norm());

    // Exhaustive search over the candidate points cand; bounds are taken over
    // cand only.
    auto search = [&](const std::vector<int>& cand) {
      std::vector<Halfspace> found;
      std::set<GoldenVector, StructuralLess> seen;
      for_each_combination(static_cast<int>(cand.size()), static_cast<int>(h),
                           [&](const std::vector<int>& pick) {
        std::vector<std::size_t> subset;
        for (int c : pick) subset.push_back(static_cast<std::size_t>(cand[static_cast<std::size_t>(c)]));
        const std::size_t p0 = subset[0];
        // Cheap rejection in floating point when points clearly straddle.
        Eigen::VectorXd ud;
        if (h == s && s <= 3) {
          if (s == 1) {
            ud = Eigen::VectorXd::Ones(1);
          } else if (s == 2) {
            const Eigen::VectorXd e = pd[subset[1]] - pd[p0];
            ud = Eigen::Vector2d(-e(1), e(0));
          } else {
            const Eigen::Vector3d a = pd[subset[1]] - pd[p0];
            const Eigen::Vector3d b = pd[subset[2]] - pd[p0];
            ud = a.cross(b);
          }
        } else {
          Eigen::MatrixXd md(s - 1, s);
          for (std::size_t i = 1; i < subset.size(); ++i)
            md.row(static_cast<Index>(i - 1)) = (pd[subset[i]] - pd[p0]).transpose();
          md.bottomRows(static_cast<Index>(eq_normals.size())) = eq_d;
          Eigen::FullPivLU<Eigen::MatrixXd> lu(md);
          if (lu.dimensionOfKernel() == 1) ud = lu.kernel().col(0);
        }
        if (ud.size() > 0 && ud.norm() > 1e-12 * pd_scale * pd_scale) {
          const double tol = 1e-9 * pd_scale * ud.norm();
          const double base = ud.dot(pd[p0]);
          bool below = false, above = false;
          for (int c : cand) {
            const double v = ud.dot(pd[static_cast<std::size_t>(c)]) - base;
            below = below || v < -tol;
            above = above || v > tol;
            if (below && above) return;
          }
        }
        std::optional<GoldenVector> u;
        if (h == s && s == 3) {
          // exact cross product; zero when the three points are collinear
          const GoldenVector a = pts[subset[1]] - pts[p0];
          const GoldenVector b = pts[subset[2]] - pts[p0];
          GoldenVector c(3);
          c(0) = a(1) * b(2) - a(2) * b(1);
          c(1) = a(2) * b(0) - a(0) * b(2);
          c(2) = a(0) * b(1) - a(1) * b(0);
          if (!c(0).is_zero() || !c(1).is_zero() || !c(2).is_zero()) u = canonical_direction(c);
        } else {
          GoldenMatrix rows(s - 1, s);
          for (std::size_t i = 1; i < subset.size(); ++i)
            rows.row(static_cast<Index>(i - 1)) = (pts[subset[i]] - pts[p0]).transpose();
          for (std::size_t i = 0; i < eq_normals.size(); ++i)
            rows.row(static_cast<Index>(subset.size() - 1 + i)) = eq_normals[i].transpose();
          u = hyperplane_normal(rows);
        }
        if (!u || seen.count(*u)) return;
        const GoldenScalar t = dot_prefix(*u, pts[p0]);
        GoldenScalar lo = t, hi = t;
        for (int c : cand) {
          const GoldenScalar v = dot_prefix(*u, pts[static_cast<std::size_t>(c)]);
          if (v < lo) lo = v;
          if (v > hi) hi = v;
        }
        if (!(lo == t) && !(hi == t)) return;
        seen.insert(*u);
        found.push_back({*u, lo, hi});
      });
      return found;
    };

    // Start from points that maximize some direction in floating point, then
    // add every point the resulting facets fail to contain (exact test) until
    // none is left. The facets of the candidate hull then bound all points,
    // so the two hulls coincide.
    std::vector<char> in(pts.size(), h == s ? 0 : 1);
    if (h == s) {
      for (const auto& u : probe_directions(static_cast<int>(s))) {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& q : pd) best = std::max(best, u.dot(q));
        const double tol = 1e-9 * pd_scale * u.norm();
        for (std::size_t i = 0; i < pd.size(); ++i)
          if (u.dot(pd[i]) >= best - tol) in[i] = 1;
      }
    }
    while (true) {
      std::vector<int> cand;
      for (std::size_t i = 0; i < in.size(); ++i)
        if (in[i]) cand.push_back(static_cast<int>(i));
      if (static_cast<Index>(cand.size()) < np) {
        GoldenMatrix cd(static_cast<Index>(cand.size()) - 1, s);
        for (std::size_t i = 1; i < cand.size(); ++i)
          cd.row(static_cast<Index>(i - 1)) =
              (pts[static_cast<std::size_t>(cand[i])] - pts[static_cast<std::size_t>(cand[0])]).transpose();
        if (cand.size() < 2 || rank(cd) < h) {
          std::fill(in.begin(), in.end(), 1);
          continue;
        }
      }
      facets = search(cand);
      bool grew = false;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (in[i]) continue;
        for (const auto& f : facets) {
          const GoldenScalar v = dot_prefix(f.normal, pts[i]);
          if (v < f.lower || v > f.upper) {
            in[i] = 1;
            grew = true;
            break;
          }
        }
      }
      if (!grew) break;
    }
    std::sort(facets.begin(), facets.end(), [](const Halfspace& a, const Halfspace& b) {
      return StructuralLess()(a.normal, b.normal);
    });
  }

  // Extreme points: the tight facet normals span the hull directions.
  std::vector<std::pair<GoldenVector, GoldenVector>> kept;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool extreme = h == 0;
    if (!extreme) {
      std::vector<GoldenVector> tight;
      for (const auto& f : facets) {
        const GoldenScalar v = dot_prefix(f.normal, pts[i]);
        if (v == f.lower || v == f.upper) tight.push_back(f.normal);
      }
      if (static_cast<Index>(tight.size()) >= h) {
        GoldenMatrix t(static_cast<Index>(tight.size()), s);
        for (std::size_t r = 0; r < tight.size(); ++r)
          t.row(static_cast<Index>(r)) = tight[r].transpose();
        extreme = rank(t) == h;
      }
    }
    if (extreme) kept.emplace_back(pts[i], full_of(src[i]));
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return lex_less(a.first, b.first);
  });
  for (auto& [c, f] : kept) {
    out.chart_vertices.push_back(c);
    out.vertices.push_back(f);
  }
  for (auto& f : facets) out.hrep.slabs.push_back(std::move(f));
  return out;
}

}  // namespace

AtomicSurface make_surface(const CoordinateChart& chart,
                           const std::vector<GoldenVector>& points) {
  std::vector<GoldenVector> coords;
  for (const auto& v : points) coords.push_back(chart.coordinates(v));
  return build_surface(chart, coords, [&](std::size_t i) { return points[i]; });
}

CubeSlicer::CubeSlicer(const GoldenMatrix& pi_dprime) : k_(pi_dprime.cols()) {
  if (!is_rational(pi_dprime))
    throw std::invalid_argument("cube slicing needs a rational projector");
  rows_ = independent_rows(pi_dprime);
  const Index d = rank();
  a_.resize(d, k_);
  a_d_.resize(d, k_);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < k_; ++j) {
      a_(i, j) = pi_dprime(rows_[static_cast<std::size_t>(i)], j).rational_part();
      a_d_(i, j) = a_(i, j).convert_to<double>();
    }
  for_each_combination(static_cast<int>(k_), static_cast<int>(d),
                       [&](const std::vector<int>& subset) {
    Block b;
    std::vector<bool> is_free(static_cast<std::size_t>(k_), false);
    for (int f : subset) {
      b.free.push_back(f);
      is_free[static_cast<std::size_t>(f)] = true;
    }
    for (Index j = 0; j < k_; ++j)
      if (!is_free[static_cast<std::size_t>(j)]) b.fixed.push_back(j);
    RationalMatrix af(d, d);
    for (Index c = 0; c < d; ++c) af.col(c) = a_.col(b.free[static_cast<std::size_t>(c)]);
    if (quasilattice::rank(af) != d) return;
    b.inverse = rational_inverse(af);
    b.inverse_d = b.inverse.unaryExpr([](const Rational& x) { return x.convert_to<double>(); });
    b.step_d.resize(d, k_ - d);
    for (std::size_t t = 0; t < b.fixed.size(); ++t)
      b.step_d.col(static_cast<Index>(t)) = b.inverse_d * a_d_.col(b.fixed[t]);
    blocks_.push_back(std::move(b));
  });
}

std::vector<GoldenVector> CubeSlicer::vertices(const GoldenVector& offset,
                                               const GoldenVector& shift) const {
  if (offset.size() != k_ || shift.size() != k_)
    throw ShapeMismatch("cube slice: wrong vector length");
  const Index d = rank();
  const Index nfixed = k_ - d;
  std::set<GoldenVector, StructuralLess> found;

  // Slice equations A y = b for y = x - shift in [0,1]^k; b = ba + sqrt5 bb.
  Vector<Rational> ba(d), bb(d);
  for (Index i = 0; i < d; ++i) {
    GoldenScalar v = offset(rows_[static_cast<std::size_t>(i)]);
    for (Index j = 0; j < k_; ++j)
      if (!a_(i, j).is_zero()) v -= GoldenScalar(a_(i, j)) * shift(j);
    ba(i) = v.rational_part();
    bb(i) = v.sqrt5_part();
  }
  Eigen::VectorXd b_d(d);
  for (Index i = 0; i < d; ++i)
    b_d(i) = GoldenScalar(ba(i), bb(i)).to_double();

  // Corner patterns in Gray code order: one column update per step.
  Eigen::VectorXd yf(d);
  for (const auto& blk : blocks_) {
    yf.noalias() = blk.inverse_d * b_d;
    std::uint64_t bits = 0;
    std::optional<Vector<Rational>> q;
    for (std::uint64_t step = 0; step < (std::uint64_t{1} << nfixed); ++step) {
      if (step > 0) {
        const int t = std::countr_zero(step);
        bits ^= std::uint64_t{1} << t;
        if (bits >> t & 1)
          yf -= blk.step_d.col(t);
        else
          yf += blk.step_d.col(t);
      }
      if ((yf.array() < -1e-7).any() || (yf.array() > 1 + 1e-7).any()) continue;

      if (!q) q = blk.inverse * bb;
      Vector<Rational> r = ba;
      for (Index t = 0; t < nfixed; ++t)
        if (bits >> t & 1) r -= a_.col(blk.fixed[static_cast<std::size_t>(t)]);
      const Vector<Rational> p = blk.inverse * r;
      GoldenVector y(k_);
      bool ok = true;
      for (Index i = 0; i < d && ok; ++i) {
        GoldenScalar v(p(i), (*q)(i));
        if (v.sign() < 0 || (GoldenScalar(1) - v).sign() < 0) ok = false;
        y(blk.free[static_cast<std::size_t>(i)]) = v;
      }
      if (!ok) continue;
      for (Index t = 0; t < nfixed; ++t)
        y(blk.fixed[static_cast<std::size_t>(t)]) = GoldenScalar((bits >> t & 1) ? 1 : 0);
      found.insert(y);
    }
  }
  std::vector<GoldenVector> out;
  for (const auto& y : found) out.push_back(y + shift);
  return out;
}

std::vector<GoldenVector> cube_slice_vertices(const GoldenMatrix& pi_dprime,
                                              const GoldenVector& offset,
                                              const GoldenVector& shift) {
  return CubeSlicer(pi_dprime).vertices(offset, shift);
}

AtomicSurface slice_and_project(const CubeSlicer& slicer,
                                const CoordinateChart& prime_chart,
                                const GoldenVector& offset,
                                const GoldenVector& shift) {
  const std::vector<GoldenVector> xs = slicer.vertices(offset, shift);
  std::vector<GoldenVector> coords;
  for (const auto& x : xs) coords.push_back(prime_chart.project(x));
  return build_surface(prime_chart, coords,
                       [&](std::size_t i) { return mat_mul(prime_chart.projector, xs[i]); });
}

AtomicSurface slice_and_project(const GoldenMatrix& pi_dprime,
                                const CoordinateChart& prime_chart,
                                const GoldenVector& offset,
                                const GoldenVector& shift) {
  return slice_and_project(CubeSlicer(pi_dprime), prime_chart, offset, shift);
}

Membership surface_contains(const AtomicSurface& s, const GoldenVector& p) {
  if (s.empty()) return Membership::outside;
  const Membership m = contains(s.hrep, p);
  if (m != Membership::outside && !s.has_interior()) return Membership::boundary;
  return m;
}

AtomicSurface scale_surface(const AtomicSurface& s, const GoldenScalar& lambda) {
  std::vector<GoldenVector> pts;
  for (const auto& v : s.vertices) pts.push_back(v * lambda);
  return make_surface(s.chart, pts);
}

AtomicSurface negate_surface(const AtomicSurface& s) {
  return scale_surface(s, GoldenScalar(-1));
}

bool same_vertices(const AtomicSurface& a, const AtomicSurface& b) {
  if (a.vertices.size() != b.vertices.size()) return false;
  for (std::size_t i = 0; i < a.vertices.size(); ++i)
    if (!equal(a.vertices[i], b.vertices[i])) return false;
  return true;
}

}  // namespace quasilattice
