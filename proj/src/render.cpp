#include "quasilattice/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace quasilattice {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

struct Box {
  double x0 = std::numeric_limits<double>::infinity();
  double y0 = std::numeric_limits<double>::infinity();
  double x1 = -std::numeric_limits<double>::infinity();
  double y1 = -std::numeric_limits<double>::infinity();
  void add(double x, double y) {
    x0 = std::min(x0, x);
    y0 = std::min(y0, y);
    x1 = std::max(x1, x);
    y1 = std::max(y1, y);
  }
  bool empty() const { return x0 > x1; }
};

std::string svg_header(Box b, double pad, double ppu) {
  if (b.empty()) b = {-1, -1, 1, 1};
  const double x = b.x0 - pad, w = b.x1 - b.x0 + 2 * pad;
  // y is flipped, so the view box starts at -y1.
  const double y = -b.y1 - pad, h = b.y1 - b.y0 + 2 * pad;
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
    << num(w * ppu) << "\" height=\"" << num(h * ppu) << "\" viewBox=\"" << num(x)
    << ' ' << num(y) << ' ' << num(w) << ' ' << num(h) << "\">\n";
  return s.str();
}

}  // namespace

std::string render_svg(const Pattern& p, const SvgOptions& opt) {
  return render_svg(p, neighbor_graph(p), opt);
}

std::string render_svg(const Pattern& p, const NeighborGraph& g,
                       const SvgOptions& opt) {
  if (p.n != 2) throw RenderError("SVG patterns need a planar cluster");
  std::vector<Eigen::VectorXd> pos;
  Box box;
  for (std::size_t i = 0; i < p.size(); ++i) {
    pos.push_back(p.phys(i));
    box.add(pos.back()(0), pos.back()(1));
  }
  std::ostringstream s;
  s << svg_header(box, 2 * opt.point_size + 0.5, opt.pixels_per_unit);
  if (opt.draw_edges && !g.edges.empty()) {
    s << "<g stroke=\"black\" stroke-width=\"" << num(opt.point_size / 3) << "\">\n";
    for (const auto& e : g.edges)
      s << "<line x1=\"" << num(pos[e.from](0)) << "\" y1=\"" << num(-pos[e.from](1))
        << "\" x2=\"" << num(pos[e.to](0)) << "\" y2=\"" << num(-pos[e.to](1)) << "\"/>\n";
    s << "</g>\n";
  }
  if (!pos.empty()) {
    s << "<g fill=\"black\">\n";
    for (std::size_t i = 0; i < pos.size(); ++i) {
      s << "<circle cx=\"" << num(pos[i](0)) << "\" cy=\"" << num(-pos[i](1))
        << "\" r=\"" << num(opt.point_size) << '"';
      if (p.points[i].boundary) s << " fill=\"red\" class=\"boundary\"";
      s << "/>\n";
    }
    s << "</g>\n";
  }
  s << "</svg>\n";
  return s.str();
}

Eigen::MatrixXd plane_frame(const GoldenMatrix& projector) {
  const Eigen::MatrixXd p = to_double(projector);
  Eigen::MatrixXd frame(p.rows(), 2);
  Index found = 0;
  for (Index c = 0; c < p.cols() && found < 2; ++c) {
    Eigen::VectorXd v = p.col(c);
    for (Index f = 0; f < found; ++f) v -= frame.col(f).dot(v) * frame.col(f);
    if (v.norm() < 1e-9) continue;
    frame.col(found++) = v.normalized();
  }
  if (found != 2) throw RenderError("projector does not have rank 2");
  return frame;
}

std::string render_surfaces_svg(const std::vector<AtomicSurface>& surfaces,
                                const SvgOptions& opt) {
  std::vector<std::vector<Eigen::Vector2d>> shapes;
  Box total;
  double cursor = 0;
  for (const auto& surface : surfaces) {
    std::vector<Eigen::Vector2d> pts;
    if (!surface.empty()) {
      if (surface.chart.dimension() != 2) throw RenderError("surface is not planar");
      const Eigen::MatrixXd frame = plane_frame(surface.chart.projector);
      Box b;
      for (const auto& v : surface.vertices) {
        Eigen::VectorXd x(v.size());
        for (Index i = 0; i < v.size(); ++i) x(i) = v(i).to_double();
        pts.emplace_back(frame.transpose() * x);
        b.add(pts.back()(0), pts.back()(1));
      }
      // Cyclic order around the centroid.
      Eigen::Vector2d c = Eigen::Vector2d::Zero();
      for (const auto& q : pts) c += q;
      c /= static_cast<double>(pts.size());
      std::stable_sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b2) {
        return std::atan2(a(1) - c(1), a(0) - c(0)) < std::atan2(b2(1) - c(1), b2(0) - c(0));
      });
      const double shift = cursor - b.x0;
      for (auto& q : pts) {
        q(0) += shift;
        total.add(q(0), q(1));
      }
      cursor += b.x1 - b.x0 + 0.5;
    }
    shapes.push_back(std::move(pts));
  }
  std::ostringstream s;
  s << svg_header(total, 0.25, opt.pixels_per_unit);
  const std::string stroke = num(opt.point_size / 3);
  for (const auto& pts : shapes) {
    if (pts.empty()) continue;
    if (pts.size() == 1) {
      s << "<circle cx=\"" << num(pts[0](0)) << "\" cy=\"" << num(-pts[0](1))
        << "\" r=\"" << num(opt.point_size) << "\" fill=\"black\"/>\n";
      continue;
    }
    s << (pts.size() == 2 ? "<polyline" : "<polygon") << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
      s << (i ? " " : "") << num(pts[i](0)) << ',' << num(-pts[i](1));
    s << "\" fill=\"" << (pts.size() == 2 ? "none" : "#cfd8e3")
      << "\" stroke=\"black\" stroke-width=\"" << stroke << "\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string render_xyz(const Pattern& p, const std::string& element) {
  if (p.n != 3) throw RenderError("XYZ output needs a spatial cluster");
  std::ostringstream s;
  s << p.size() << '\n'
    << p.cluster << " radius " << to_string(p.radius) << '\n';
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Eigen::VectorXd x = p.phys(i);
    s << element << ' ' << num(x(0)) << ' ' << num(x(1)) << ' ' << num(x(2)) << '\n';
  }
  return s.str();
}

}  // namespace quasilattice
