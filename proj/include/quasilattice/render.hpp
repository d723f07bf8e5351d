#pragma once

// Deterministic SVG and XYZ output. SVG user units are physical units (edge
// vectors e_i), with y pointing up; numbers carry 12 significant digits.

#include <stdexcept>
#include <string>
#include <vector>

#include "quasilattice/generator.hpp"

namespace quasilattice {

class RenderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SvgOptions {
  double point_size = 0.08;  // circle radius, physical units
  bool draw_edges = true;
  double pixels_per_unit = 40;
};

/// Planar patterns only (n = 2).
std::string render_svg(const Pattern& p, const NeighborGraph& g,
                       const SvgOptions& opt = {});
std::string render_svg(const Pattern& p, const SvgOptions& opt = {});

/// Orthonormal 2-frame of a plane given by a projector (Gram-Schmidt on its
/// columns), k x 2.
Eigen::MatrixXd plane_frame(const GoldenMatrix& projector);

/// Surfaces in a plane, drawn left to right; polygons for 2-dimensional
/// ones, segments and dots otherwise.
std::string render_surfaces_svg(const std::vector<AtomicSurface>& surfaces,
                                const SvgOptions& opt = {});

/// Spatial patterns only (n = 3): "count", comment, then "Q x y z" lines.
std::string render_xyz(const Pattern& p, const std::string& element = "Q");

}  // namespace quasilattice
