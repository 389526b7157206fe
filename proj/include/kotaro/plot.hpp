#pragma once

#include <iosfwd>
#include <string>

#include "kotaro/core.hpp"
#include "kotaro/eval.hpp"

namespace kotaro {

struct GridBounds {
  double x_min = 0.0;
  double x_max = 5.0;
  double y_min = 0.0;
  double y_max = 5.0;
};

/// Decision values sampled on resolution x resolution nodes spanning the
/// bounds inclusively. values(iy, ix) is f at (xs[ix], ys[iy]).
struct DecisionGrid {
  GridBounds bounds;
  std::vector<double> xs;
  std::vector<double> ys;
  Matrix values;

  int resolution() const { return static_cast<int>(xs.size()); }
};

/// Throws NotTwoDimensional for models with dim != 2.
DecisionGrid decision_grid(const AdaptiveKernelModel& model, int resolution, const GridBounds& bounds);

/// 4-connected components of grid nodes whose predicted label equals `label`.
int count_label_components(const DecisionGrid& grid, int label);

/// Columns x,y,f,label; x varies fastest.
void write_grid_csv(const DecisionGrid& grid, std::ostream& out);

/// Sign regions, the f = 0 contour (marching squares) and the training points.
void write_boundary_svg(const DecisionGrid& grid, const AdaptiveKernelModel& model, std::ostream& out);

/// Mean +- standard error of `metric` against ratio, one curve per classifier.
void write_sweep_svg(const ExperimentReport& report, const std::string& metric, std::ostream& out);

}  // namespace kotaro
