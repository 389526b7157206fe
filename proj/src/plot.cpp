#include "kotaro/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <queue>

#include "kotaro/error.hpp"
#include "kotaro/format.hpp"

namespace kotaro {

namespace {

constexpr double kCanvas = 600.0;
constexpr double kMargin = 50.0;

std::string fmt(double v) {
  // SVG coordinates do not need round-trip precision.
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Point {
  double x;
  double y;
};

}  // namespace

DecisionGrid decision_grid(const AdaptiveKernelModel& model, int resolution, const GridBounds& bounds) {
  if (model.dim() != 2) {
    throw Error(ErrorCode::NotTwoDimensional, "boundary grids need a 2-D model, got dim " +
                                                  std::to_string(model.dim()));
  }
  if (resolution < 2) throw Error(ErrorCode::InvalidArgument, "grid resolution must be at least 2");
  if (!(bounds.x_max > bounds.x_min) || !(bounds.y_max > bounds.y_min)) {
    throw Error(ErrorCode::InvalidArgument, "grid bounds must have max > min");
  }
  DecisionGrid grid;
  grid.bounds = bounds;
  const auto res = static_cast<std::size_t>(resolution);
  for (std::size_t i = 0; i < res; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(res - 1);
    grid.xs.push_back(bounds.x_min + t * (bounds.x_max - bounds.x_min));
    grid.ys.push_back(bounds.y_min + t * (bounds.y_max - bounds.y_min));
  }
  grid.values.resize(resolution, resolution);
  for (int iy = 0; iy < resolution; ++iy) {
    for (int ix = 0; ix < resolution; ++ix) {
      const std::array<double, 2> q{grid.xs[static_cast<std::size_t>(ix)], grid.ys[static_cast<std::size_t>(iy)]};
      grid.values(iy, ix) = model.decision_function(q).value;
    }
  }
  return grid;
}

int count_label_components(const DecisionGrid& grid, int label) {
  const int res = grid.resolution();
  std::vector<char> seen(static_cast<std::size_t>(res * res), 0);
  auto matches = [&](int iy, int ix) { return label_from_value(grid.values(iy, ix)) == label; };
  int components = 0;
  for (int start = 0; start < res * res; ++start) {
    if (seen[static_cast<std::size_t>(start)] || !matches(start / res, start % res)) continue;
    ++components;
    std::queue<int> frontier;
    frontier.push(start);
    seen[static_cast<std::size_t>(start)] = 1;
    while (!frontier.empty()) {
      const int cell = frontier.front();
      frontier.pop();
      const int iy = cell / res;
      const int ix = cell % res;
      const std::array<std::pair<int, int>, 4> steps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
      for (auto [dy, dx] : steps) {
        const int ny = iy + dy;
        const int nx = ix + dx;
        if (ny < 0 || nx < 0 || ny >= res || nx >= res) continue;
        const int next = ny * res + nx;
        if (seen[static_cast<std::size_t>(next)] || !matches(ny, nx)) continue;
        seen[static_cast<std::size_t>(next)] = 1;
        frontier.push(next);
      }
    }
  }
  return components;
}

void write_grid_csv(const DecisionGrid& grid, std::ostream& out) {
  out << "x,y,f,label\n";
  for (int iy = 0; iy < grid.resolution(); ++iy) {
    for (int ix = 0; ix < grid.resolution(); ++ix) {
      const double f = grid.values(iy, ix);
      out << format_double(grid.xs[static_cast<std::size_t>(ix)]) << ','
          << format_double(grid.ys[static_cast<std::size_t>(iy)]) << ',' << format_double(f) << ','
          << label_from_value(f) << '\n';
    }
  }
}

void write_boundary_svg(const DecisionGrid& grid, const AdaptiveKernelModel& model, std::ostream& out) {
  const auto& b = grid.bounds;
  const double plot = kCanvas - 2 * kMargin;
  auto sx = [&](double x) { return kMargin + (x - b.x_min) / (b.x_max - b.x_min) * plot; };
  auto sy = [&](double y) { return kCanvas - kMargin - (y - b.y_min) / (b.y_max - b.y_min) * plot; };

  const int res = grid.resolution();
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\"" << kCanvas
      << "\" viewBox=\"0 0 " << kCanvas << ' ' << kCanvas << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // One cell per node, centered on it.
  const double cw = plot / res;
  out << "<g shape-rendering=\"crispEdges\">\n";
  for (int iy = 0; iy < res; ++iy) {
    for (int ix = 0; ix < res; ++ix) {
      const bool positive = label_from_value(grid.values(iy, ix)) == kPositive;
      out << "<rect x=\"" << fmt(kMargin + ix * cw) << "\" y=\"" << fmt(kCanvas - kMargin - (iy + 1) * cw)
          << "\" width=\"" << fmt(cw + 0.05) << "\" height=\"" << fmt(cw + 0.05) << "\" fill=\""
          << (positive ? "#f6c9c4" : "#c7d8f2") << "\"/>\n";
    }
  }
  out << "</g>\n";

  // Zero contour by marching squares with linear interpolation along edges.
  out << "<path fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" d=\"";
  auto lerp = [](double a, double b) { return a / (a - b); };
  for (int iy = 0; iy + 1 < res; ++iy) {
    for (int ix = 0; ix + 1 < res; ++ix) {
      const double x0 = grid.xs[static_cast<std::size_t>(ix)];
      const double x1 = grid.xs[static_cast<std::size_t>(ix + 1)];
      const double y0 = grid.ys[static_cast<std::size_t>(iy)];
      const double y1 = grid.ys[static_cast<std::size_t>(iy + 1)];
      const double f00 = grid.values(iy, ix);
      const double f10 = grid.values(iy, ix + 1);
      const double f01 = grid.values(iy + 1, ix);
      const double f11 = grid.values(iy + 1, ix + 1);
      std::vector<Point> hits;
      if ((f00 > 0) != (f10 > 0)) hits.push_back({x0 + lerp(f00, f10) * (x1 - x0), y0});
      if ((f10 > 0) != (f11 > 0)) hits.push_back({x1, y0 + lerp(f10, f11) * (y1 - y0)});
      if ((f01 > 0) != (f11 > 0)) hits.push_back({x0 + lerp(f01, f11) * (x1 - x0), y1});
      if ((f00 > 0) != (f01 > 0)) hits.push_back({x0, y0 + lerp(f00, f01) * (y1 - y0)});
      if (hits.size() == 4) {
        // saddle: the cell-center sign decides which corners connect
        const bool center_positive = (f00 + f10 + f01 + f11) > 0;
        if (center_positive != (f00 > 0)) std::swap(hits[1], hits[3]);
      }
      for (std::size_t h = 0; h + 1 < hits.size(); h += 2) {
        out << 'M' << fmt(sx(hits[h].x)) << ' ' << fmt(sy(hits[h].y)) << 'L' << fmt(sx(hits[h + 1].x)) << ' '
            << fmt(sy(hits[h + 1].y));
      }
    }
  }
  out << "\"/>\n";

  for (Eigen::Index i = 0; i < model.train_features.rows(); ++i) {
    const bool positive = model.train_labels[static_cast<std::size_t>(i)] == kPositive;
    out << "<circle cx=\"" << fmt(sx(model.train_features(i, 0))) << "\" cy=\"" << fmt(sy(model.train_features(i, 1)))
        << "\" r=\"3\" fill=\"" << (positive ? "#c0392b" : "#1f4e9c") << "\" stroke=\"white\" stroke-width=\"0.5\"/>\n";
  }
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << plot << "\" height=\"" << plot
      << "\" fill=\"none\" stroke=\"#333\"/>\n";
  out << "<text x=\"" << kMargin << "\" y=\"" << kCanvas - 15 << "\" font-size=\"12\" font-family=\"sans-serif\">x: ["
      << format_double(b.x_min) << ", " << format_double(b.x_max) << "]  y: [" << format_double(b.y_min) << ", "
      << format_double(b.y_max) << "]</text>\n";
  out << "</svg>\n";
}

void write_sweep_svg(const ExperimentReport& report, const std::string& metric, std::ostream& out) {
  std::map<std::string, std::vector<std::array<double, 3>>> curves;  // classifier -> (ratio, mean, se)
  std::vector<std::string> order;
  for (const auto& a : report.aggregates) {
    if (a.metric != metric) continue;
    const auto ratio = parse_double(a.group);
    if (!ratio) continue;
    if (!curves.count(a.classifier)) order.push_back(a.classifier);
    curves[a.classifier].push_back({*ratio, a.summary.mean, a.summary.standard_error});
  }
  double lo = 0.4;
  double hi = 1.0;
  for (auto& [name, pts] : curves) {
    std::sort(pts.begin(), pts.end());
    for (const auto& p : pts) {
      if (std::isfinite(p[1])) lo = std::min(lo, p[1] - p[2]);
    }
  }
  lo = std::floor(lo * 10.0) / 10.0;

  const double plot = kCanvas - 2 * kMargin;
  auto sx = [&](double r) { return kMargin + r * plot; };
  auto sy = [&](double v) { return kCanvas - kMargin - (v - lo) / (hi - lo) * plot; };
  const std::array<const char*, 6> palette{"#c0392b", "#1f4e9c", "#27ae60", "#7f8c8d", "#8e44ad", "#d35400"};

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\"" << kCanvas
      << "\" viewBox=\"0 0 " << kCanvas << ' ' << kCanvas << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << plot << "\" height=\"" << plot
      << "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double r = t / 5.0;
    out << "<text x=\"" << fmt(sx(r) - 8) << "\" y=\"" << fmt(kCanvas - kMargin + 16) << "\">" << fmt(r).substr(0, 3)
        << "</text>\n";
    const double v = lo + (hi - lo) * t / 5.0;
    out << "<text x=\"8\" y=\"" << fmt(sy(v) + 4) << "\">" << fmt(v) << "</text>\n";
  }
  out << "<text x=\"" << fmt(kCanvas / 2 - 60) << "\" y=\"" << fmt(kCanvas - 12)
      << "\">imbalance ratio (minority/majority)</text>\n";
  out << "<text x=\"" << fmt(kMargin) << "\" y=\"" << fmt(kMargin - 12) << "\">" << metric
      << " (mean +- standard error)</text>\n";

  for (std::size_t c = 0; c < order.size(); ++c) {
    const auto& pts = curves[order[c]];
    const char* color = palette[c % palette.size()];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto& p : pts) out << fmt(sx(p[0])) << ',' << fmt(sy(p[1])) << ' ';
    out << "\"/>\n";
    for (const auto& p : pts) {
      out << "<line x1=\"" << fmt(sx(p[0])) << "\" x2=\"" << fmt(sx(p[0])) << "\" y1=\"" << fmt(sy(p[1] - p[2]))
          << "\" y2=\"" << fmt(sy(p[1] + p[2])) << "\" stroke=\"" << color << "\"/>\n";
      out << "<circle cx=\"" << fmt(sx(p[0])) << "\" cy=\"" << fmt(sy(p[1])) << "\" r=\"3\" fill=\"" << color
          << "\"/>\n";
    }
    out << "<text x=\"" << fmt(kCanvas - kMargin - 90) << "\" y=\"" << fmt(kMargin + 18 + 16.0 * c) << "\" fill=\""
        << color << "\">" << order[c] << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace kotaro
