#pragma once

// Rectilinear building boundaries on a square pixel grid.
//
// Coordinates are pixel units with x growing to the right (columns) and y
// growing downwards (rows), so "clockwise" always means clockwise as the
// raster is displayed. Pixel (i, j) covers [i, i+1] x [j, j+1] and its
// center is (i + 0.5, j + 0.5).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace floorgraph {

inline constexpr int kDefaultResolution = 128;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct Segment {
  Point a;
  Point b;

  bool horizontal() const { return a.y == b.y; }
  bool vertical() const { return a.x == b.x; }
  double length() const;
  Point midpoint() const { return {(a.x + b.x) / 2, (a.y + b.y) / 2}; }

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Axis-aligned rectangle [x0, x1] x [y0, y1].
struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const;
  Point center() const { return {(x0 + x1) / 2, (y0 + y1) / 2}; }
  bool contains(Point p) const {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Area of the intersection of two rectangles, zero when they do not overlap.
double overlap_area(const Rect& a, const Rect& b);

/// Row-major 2D grid of values.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int width, int height, T fill = T{})
      : width_(width), height_(height),
        cells_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {}

  int width() const { return width_; }
  int height() const { return height_; }
  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

  T& at(int x, int y) { return cells_[index(x, y)]; }
  const T& at(int x, int y) const { return cells_[index(x, y)]; }

  /// Value at (x, y), or `outside` when the coordinate is off the grid.
  T get_or(int x, int y, T outside) const { return in_bounds(x, y) ? at(x, y) : outside; }

  const std::vector<T>& cells() const { return cells_; }
  std::vector<T>& cells() { return cells_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> cells_;
};

using Mask = Grid<std::uint8_t>;

std::size_t count_set(const Mask& mask);

/// Closed rectilinear ring; the closing edge back to the first vertex is implicit.
using Ring = std::vector<Point>;

/// Signed area of a ring; positive for clockwise rings in raster coordinates.
double signed_area(const Ring& ring);

/// A validated rectilinear building outline with its front door.
///
/// Vertices are integer pixel-corner coordinates in [0, resolution), stored
/// clockwise with no repeated or collinear vertices. The front door is a
/// non-degenerate segment lying on exactly one edge.
class Boundary {
 public:
  /// Empty placeholder; only make() produces a usable boundary.
  Boundary() = default;

  /// Validates and normalizes: duplicate and collinear vertices are dropped
  /// and a counter-clockwise ring is reversed. Throws Error(InvalidBoundary).
  static Boundary make(std::vector<Point> vertices, Segment door,
                       int resolution = kDefaultResolution);

  const std::vector<Point>& vertices() const { return vertices_; }
  const Segment& door() const { return door_; }
  int resolution() const { return resolution_; }

  /// Index i of the edge vertices[i] -> vertices[i+1] that carries the door.
  std::size_t door_edge() const { return door_edge_; }
  Segment edge(std::size_t i) const;
  std::size_t edge_count() const { return vertices_.size(); }

  Rect bbox() const;
  double perimeter() const;
  double area() const { return signed_area(vertices_); }

  friend bool operator==(const Boundary&, const Boundary&) = default;

 private:
  std::vector<Point> vertices_;
  Segment door_;
  int resolution_ = kDefaultResolution;
  std::size_t door_edge_ = 0;
};

struct TurningBreakpoint {
  double arc_fraction = 0.0;
  double cumulative_angle = 0.0;

  friend bool operator==(const TurningBreakpoint&, const TurningBreakpoint&) = default;
};

/// Door-anchored turning function: a step function of cumulative turning
/// angle (degrees) over normalized arc length. It is 0 on [0, s_0) and takes
/// breakpoints[k].cumulative_angle on [s_k, s_{k+1}).
struct TurningFunction {
  std::vector<TurningBreakpoint> breakpoints;
  double total_perimeter = 0.0;

  double value_at(double s) const;

  friend bool operator==(const TurningFunction&, const TurningFunction&) = default;
};

TurningFunction compute_turning_function(const Boundary& b);

/// L2 norm of the difference of two step functions over [0, 1].
double turning_distance(const TurningFunction& a, const TurningFunction& b);

/// Unit vector from the bounding-box center to the door center, y up.
/// Throws Error(DegenerateDirection) when the two centers coincide.
Point door_direction(const Boundary& b);

/// Rotates by k * 90 degrees clockwise about the grid center ((res-1)/2, (res-1)/2).
Point rotate_point(Point p, int k, int resolution);
Boundary rotate_boundary(const Boundary& b, int k);

struct BoundaryRaster {
  Mask inside;
  Mask boundary;
  Mask door;
};

/// A pixel is inside iff its center is strictly inside the polygon; boundary
/// pixels are inside pixels whose center lies within half a pixel of an edge.
BoundaryRaster rasterize_boundary(const Boundary& b);

/// Fills a clockwise-or-not set of rings with the even-odd rule, using pixel centers.
Mask rasterize_rings(const std::vector<Ring>& rings, int width, int height);

/// Traces the outline of every 4-connected component of the selected pixels.
/// Outer rings come out clockwise, holes counter-clockwise, vertices at pixel
/// corners with collinear points removed.
std::vector<Ring> trace_region(int width, int height,
                               const std::function<bool(int, int)>& selected);

/// Rotates a grid by k * 90 degrees clockwise (square grids only).
template <typename T>
Grid<T> rotate_grid(const Grid<T>& g, int k) {
  k = ((k % 4) + 4) % 4;
  Grid<T> out = g;
  for (int step = 0; step < k; ++step) {
    Grid<T> next(out.height(), out.width());
    for (int y = 0; y < out.height(); ++y)
      for (int x = 0; x < out.width(); ++x)
        next.at(out.height() - 1 - y, x) = out.at(x, y);
    out = std::move(next);
  }
  return out;
}

}  // namespace floorgraph
