#pragma once

// Box layout by direct minimization of a geometric loss.
//
// Each loss term is a grid average of squared point-to-box distances. Box
// membership of a pixel is weighted by the area of the pixel square covered
// by the box, and the distance is measured from the centroid of that covered
// part. For boxes with integer edges this is the plain pixel-center rule; for
// fractional edges it makes every term piecewise smooth in (x, y, w, h).

#include <cstdint>
#include <functional>
#include <vector>

#include "floorgraph/geometry.hpp"
#include "floorgraph/layout_graph.hpp"
#include "floorgraph/room_box.hpp"

namespace floorgraph {

/// Euclidean distance from p to the closed box; 0 inside or on it.
double d_in(Point p, const Rect& box);
/// Distance from p to the nearest side when p is strictly inside, else 0.
double d_out(Point p, const Rect& box);

/// Boundary data every loss evaluation needs, precomputed once.
struct LossContext {
  int resolution = 0;
  Mask inside;
  /// Pixel centers of the interior, row-major.
  std::vector<Point> interior_centers;
  /// Bounding box of the boundary polygon.
  Rect bbox;

  static LossContext from_boundary(const Boundary& b);
};

/// Partial derivatives of a scalar with respect to one box's (x, y, w, h).
struct BoxGradient {
  double dx = 0.0;
  double dy = 0.0;
  double dw = 0.0;
  double dh = 0.0;
};

// Every term accepts an optional gradient buffer; when given it is resized to
// boxes.size() and overwritten.
double loss_coverage(const std::vector<RoomBox>& boxes, const LossContext& ctx,
                     std::vector<BoxGradient>* grad = nullptr);
double loss_interior(const std::vector<RoomBox>& boxes, const LossContext& ctx,
                     std::vector<BoxGradient>* grad = nullptr);
double loss_mutex(const std::vector<RoomBox>& boxes, const LossContext& ctx,
                  std::vector<BoxGradient>* grad = nullptr);
/// Throws Error(InvalidArgument) when priors and boxes differ in length.
double loss_match(const std::vector<RoomBox>& boxes, const std::vector<RoomBox>& priors,
                  const LossContext& ctx, std::vector<BoxGradient>* grad = nullptr);

struct LossWeights {
  double coverage = 1.0;
  double interior = 1.0;
  double mutex = 1.0;
  double match = 1.0;
};

/// Weighted term values; total is their weighted sum.
struct LossBreakdown {
  double coverage = 0.0;
  double interior = 0.0;
  double mutex = 0.0;
  double match = 0.0;
  double total = 0.0;
};

LossBreakdown evaluate_loss(const std::vector<RoomBox>& boxes, const std::vector<RoomBox>& priors,
                            const LossContext& ctx, const LossWeights& weights = {},
                            std::vector<BoxGradient>* grad = nullptr);

struct SolverConfig {
  int grid_resolution = kDefaultResolution;
  int max_iters = 300;
  double step_size = 50.0;
  double step_decay = 0.5;
  double step_growth = 1.5;
  double min_box_side = 2.0;
  std::uint64_t seed = 0;
  LossWeights weights;
};

/// One box per node, centered on its grid cell with side
/// sqrt(size_ratio * interior area).
std::vector<RoomBox> init_boxes(const LayoutGraph& g, const Boundary& b, double min_box_side = 2.0);

struct SolveResult {
  std::vector<RoomBox> boxes;
  /// Loss at the start and after every accepted step.
  std::vector<LossBreakdown> trace;
  int iterations = 0;
};

/// Projected gradient descent from init_boxes(g, b). priors must be
/// id-aligned with g.nodes. Throws Error(NonFiniteLoss).
SolveResult solve(const LayoutGraph& g, const Boundary& b, const std::vector<RoomBox>& priors,
                  const SolverConfig& cfg = {});
/// Same, from explicit starting boxes.
SolveResult solve(const LayoutGraph& g, const Boundary& b, const std::vector<RoomBox>& priors,
                  std::vector<RoomBox> initial, const SolverConfig& cfg);

/// Loss with analytic gradient, as used by gradient_check.
using LossFunction = std::function<double(const std::vector<RoomBox>&, std::vector<BoxGradient>*)>;

struct GradientCheckReport {
  double max_relative_error = 0.0;
  int checked = 0;
  int skipped = 0;
};

/// Compares analytic partials against central differences. A partial is
/// skipped when a moved edge sits within `margin` of an integer or
/// half-integer coordinate, or when forward and backward differences
/// disagree (a kink inside the stencil). Differences below the round-off
/// level of the difference quotient do not count as error.
GradientCheckReport gradient_check(const LossFunction& loss, const std::vector<RoomBox>& boxes,
                                   double epsilon = 1e-6, double margin = 1e-3);

}  // namespace floorgraph
