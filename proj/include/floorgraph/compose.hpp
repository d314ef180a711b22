#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "floorgraph/geometry.hpp"
#include "floorgraph/layout_graph.hpp"
#include "floorgraph/room_box.hpp"

namespace floorgraph {

inline constexpr int kEmpty = -1;
inline constexpr int kExterior = -2;

/// Per-pixel room ids, or kEmpty / kExterior.
struct FloorplanRaster {
  Grid<int> labels;

  int resolution() const { return labels.width(); }
};

/// Pixel-index rectangle [x0, x1) x [y0, y1).
struct PixelRegion {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  int area() const { return (x1 > x0 && y1 > y0) ? (x1 - x0) * (y1 - y0) : 0; }
  friend bool operator==(const PixelRegion&, const PixelRegion&) = default;
};

/// Pixels whose centers lie strictly inside the box, clipped to the grid.
PixelRegion pixel_region(const RoomBox& b, int resolution);

struct OverlapPair {
  std::size_t i = 0;  // indices into the box list, i < j
  std::size_t j = 0;
  PixelRegion region;
};

/// Every unordered pair of boxes with a positive-area intersection.
std::vector<OverlapPair> overlap_pairs(const std::vector<RoomBox>& boxes, int resolution);

/// Directed edge `later -> earlier`: `earlier` is drawn before `later`.
struct OrderEdge {
  int later = 0;
  int earlier = 0;

  friend bool operator==(const OrderEdge&, const OrderEdge&) = default;
};

struct OrderGraph {
  std::vector<int> nodes;
  std::vector<OrderEdge> edges;
};

/// Votes on the overlap region of a pair: the room owning fewer reference
/// pixels there is drawn first; equal counts put the larger box first, then
/// the lower id.
OrderEdge vote_order(const RoomBox& a, const RoomBox& b, const PixelRegion& region,
                     const FloorplanRaster& reference);

/// Paints boxes onto an empty raster in the given order, clipped to the interior.
FloorplanRaster paint_boxes(const std::vector<RoomBox>& boxes, const std::vector<int>& order,
                            const Mask& inside);

/// Reference raster for voting: boxes painted from the largest to the smallest.
FloorplanRaster reference_raster(const std::vector<RoomBox>& boxes, const Mask& inside);

OrderGraph build_order_graph(const std::vector<RoomBox>& boxes, const FloorplanRaster& reference);

/// Drawing sequence (first drawn first). Nodes with no undrawn predecessor
/// are taken lowest id first; cycles are broken at the lowest-id node of
/// minimal outdegree.
std::vector<int> drawing_order(const OrderGraph& og);

/// Painter's algorithm in `order`, clipped to the interior; interior pixels
/// left empty go to the box with the smallest d_in (lowest id on ties).
FloorplanRaster resolve(const std::vector<RoomBox>& boxes, const std::vector<int>& order,
                        const Boundary& b);

/// Indexed PNG with one palette entry per room type plus exterior and empty.
void write_raster_png(const FloorplanRaster& raster, const LayoutGraph& g,
                      const std::filesystem::path& path);

/// RGB color of a room type, as "#rrggbb".
const char* room_color(RoomType t);

}  // namespace floorgraph
