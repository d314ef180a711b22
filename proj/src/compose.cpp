#include "floorgraph/compose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "floorgraph/error.hpp"
#include "floorgraph/png_io.hpp"
#include "floorgraph/solver.hpp"

namespace floorgraph {

PixelRegion pixel_region(const RoomBox& b, int resolution) {
  // Pixel i is in when l < i + 0.5 < r.
  auto first = [](double lo) { return static_cast<int>(std::floor(lo - 0.5)) + 1; };
  auto last = [](double hi) { return static_cast<int>(std::ceil(hi - 0.5)); };
  PixelRegion r{first(b.left()), first(b.top()), last(b.right()), last(b.bottom())};
  r.x0 = std::clamp(r.x0, 0, resolution);
  r.y0 = std::clamp(r.y0, 0, resolution);
  r.x1 = std::clamp(r.x1, r.x0, resolution);
  r.y1 = std::clamp(r.y1, r.y0, resolution);
  return r;
}

std::vector<OverlapPair> overlap_pairs(const std::vector<RoomBox>& boxes, int resolution) {
  std::vector<OverlapPair> out;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (std::size_t j = i + 1; j < boxes.size(); ++j) {
      if (overlap_area(boxes[i].rect(), boxes[j].rect()) <= 0) continue;
      const PixelRegion a = pixel_region(boxes[i], resolution);
      const PixelRegion b = pixel_region(boxes[j], resolution);
      PixelRegion r{std::max(a.x0, b.x0), std::max(a.y0, b.y0), std::min(a.x1, b.x1), std::min(a.y1, b.y1)};
      r.x1 = std::max(r.x1, r.x0);
      r.y1 = std::max(r.y1, r.y0);
      out.push_back({i, j, r});
    }
  }
  return out;
}

OrderEdge vote_order(const RoomBox& a, const RoomBox& b, const PixelRegion& region, const FloorplanRaster& reference) {
  int count_a = 0, count_b = 0;
  for (int y = region.y0; y < region.y1; ++y) {
    for (int x = region.x0; x < region.x1; ++x) {
      const int label = reference.labels.at(x, y);
      if (label == a.room_id) ++count_a;
      else if (label == b.room_id) ++count_b;
    }
  }
  bool a_first;
  if (count_a != count_b) a_first = count_a < count_b;
  else if (a.area() != b.area()) a_first = a.area() > b.area();
  else a_first = a.room_id < b.room_id;
  return a_first ? OrderEdge{b.room_id, a.room_id} : OrderEdge{a.room_id, b.room_id};
}

FloorplanRaster paint_boxes(const std::vector<RoomBox>& boxes, const std::vector<int>& order, const Mask& inside) {
  FloorplanRaster r{Grid<int>(inside.width(), inside.height(), kExterior)};
  for (int y = 0; y < inside.height(); ++y)
    for (int x = 0; x < inside.width(); ++x)
      if (inside.at(x, y)) r.labels.at(x, y) = kEmpty;
  for (int id : order) {
    const RoomBox* b = find_box(boxes, id);
    if (!b) throw Error(ErrorCode::InvalidArgument, "paint order names unknown room " + std::to_string(id));
    const PixelRegion p = pixel_region(*b, inside.width());
    for (int y = p.y0; y < p.y1; ++y)
      for (int x = p.x0; x < p.x1; ++x)
        if (inside.at(x, y)) r.labels.at(x, y) = id;
  }
  return r;
}

FloorplanRaster reference_raster(const std::vector<RoomBox>& boxes, const Mask& inside) {
  std::vector<const RoomBox*> sorted;
  for (const RoomBox& b : boxes) sorted.push_back(&b);
  std::stable_sort(sorted.begin(), sorted.end(), [](const RoomBox* a, const RoomBox* b) {
    if (a->area() != b->area()) return a->area() > b->area();
    return a->room_id < b->room_id;
  });
  std::vector<int> order;
  for (const RoomBox* b : sorted) order.push_back(b->room_id);
  return paint_boxes(boxes, order, inside);
}

OrderGraph build_order_graph(const std::vector<RoomBox>& boxes, const FloorplanRaster& reference) {
  OrderGraph og;
  for (const RoomBox& b : boxes) og.nodes.push_back(b.room_id);
  for (const OverlapPair& p : overlap_pairs(boxes, reference.resolution())) {
    og.edges.push_back(vote_order(boxes[p.i], boxes[p.j], p.region, reference));
  }
  return og;
}

std::vector<int> drawing_order(const OrderGraph& og) {
  std::vector<int> remaining = og.nodes;
  std::sort(remaining.begin(), remaining.end());
  remaining.erase(std::unique(remaining.begin(), remaining.end()), remaining.end());
  std::vector<OrderEdge> edges = og.edges;
  std::vector<int> order;
  while (!remaining.empty()) {
    std::map<int, int> outdeg;
    for (int n : remaining) outdeg[n] = 0;
    for (const OrderEdge& e : edges) {
      if (outdeg.count(e.later) && outdeg.count(e.earlier)) ++outdeg[e.later];
    }
    // remaining is sorted, so the first minimum is the lowest id.
    int pick = remaining.front();
    for (int n : remaining) {
      if (outdeg[n] < outdeg[pick]) pick = n;
    }
    order.push_back(pick);
    std::erase(remaining, pick);
    std::erase_if(edges, [&](const OrderEdge& e) { return e.earlier == pick || e.later == pick; });
  }
  return order;
}

FloorplanRaster resolve(const std::vector<RoomBox>& boxes, const std::vector<int>& order, const Boundary& b) {
  if (boxes.empty()) throw Error(ErrorCode::InvalidArgument, "resolve: no boxes");
  const Mask inside = rasterize_boundary(b).inside;
  FloorplanRaster r = paint_boxes(boxes, order, inside);

  std::vector<const RoomBox*> by_id;
  for (const RoomBox& box : boxes) by_id.push_back(&box);
  std::sort(by_id.begin(), by_id.end(), [](const RoomBox* a, const RoomBox* c) { return a->room_id < c->room_id; });
  for (int y = 0; y < inside.height(); ++y) {
    for (int x = 0; x < inside.width(); ++x) {
      if (r.labels.at(x, y) != kEmpty) continue;
      const Point c{x + 0.5, y + 0.5};
      double best = std::numeric_limits<double>::infinity();
      int label = by_id.front()->room_id;
      for (const RoomBox* box : by_id) {
        const double d = d_in(c, box->rect());
        if (d < best) {
          best = d;
          label = box->room_id;
        }
      }
      r.labels.at(x, y) = label;
    }
  }
  return r;
}

const char* room_color(RoomType t) {
  switch (t) {
    case RoomType::LivingRoom: return "#eed5a4";
    case RoomType::MasterRoom: return "#f7bc71";
    case RoomType::SecondRoom: return "#f29b76";
    case RoomType::GuestRoom: return "#e88d8d";
    case RoomType::ChildRoom: return "#d9a0c4";
    case RoomType::StudyRoom: return "#b39ddb";
    case RoomType::DiningRoom: return "#f2d675";
    case RoomType::Bathroom: return "#8fc9e8";
    case RoomType::Kitchen: return "#a4d6a0";
    case RoomType::Balcony: return "#c6e08a";
    case RoomType::Storage: return "#b7b0a2";
    case RoomType::WallIn: return "#9e9e9e";
    case RoomType::Entrance: return "#d7ccc8";
  }
  return "#000000";
}

void write_raster_png(const FloorplanRaster& raster, const LayoutGraph& g, const std::filesystem::path& path) {
  // Palette: one entry per room type, then exterior (white) and empty (black).
  std::vector<std::array<std::uint8_t, 3>> palette;
  for (std::size_t t = 0; t < kRoomTypeCount; ++t) {
    const unsigned v = static_cast<unsigned>(std::stoul(room_color(static_cast<RoomType>(t)) + 1, nullptr, 16));
    palette.push_back({static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 8),
                       static_cast<std::uint8_t>(v)});
  }
  const auto exterior_index = static_cast<std::uint8_t>(palette.size());
  palette.push_back({255, 255, 255});
  const auto empty_index = static_cast<std::uint8_t>(palette.size());
  palette.push_back({0, 0, 0});

  Grid<std::uint8_t> indices(raster.labels.width(), raster.labels.height(), exterior_index);
  for (int y = 0; y < indices.height(); ++y) {
    for (int x = 0; x < indices.width(); ++x) {
      const int label = raster.labels.at(x, y);
      if (label == kExterior) continue;
      const RoomNode* n = label >= 0 ? g.find_node(label) : nullptr;
      indices.at(x, y) = n ? static_cast<std::uint8_t>(n->type) : empty_index;
    }
  }
  write_indexed_png(indices, palette, path);
}

}  // namespace floorgraph
