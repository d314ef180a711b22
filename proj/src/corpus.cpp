#include "floorgraph/corpus.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <string>

#include "floorgraph/error.hpp"
#include "floorgraph/vectorize.hpp"

namespace floorgraph {

void FloorplanRecord::validate() const {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::InvalidGraph, "record " + std::to_string(id) + ": " + what);
  };
  graph.validate();
  if (gt_boxes.size() != graph.nodes.size()) fail("gt_boxes and nodes differ in length");
  const Mask inside = rasterize_boundary(boundary).inside;
  for (std::size_t i = 0; i < gt_boxes.size(); ++i) {
    if (gt_boxes[i].room_id != graph.nodes[i].id) fail("gt_boxes not aligned with node ids");
    const PixelRegion r = pixel_region(gt_boxes[i], boundary.resolution());
    bool hit = false;
    for (int y = r.y0; y < r.y1 && !hit; ++y)
      for (int x = r.x0; x < r.x1 && !hit; ++x) hit = inside.at(x, y) != 0;
    if (!hit) fail("gt box " + std::to_string(i) + " misses the boundary interior");
  }
}

std::optional<double> facing_gap(const Rect& a, const Rect& b) {
  const double ox = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
  const double oy = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
  if (ox > 0 && oy > 0) return 0.0;
  if (ox > 0) return -oy;
  if (oy > 0) return -ox;
  return std::nullopt;
}

RelationType relation_between(const RoomBox& a, const RoomBox& b, double containment) {
  const double inter = overlap_area(a.rect(), b.rect());
  const bool a_in_b = a.area() > 0 && inter >= containment * a.area();
  const bool b_in_a = b.area() > 0 && inter >= containment * b.area();
  if (a_in_b && !b_in_a) return RelationType::Inside;
  if (b_in_a && !a_in_b) return RelationType::Outside;
  return relation_from_offset(a.x - b.x, a.y - b.y, a.room_id, b.room_id);
}

namespace {

// Index of the first box containing p, or -1.
int box_at(const std::vector<RoomBox>& boxes, Point p) {
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    if (boxes[i].rect().contains(p)) return static_cast<int>(i);
  }
  return -1;
}

// Walks away from the door on both sides until a room box is found.
std::optional<std::pair<int, int>> rooms_across(const Segment& door, const std::vector<RoomBox>& boxes) {
  const Point m = door.midpoint();
  const bool horizontal = door.horizontal();
  int side[2] = {-1, -1};
  for (int s = 0; s < 2; ++s) {
    const double sign = s == 0 ? -1.0 : 1.0;
    for (int k = 0; k < 5 && side[s] < 0; ++k) {
      const double off = sign * (k + 0.5);
      const Point probe = horizontal ? Point{m.x, m.y + off} : Point{m.x + off, m.y};
      side[s] = box_at(boxes, probe);
    }
  }
  if (side[0] < 0 || side[1] < 0 || side[0] == side[1]) return std::nullopt;
  return std::make_pair(std::min(side[0], side[1]), std::max(side[0], side[1]));
}

}  // namespace

LayoutGraph extract_layout_graph(const FloorplanRecord& record, const std::vector<Segment>& door_segments,
                                 const ExtractionConfig& cfg) {
  const auto& boxes = record.gt_boxes;
  LayoutGraph g;
  g.nodes = record.graph.nodes;
  if (boxes.size() != g.nodes.size()) {
    throw Error(ErrorCode::InvalidGraph, "extract_layout_graph: one box per node required");
  }

  std::set<std::pair<int, int>> pairs;
  for (const Segment& door : door_segments) {
    if (auto p = rooms_across(door, boxes)) pairs.insert(*p);
  }
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (std::size_t j = i + 1; j < boxes.size(); ++j) {
      const auto gap = facing_gap(boxes[i].rect(), boxes[j].rect());
      if (!gap) continue;
      const RoomBox& smaller = boxes[i].area() <= boxes[j].area() ? boxes[i] : boxes[j];
      const double threshold = std::max(cfg.min_gap_px, cfg.gap_fraction * std::min(smaller.w, smaller.h));
      if (*gap <= threshold) pairs.insert({static_cast<int>(i), static_cast<int>(j)});
    }
  }

  std::mt19937_64 rng(cfg.seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(record.id + 1)));
  std::bernoulli_distribution coin(0.5);
  for (const auto& [i, j] : pairs) {
    const bool flip = coin(rng);
    const RoomBox& src = flip ? boxes[static_cast<std::size_t>(j)] : boxes[static_cast<std::size_t>(i)];
    const RoomBox& dst = flip ? boxes[static_cast<std::size_t>(i)] : boxes[static_cast<std::size_t>(j)];
    const int src_id = g.nodes[static_cast<std::size_t>(flip ? j : i)].id;
    const int dst_id = g.nodes[static_cast<std::size_t>(flip ? i : j)].id;
    g.edges.push_back({src_id, dst_id, relation_between(src, dst, cfg.containment)});
  }
  return g;
}

namespace {

[[noreturn]] void format_error(const std::string& what) {
  throw Error(ErrorCode::Format, "raster floorplan: " + what);
}

Segment front_door_from_pixels(const LabelImage& img, const Mask& inside) {
  int x0 = img.width, y0 = img.height, x1 = -1, y1 = -1;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      if (img.at(x, y)[1] != kFrontDoorMark) continue;
      x0 = std::min(x0, x);
      y0 = std::min(y0, y);
      x1 = std::max(x1, x);
      y1 = std::max(y1, y);
    }
  }
  if (x1 < 0) format_error("no front door pixels in the boundary channel");

  auto outside = [&](int x, int y) { return !inside.get_or(x, y, 0); };
  auto all_outside_row = [&](int y) {
    for (int x = x0; x <= x1; ++x)
      if (!outside(x, y)) return false;
    return true;
  };
  auto all_outside_col = [&](int x) {
    for (int y = y0; y <= y1; ++y)
      if (!outside(x, y)) return false;
    return true;
  };
  const double fx0 = x0, fy0 = y0, fx1 = x1 + 1, fy1 = y1 + 1;
  // Prefer the orientation along the longer extent of the door blob.
  const bool horizontal_first = (x1 - x0) >= (y1 - y0);
  for (int pass = 0; pass < 2; ++pass) {
    const bool horizontal = (pass == 0) == horizontal_first;
    if (horizontal) {
      if (all_outside_row(y0 - 1)) return {{fx0, fy0}, {fx1, fy0}};
      if (all_outside_row(y1 + 1)) return {{fx0, fy1}, {fx1, fy1}};
    } else {
      if (all_outside_col(x0 - 1)) return {{fx0, fy0}, {fx0, fy1}};
      if (all_outside_col(x1 + 1)) return {{fx1, fy0}, {fx1, fy1}};
    }
  }
  format_error("front door does not touch the building outline");
}

std::vector<Segment> interior_doors(const LabelImage& img) {
  Grid<std::uint8_t> seen(img.width, img.height, 0);
  std::vector<Segment> doors;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      if (seen.at(x, y) || img.at(x, y)[2] != kLabelInteriorDoor) continue;
      int x0 = x, y0 = y, x1 = x, y1 = y;
      std::queue<std::pair<int, int>> q;
      q.push({x, y});
      seen.at(x, y) = 1;
      while (!q.empty()) {
        auto [cx, cy] = q.front();
        q.pop();
        x0 = std::min(x0, cx);
        y0 = std::min(y0, cy);
        x1 = std::max(x1, cx);
        y1 = std::max(y1, cy);
        const int nb[4][2] = {{cx + 1, cy}, {cx - 1, cy}, {cx, cy + 1}, {cx, cy - 1}};
        for (const auto& n : nb) {
          if (!seen.in_bounds(n[0], n[1]) || seen.at(n[0], n[1])) continue;
          if (img.at(n[0], n[1])[2] != kLabelInteriorDoor) continue;
          seen.at(n[0], n[1]) = 1;
          q.push({n[0], n[1]});
        }
      }
      const double w = x1 + 1 - x0;
      const double h = y1 + 1 - y0;
      if (w >= h) {
        const double cy = y0 + h / 2;
        doors.push_back({{static_cast<double>(x0), cy}, {static_cast<double>(x1 + 1), cy}});
      } else {
        const double cx = x0 + w / 2;
        doors.push_back({{cx, static_cast<double>(y0)}, {cx, static_cast<double>(y1 + 1)}});
      }
    }
  }
  return doors;
}

}  // namespace

FloorplanRecord import_raster_floorplan(const LabelImage& img, int record_id, const ExtractionConfig& cfg) {
  if (img.width <= 0 || img.width != img.height) format_error("image must be square");
  if (img.pixels.size() != static_cast<std::size_t>(img.width) * img.height) format_error("pixel buffer size");
  const int res = img.width;

  Mask inside(res, res, 0);
  for (int y = 0; y < res; ++y)
    for (int x = 0; x < res; ++x) inside.at(x, y) = img.at(x, y)[0] != 0 ? 1 : 0;

  const auto rings = trace_region(res, res, [&](int x, int y) { return inside.at(x, y) != 0; });
  if (rings.empty()) format_error("empty inside mask");
  if (rings.size() != 1) format_error("boundary is open or encloses holes");
  for (const Point& p : rings.front()) {
    if (p.x >= res || p.y >= res) format_error("building touches the image border");
  }

  FloorplanRecord rec;
  rec.id = record_id;
  try {
    rec.boundary = Boundary::make(rings.front(), front_door_from_pixels(img, inside), res);
  } catch (const Error& e) {
    format_error(e.what());
  }

  struct Instance {
    int label = -1;
    std::size_t pixels = 0;
    int x0 = 1 << 30, y0 = 1 << 30, x1 = -1, y1 = -1;
  };
  std::map<int, Instance> instances;
  for (int y = 0; y < res; ++y) {
    for (int x = 0; x < res; ++x) {
      const auto& px = img.at(x, y);
      if (px[3] == 0) continue;
      Instance& inst = instances[px[3]];
      if (inst.label < 0) {
        inst.label = px[2];
      } else if (inst.label != px[2]) {
        format_error("instance " + std::to_string(px[3]) + " carries more than one label");
      }
      ++inst.pixels;
      inst.x0 = std::min(inst.x0, x);
      inst.y0 = std::min(inst.y0, y);
      inst.x1 = std::max(inst.x1, x);
      inst.y1 = std::max(inst.y1, y);
    }
  }
  if (instances.empty()) format_error("no room instances");

  const double building_area = static_cast<double>(count_set(inside));
  const Rect bbox = rec.boundary.bbox();
  int next_id = 0;
  for (const auto& [index, inst] : instances) {
    if (inst.label < 0 || inst.label >= static_cast<int>(kRoomTypeCount)) {
      format_error("instance " + std::to_string(index) + " has a non-room label");
    }
    const int id = next_id++;
    const RoomBox box = RoomBox::from_edges(inst.x0, inst.y0, inst.x1 + 1, inst.y1 + 1, id);
    RoomNode node;
    node.id = id;
    node.type = static_cast<RoomType>(inst.label);
    node.cell = cell_of(box.center(), bbox);
    node.size_ratio = static_cast<double>(inst.pixels) / building_area;
    node.size_bin = size_bin_for(node.size_ratio);
    rec.graph.nodes.push_back(node);
    rec.gt_boxes.push_back(box);
  }

  rec.graph = extract_layout_graph(rec, interior_doors(img), cfg);
  rec.gt_boxes = align_rooms(rec.gt_boxes, rec.graph, rec.boundary, AlignConfig{cfg.tau, 2.0});
  rec.turning = compute_turning_function(rec.boundary);
  return rec;
}

}  // namespace floorgraph
