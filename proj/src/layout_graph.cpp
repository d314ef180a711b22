#include "floorgraph/layout_graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "floorgraph/error.hpp"
#include "floorgraph/room_box.hpp"

namespace floorgraph {

namespace {

constexpr std::array<std::string_view, kRoomTypeCount> kRoomNames{
    "LivingRoom", "MasterRoom", "SecondRoom", "GuestRoom", "ChildRoom", "StudyRoom", "DiningRoom",
    "Bathroom",   "Kitchen",    "Balcony",    "Storage",   "WallIn",    "Entrance"};

constexpr std::array<std::string_view, kRelationTypeCount> kRelationNames{
    "LeftOf",     "RightOf",   "Above",      "Below",  "LeftAbove",
    "RightAbove", "LeftBelow", "RightBelow", "Inside", "Outside"};

}  // namespace

const RoomBox* find_box(const std::vector<RoomBox>& boxes, int room_id) {
  auto it = std::find_if(boxes.begin(), boxes.end(), [&](const RoomBox& b) { return b.room_id == room_id; });
  return it == boxes.end() ? nullptr : &*it;
}

std::string_view to_string(RoomType t) { return kRoomNames[static_cast<std::size_t>(t)]; }

std::optional<RoomType> parse_room_type(std::string_view name) {
  for (std::size_t i = 0; i < kRoomNames.size(); ++i) {
    if (kRoomNames[i] == name) return static_cast<RoomType>(i);
  }
  return std::nullopt;
}

bool is_bedroom(RoomType t) {
  switch (t) {
    case RoomType::MasterRoom:
    case RoomType::SecondRoom:
    case RoomType::GuestRoom:
    case RoomType::ChildRoom:
    case RoomType::StudyRoom:
      return true;
    default:
      return false;
  }
}

std::string_view to_string(RelationType r) { return kRelationNames[static_cast<std::size_t>(r)]; }

std::optional<RelationType> parse_relation(std::string_view name) {
  for (std::size_t i = 0; i < kRelationNames.size(); ++i) {
    if (kRelationNames[i] == name) return static_cast<RelationType>(i);
  }
  return std::nullopt;
}

RelationType inverse(RelationType r) {
  switch (r) {
    case RelationType::LeftOf: return RelationType::RightOf;
    case RelationType::RightOf: return RelationType::LeftOf;
    case RelationType::Above: return RelationType::Below;
    case RelationType::Below: return RelationType::Above;
    case RelationType::LeftAbove: return RelationType::RightBelow;
    case RelationType::RightBelow: return RelationType::LeftAbove;
    case RelationType::RightAbove: return RelationType::LeftBelow;
    case RelationType::LeftBelow: return RelationType::RightAbove;
    case RelationType::Inside: return RelationType::Outside;
    case RelationType::Outside: return RelationType::Inside;
  }
  return r;
}

RelationType rotate_relation(RelationType r, int k) {
  k = ((k % 4) + 4) % 4;
  for (int step = 0; step < k; ++step) {
    switch (r) {
      case RelationType::LeftOf: r = RelationType::Above; break;
      case RelationType::Above: r = RelationType::RightOf; break;
      case RelationType::RightOf: r = RelationType::Below; break;
      case RelationType::Below: r = RelationType::LeftOf; break;
      case RelationType::LeftAbove: r = RelationType::RightAbove; break;
      case RelationType::RightAbove: r = RelationType::RightBelow; break;
      case RelationType::RightBelow: r = RelationType::LeftBelow; break;
      case RelationType::LeftBelow: r = RelationType::LeftAbove; break;
      case RelationType::Inside:
      case RelationType::Outside: break;
    }
  }
  return r;
}

RelationType relation_from_offset(double dx, double dy, int src_id, int dst_id) {
  // tan(22.5 deg); strict comparisons on magnitudes keep f(-v) = inverse(f(v)).
  static const double kTan = std::sqrt(2.0) - 1.0;
  if (dx == 0.0 && dy == 0.0) {
    return src_id < dst_id ? RelationType::LeftOf : RelationType::RightOf;
  }
  const double ax = std::abs(dx);
  const double ay = std::abs(dy);
  if (ay < kTan * ax) return dx < 0 ? RelationType::LeftOf : RelationType::RightOf;
  if (ax < kTan * ay) return dy < 0 ? RelationType::Above : RelationType::Below;
  if (dx < 0) return dy < 0 ? RelationType::LeftAbove : RelationType::LeftBelow;
  return dy < 0 ? RelationType::RightAbove : RelationType::RightBelow;
}

GridCell cell_of(Point p, const Rect& bbox) {
  auto index = [](double v, double lo, double extent) {
    if (extent <= 0) return 0;
    const int i = static_cast<int>(std::floor((v - lo) / extent * kGridSize));
    return std::clamp(i, 0, kGridSize - 1);
  };
  return {index(p.y, bbox.y0, bbox.height()), index(p.x, bbox.x0, bbox.width())};
}

Rect cell_rect(GridCell cell, const Rect& bbox) {
  const double cw = bbox.width() / kGridSize;
  const double ch = bbox.height() / kGridSize;
  return {bbox.x0 + cell.col * cw, bbox.y0 + cell.row * ch, bbox.x0 + (cell.col + 1) * cw,
          bbox.y0 + (cell.row + 1) * ch};
}

GridCell rotate_cell(GridCell cell, int k) {
  k = ((k % 4) + 4) % 4;
  for (int step = 0; step < k; ++step) cell = {cell.col, kGridSize - 1 - cell.row};
  return cell;
}

int size_bin_for(double size_ratio) {
  const int bin = static_cast<int>(std::floor(size_ratio / (0.5 / kSizeBins)));
  return std::clamp(bin, 0, kSizeBins - 1);
}

const RoomNode* LayoutGraph::find_node(int id) const {
  auto it = std::find_if(nodes.begin(), nodes.end(), [&](const RoomNode& n) { return n.id == id; });
  return it == nodes.end() ? nullptr : &*it;
}

RoomNode* LayoutGraph::find_node(int id) {
  auto it = std::find_if(nodes.begin(), nodes.end(), [&](const RoomNode& n) { return n.id == id; });
  return it == nodes.end() ? nullptr : &*it;
}

const GraphEdge* LayoutGraph::find_edge(int a, int b) const {
  auto it = std::find_if(edges.begin(), edges.end(), [&](const GraphEdge& e) {
    return (e.src == a && e.dst == b) || (e.src == b && e.dst == a);
  });
  return it == edges.end() ? nullptr : &*it;
}

int LayoutGraph::next_node_id() const {
  int id = 0;
  for (const RoomNode& n : nodes) id = std::max(id, n.id + 1);
  return id;
}

void LayoutGraph::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidGraph, "invalid layout graph: " + what); };
  std::set<int> ids;
  for (const RoomNode& n : nodes) {
    if (!ids.insert(n.id).second) fail("duplicate node id " + std::to_string(n.id));
    if (!n.cell.valid()) fail("grid cell outside the 5x5 grid for node " + std::to_string(n.id));
  }
  std::set<std::pair<int, int>> pairs;
  for (const GraphEdge& e : edges) {
    if (!ids.count(e.src) || !ids.count(e.dst)) fail("edge references a missing node");
    if (e.src == e.dst) fail("self edge on node " + std::to_string(e.src));
    if (!pairs.insert({std::min(e.src, e.dst), std::max(e.src, e.dst)}).second)
      fail("more than one edge between " + std::to_string(e.src) + " and " + std::to_string(e.dst));
  }
}

}  // namespace floorgraph
