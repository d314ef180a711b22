#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "floorgraph/geometry.hpp"

namespace floorgraph {

enum class RoomType {
  LivingRoom,
  MasterRoom,
  SecondRoom,
  GuestRoom,
  ChildRoom,
  StudyRoom,
  DiningRoom,
  Bathroom,
  Kitchen,
  Balcony,
  Storage,
  WallIn,
  Entrance,
};
inline constexpr std::size_t kRoomTypeCount = 13;

std::string_view to_string(RoomType t);
std::optional<RoomType> parse_room_type(std::string_view name);
bool is_bedroom(RoomType t);

/// Spatial relation of an edge's source room relative to its destination room.
enum class RelationType {
  LeftOf,
  RightOf,
  Above,
  Below,
  LeftAbove,
  RightAbove,
  LeftBelow,
  RightBelow,
  Inside,
  Outside,
};
inline constexpr std::size_t kRelationTypeCount = 10;

std::string_view to_string(RelationType r);
std::optional<RelationType> parse_relation(std::string_view name);
RelationType inverse(RelationType r);
/// Relation seen after rotating the plan k * 90 degrees clockwise.
RelationType rotate_relation(RelationType r, int k);

/// Octant relation of `src` relative to `dst` from a center offset
/// (dx = src.x - dst.x, dy = src.y - dst.y, raster y down). Sectors are 45
/// degrees wide and centered on the axes and diagonals. A zero offset falls
/// back to LeftOf/RightOf by id so the result stays antisymmetric.
RelationType relation_from_offset(double dx, double dy, int src_id, int dst_id);

inline constexpr int kGridSize = 5;
inline constexpr int kSizeBins = 10;

struct GridCell {
  int row = 0;
  int col = 0;

  bool valid() const { return row >= 0 && col >= 0 && row < kGridSize && col < kGridSize; }
  friend bool operator==(const GridCell&, const GridCell&) = default;
  friend auto operator<=>(const GridCell&, const GridCell&) = default;
};

/// Cell of the 5x5 grid laid over `bbox` that contains `p` (clamped to the grid).
GridCell cell_of(Point p, const Rect& bbox);
/// Pixel-space rectangle of a cell within `bbox`.
Rect cell_rect(GridCell cell, const Rect& bbox);
GridCell rotate_cell(GridCell cell, int k);

/// Uniform bins over [0, 0.5]; larger ratios land in the last bin.
int size_bin_for(double size_ratio);

struct RoomNode {
  int id = 0;
  RoomType type = RoomType::LivingRoom;
  GridCell cell;
  double size_ratio = 0.0;
  int size_bin = 0;

  friend bool operator==(const RoomNode&, const RoomNode&) = default;
};

struct GraphEdge {
  int src = 0;
  int dst = 0;
  RelationType rel = RelationType::LeftOf;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

struct LayoutGraph {
  std::vector<RoomNode> nodes;
  std::vector<GraphEdge> edges;

  const RoomNode* find_node(int id) const;
  RoomNode* find_node(int id);
  /// Edge between a and b in either orientation.
  const GraphEdge* find_edge(int a, int b) const;
  int next_node_id() const;

  /// Throws Error(InvalidGraph) when ids repeat, edges dangle, self-loop,
  /// or an unordered pair carries more than one edge.
  void validate() const;

  friend bool operator==(const LayoutGraph&, const LayoutGraph&) = default;
};

}  // namespace floorgraph
