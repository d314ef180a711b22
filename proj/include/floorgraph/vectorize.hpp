#pragma once

#include <string>
#include <vector>

#include "floorgraph/compose.hpp"
#include "floorgraph/geometry.hpp"
#include "floorgraph/layout_graph.hpp"
#include "floorgraph/room_box.hpp"

namespace floorgraph {

struct AlignConfig {
  /// Snap threshold in pixels; edges closer than this are aligned.
  double tau = 6.0;
  double min_box_side = 2.0;
};

/// Which box edges have already been aligned and must not move again.
struct EdgeFlags {
  bool left = false;
  bool top = false;
  bool right = false;
  bool bottom = false;

  friend bool operator==(const EdgeFlags&, const EdgeFlags&) = default;
};

struct AlignedBox {
  RoomBox box;
  EdgeFlags fixed;
};

std::vector<AlignedBox> snap_to_boundary(const std::vector<RoomBox>& boxes, const Boundary& b,
                                         const AlignConfig& cfg = {});

/// Aligns facing (and nearly collinear side) edges of rooms joined by a graph
/// edge. Edges are visited in ascending (src, dst) order; an edge already
/// aligned stays put and the partner moves to it, otherwise both meet halfway.
std::vector<AlignedBox> snap_adjacent(std::vector<AlignedBox> boxes, const LayoutGraph& g,
                                      const AlignConfig& cfg = {});

/// Boundary snap followed by adjacency snap.
std::vector<RoomBox> align_rooms(const std::vector<RoomBox>& boxes, const LayoutGraph& g,
                                 const Boundary& b, const AlignConfig& cfg = {});

std::vector<RoomBox> strip_flags(const std::vector<AlignedBox>& boxes);

struct RoomRegion {
  int room_id = 0;
  RoomType type = RoomType::LivingRoom;
  /// Outer rings clockwise, holes counter-clockwise.
  std::vector<Ring> rings;

  friend bool operator==(const RoomRegion&, const RoomRegion&) = default;
};

struct Door {
  Segment segment;
  int room_a = 0;
  int room_b = 0;

  friend bool operator==(const Door&, const Door&) = default;
};

struct Window {
  Segment segment;
  int room_id = 0;

  friend bool operator==(const Window&, const Window&) = default;
};

struct UnsatisfiedAdjacency {
  int room_a = 0;
  int room_b = 0;

  friend bool operator==(const UnsatisfiedAdjacency&, const UnsatisfiedAdjacency&) = default;
};

struct VectorFloorplan {
  std::vector<RoomRegion> rooms;
  std::vector<Door> doors;
  std::vector<Window> windows;
  Boundary boundary;
  std::vector<UnsatisfiedAdjacency> unsatisfied;
  std::vector<int> dropped_rooms;

  friend bool operator==(const VectorFloorplan&, const VectorFloorplan&) = default;
};

/// Traces every room label of a resolved raster into rectilinear rings.
/// Rooms without pixels are listed in dropped_rooms.
VectorFloorplan clip_and_polygonize(const FloorplanRaster& raster, const LayoutGraph& g,
                                    const Boundary& b);

struct OpeningConfig {
  double door_width = 4.0;
  double window_min_segment = 6.0;
  double window_max_length = 12.0;
};

/// A maximal straight wall piece shared by two rooms, or by a room and the outside.
struct WallSegment {
  Segment segment;
  int room_a = 0;
  int room_b = -1;  // -1 for exterior walls
};

/// All maximal shared and exterior wall segments of a vector floorplan.
std::vector<WallSegment> wall_segments(const VectorFloorplan& vf);

VectorFloorplan place_doors_windows(VectorFloorplan vf, const LayoutGraph& g,
                                    const OpeningConfig& cfg = {});

/// Per-pixel room labels of a vector floorplan (kExterior outside every room).
FloorplanRaster rasterize_floorplan(const VectorFloorplan& vf);

enum class ExportFormat { Json, Svg };

std::string export_floorplan(const VectorFloorplan& vf, ExportFormat format);
VectorFloorplan import_floorplan_json(const std::string& text);

}  // namespace floorgraph
