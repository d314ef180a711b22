#pragma once

#include <array>
#include <variant>
#include <vector>

#include "floorgraph/corpus.hpp"
#include "floorgraph/geometry.hpp"
#include "floorgraph/layout_graph.hpp"
#include "floorgraph/room_box.hpp"

namespace floorgraph {

/// Angle in degrees between two direction vectors, in [0, 180].
double angle_between(Point a, Point b);

/// Quarter turns k (clockwise) that best align the source's door direction
/// with the target's: minimal angle first, then minimal k.
int align_rotation(const Boundary& source, const Boundary& target);

/// Rotates every node's grid cell and every edge relation by k quarter turns.
LayoutGraph transfer_nodes(const LayoutGraph& g, int k);

/// interior[row][col]: at least 30% of the cell's pixels are inside.
using CellMask = std::array<std::array<bool, kGridSize>, kGridSize>;
CellMask interior_cells(const Boundary& b);

/// Moves nodes on non-interior cells to the closest interior cell, pushing
/// occupants one cell further in the same direction; a push that would
/// leave the interior leaves the nodes sharing a cell.
/// Throws Error(InfeasibleBoundary) when no cell is interior.
LayoutGraph adjust_node_positions(const LayoutGraph& g, const Boundary& target);

namespace edit {
struct AddNode {
  RoomType type = RoomType::LivingRoom;
  GridCell cell;
  double size_ratio = 0.1;
};
struct DeleteNode {
  int id = 0;
};
struct MoveNode {
  int id = 0;
  GridCell cell;
};
struct AddEdge {
  int src = 0;
  int dst = 0;
};
struct DeleteEdge {
  int src = 0;
  int dst = 0;
};
}  // namespace edit

using Edit = std::variant<edit::AddNode, edit::DeleteNode, edit::MoveNode, edit::AddEdge, edit::DeleteEdge>;

/// Applies one interactive edit. New nodes get next_node_id(); relations of
/// added or moved edges are recomputed from grid cells.
/// Throws Error(InvalidEdit) on dangling ids, duplicate or self edges and
/// cells off the grid.
LayoutGraph apply_edit(const LayoutGraph& g, const Edit& e);

/// Relation of the room in cell `src` relative to the room in cell `dst`.
RelationType relation_from_cells(GridCell src, GridCell dst, int src_id, int dst_id);

/// Source gt boxes rotated by k and mapped affinely from the rotated source
/// bounding box onto the target bounding box.
std::vector<RoomBox> transfer_priors(const FloorplanRecord& source, int k, const Boundary& target);

/// One prior per node of g. A node keeps its transferred prior when the
/// prior's center lies in the node's cell, otherwise the prior is recentered
/// on the cell; nodes without a prior get their init_boxes box.
std::vector<RoomBox> priors_for_graph(const LayoutGraph& g, const std::vector<RoomBox>& priors,
                                      const Boundary& target);

}  // namespace floorgraph
